"""Hankel determinant positivity and large-n asymptotics of B_{2,1}, B_{3,1}."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
from mpmath import mpf

from .core import DEFAULT_CONTEXT, FamilyParams, InsufficientSequence, OutOfRange, PrecisionContext
from .normal_order import BellSequence, bell_number


@dataclass(frozen=True)
class HankelReport:
    params: FamilyParams
    order: int
    det0: int
    det1: int

    @property
    def positive(self) -> bool:
        return self.det0 > 0 and self.det1 > 0


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    exact: int
    asymptotic: mpf
    ratio: mpf
    # subleading coefficient that would make the two-term expansion exact at this n
    implied_subleading: mpf

    @property
    def deviation(self) -> mpf:
        return abs(self.ratio - 1)


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                # Bareiss guarantees exactness here
                q, rem = divmod(num, prev)
                assert rem == 0
                a[i][j] = q
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hankel_matrix(values, order: int, shift: int) -> list[list[int]]:
    return [[values[i + j + shift] for j in range(order)] for i in range(order)]


def hankel_determinants(seq: BellSequence, order: int) -> HankelReport:
    """det[B(i+j-2)] and det[B(i+j-1)] for 1 <= i, j <= order."""
    if order < 1:
        raise OutOfRange("order must be >= 1")
    if len(seq) < 2 * order:
        raise InsufficientSequence(f"need {2 * order} moments, have {len(seq)}")
    det0 = bareiss_determinant(hankel_matrix(seq.values, order, 0))
    det1 = bareiss_determinant(hankel_matrix(seq.values, order, 1))
    return HankelReport(seq.params, order, det0, det1)


def _report(n, exact, lead, p1, p2, rest, printed_c):
    asym = lead * (p1 + printed_c * p2) * rest
    ratio = mpf(exact) / asym
    implied = (mpf(exact) / (lead * rest) - p1) / p2
    return AsymptoticReport(n, exact, +asym, +ratio, +implied)


def asymptotic_b21(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AsymptoticReport:
    """(2e)^(-1/2) (n^(-1/4) + n^(-3/4)/12) n^n exp(-n + 2 sqrt n), compared with exact B_{2,1}(n)."""
    if n < 1:
        raise OutOfRange("n must be >= 1")
    exact = bell_number(FamilyParams(2, 1), n)
    with mp.workprec(ctx.precision_bits):
        N = mpf(n)
        lead = 1 / mp.sqrt(2 * mp.e)
        rest = mp.exp(N * mp.log(N) - N + 2 * mp.sqrt(N))
        return _report(n, exact, lead, N ** mpf(-0.25), N ** mpf(-0.75), rest, mpf(1) / 12)


def asymptotic_b31(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AsymptoticReport:
    """2^(1/6)/(sqrt(3) e) (n^(-1/3) + 2^(-3/7) n^(-2/3)) (2n)^n exp(-n + 1.5 (2n)^(1/3)).

    The subleading coefficient 2^(-3/7) is used as published; it leaves a
    relative error of order n^(-1/3) (about 15% at n = 100). ``implied_subleading``
    in the report shows the coefficient the exact values call for.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    exact = bell_number(FamilyParams(3, 1), n)
    with mp.workprec(ctx.precision_bits):
        N = mpf(n)
        third = mpf(1) / 3
        lead = mp.power(2, third / 2) / (mp.sqrt(3) * mp.e)
        rest = mp.exp(N * mp.log(2 * N) - N + mpf(3) / 2 * mp.cbrt(2 * N))
        return _report(n, exact, lead, N ** -third, N ** (-2 * third), rest, mp.power(2, mpf(-3) / 7))
