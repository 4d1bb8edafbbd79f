"""Exponential generating functions, the normally ordered exponential, and growth orders."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp
from mpmath import mpf

from .core import (
    DEFAULT_CONTEXT,
    ApproxValue,
    BranchCut,
    FamilyParams,
    OutOfRange,
    PrecisionContext,
    TruncationTooSmall,
)
from .normal_order import bell_number


class PowerSeries:
    """Truncated formal power series with exact rational coefficients c_0..c_N."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence):
        self.coefficients = tuple(Fraction(c) for c in coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self.coefficients == other.coefficients

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coefficients]})"

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other] + [0] * self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(len(self), len(other))
        return PowerSeries([a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coefficients])
        n = min(len(self), len(other))
        a, b = self.coefficients, other.coefficients
        return PowerSeries([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)])

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        out = [1 / a[0]]
        for k in range(1, len(a)):
            out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
        return PowerSeries(out)

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term, via n g_n = sum_k k f_k g_{n-k}."""
        f = self.coefficients
        if f[0] != 0:
            raise ValueError("exp needs a zero constant term")
        g = [Fraction(1)]
        for n in range(1, len(f)):
            g.append(sum(k * f[k] * g[n - k] for k in range(1, n + 1)) / n)
        return PowerSeries(g)

    def egf_values(self) -> list[Fraction]:
        """c_n * n!, the sequence this series generates exponentially."""
        return [c * math.factorial(n) for n, c in enumerate(self.coefficients)]

    @classmethod
    def binomial(cls, a: Fraction, alpha: Fraction, order: int) -> "PowerSeries":
        """(1 + a x)^alpha truncated at x^order."""
        out = [Fraction(1)]
        for k in range(1, order + 1):
            out.append(out[-1] * (alpha - k + 1) / k * a)
        return cls(out)

    @classmethod
    def geometric_tail(cls, order: int) -> "PowerSeries":
        """x + x^2 + ... = x / (1 - x)."""
        return cls([0] + [1] * order)


@dataclass(frozen=True)
class GrowthOrder:
    params: FamilyParams
    t: int
    slope: float
    heuristic: bool = True


def egf_coefficients(r: int, order: int) -> PowerSeries:
    """Coefficients of the EGF of B_{r,1}(n): exp{(1 - (r-1) x)^(-1/(r-1)) - 1}.

    r = 2 uses exp(x/(1-x)) and r = 3 uses exp((1 - sqrt(1-2x)) / sqrt(1-2x)),
    each built from its own series operations; other r use the binomial series.
    """
    if r < 2:
        raise OutOfRange("r must be >= 2")
    if order < 0:
        raise OutOfRange("order must be >= 0")
    if r == 2:
        inner = PowerSeries.geometric_tail(order)
    elif r == 3:
        root = PowerSeries.binomial(Fraction(-2), Fraction(1, 2), order)
        inner = (1 - root) * root.inverse()
    else:
        inner = PowerSeries.binomial(Fraction(-(r - 1)), Fraction(-1, r - 1), order) - 1
    return inner.exp()


def classical_egf_check(order: int) -> PowerSeries:
    """Coefficients of exp(e^x - 1); c_n n! are the classical Bell numbers."""
    if order < 0:
        raise OutOfRange("order must be >= 0")
    inner = PowerSeries([0] + [Fraction(1, math.factorial(k)) for k in range(1, order + 1)])
    return inner.exp()


def matrix_element_closed(
    r: int, lam, z, ctx: PrecisionContext = DEFAULT_CONTEXT, *, printed_sign: bool = False
) -> ApproxValue:
    """<z| exp(lam (a^dagger)^r a) |z> = exp{[(1 - lam conj(z)^(r-1) (r-1))^(-1/(r-1)) - 1] |z|^2}.

    Uses the principal branch, which is the analytic continuation from lam = 0
    as long as |lam conj(z)^(r-1) (r-1)| < 1. ``printed_sign=True`` uses the
    published exponent +1/(r-1), which does not match the Fock-space sum.
    """
    if r < 2:
        raise OutOfRange("r must be >= 2")
    with mp.workprec(ctx.precision_bits):
        lam, z = mp.mpmathify(lam), mp.mpc(z)
        w = lam * mp.conj(z) ** (r - 1) * (r - 1)
        if abs(w) >= 1:
            raise BranchCut(f"|lambda conj(z)^(r-1) (r-1)| = {mp.nstr(abs(w), 6)} >= 1")
        base = 1 - w
        exponent = mpf(1 if printed_sign else -1) / (r - 1)
        value = mp.exp((mp.power(base, exponent) - 1) * abs(z) ** 2)
        return ApproxValue(value, 16 * ctx.eps * abs(value), True)


def matrix_element_fock(r: int, lam, z, cutoff: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """The same matrix element by brute force: sum_n lam^n/n! <z|W^n|z> with W = (a^dagger)^r a.

    On e_m = (a^dagger)^m |0>, W e_m = m e_{m+r-1}, so
    ``<z|W^n|z> = e^{-|z|^2} conj(z)^{n(r-1)} sum_{m<cutoff} |z|^{2m}/m! prod_{j<n} (m + j(r-1))``.
    Raises TruncationTooSmall if the Fock sum has not converged at ``cutoff``.
    """
    if r < 2:
        raise OutOfRange("r must be >= 2")
    with mp.workprec(ctx.precision_bits):
        lam, z = mp.mpmathify(lam), mp.mpc(z)
        x = abs(z) ** 2
        step = mp.conj(z) ** (r - 1) * lam
        weights = []
        w = mpf(1)
        for m in range(cutoff):
            weights.append(w)
            w = w * x / (m + 1)
        prods = [1] * cutoff
        total = mp.mpc(0)
        abs_total = mpf(0)
        prefactor = mp.mpc(1)
        tol = ctx.eps
        small = 0
        for n in range(ctx.max_terms):
            inner = mp.fsum(wm * p for wm, p in zip(weights, prods))
            last = weights[-1] * prods[-1]
            if last > tol * inner:
                raise TruncationTooSmall(f"Fock cutoff {cutoff} too small at order {n}")
            term = prefactor * inner
            total += term
            abs_total += abs(term)
            if abs(term) <= tol * abs(total):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            prefactor = prefactor * step / (n + 1)
            shift = n * (r - 1)
            prods = [p * (m + shift) for m, p in enumerate(prods)]
        else:
            raise TruncationTooSmall("operator series did not converge")
        value = total * mp.exp(-x)
        err = (16 * (n + 1) * ctx.eps * abs_total) * mp.exp(-x)
        return ApproxValue(value, err, False)


def matrix_element_exp(r: int, lam, z, cutoff: int | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """Closed form of the coherent-state matrix element, validated against the Fock sum.

    With ``cutoff=None`` the Fock truncation doubles from 64 until it suffices.
    The returned error bound is the larger of the two routes' disagreement and
    their own bounds.
    """
    closed = matrix_element_closed(r, lam, z, ctx)
    if cutoff is None:
        cutoff = 64
        while True:
            try:
                fock = matrix_element_fock(r, lam, z, cutoff, ctx)
                break
            except TruncationTooSmall:
                if cutoff >= 1 << 14:
                    raise
                cutoff *= 2
    else:
        fock = matrix_element_fock(r, lam, z, cutoff, ctx)
    with mp.workprec(ctx.precision_bits):
        err = abs(closed.value - fock.value) + closed.error_bound + fock.error_bound
    return ApproxValue(closed.value, err, False)


def growth_order(params: FamilyParams, depth: int = 30) -> GrowthOrder:
    """Estimate the smallest t for which sum_n B(n) x^n / (n!)^(t+1) has positive radius.

    Fits the log-log slope sigma of B(n+1)/B(n) against n+1 over the upper half
    of 1..depth. The ratio grows like (n+1)^sigma, so dividing by (n+1)^(t+1)
    leaves it bounded once t + 1 >= sigma. Logarithmic corrections pull the
    finite-depth slope below its limit, so sigma is rounded up after a 1/4
    allowance. Heuristic by nature: for r = s >= 4 the (log n)^(-sn) factor in
    B_{s,s}(n) hides one power of n! at any practical depth, and the estimate
    is one below the asymptotic order s - 1.
    """
    if depth < 8:
        raise OutOfRange("depth must be >= 8")
    values = [bell_number(params, n) for n in range(depth + 1)]
    lo = depth // 2
    xs, ys = [], []
    for n in range(lo, depth):
        xs.append(math.log(n + 1))
        ys.append(math.log(values[n + 1]) - math.log(values[n]))
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((a - mx) * (b - my) for a, b in zip(xs, ys)) / sum((a - mx) ** 2 for a in xs)
    t = max(0, math.ceil(slope - 0.25) - 1)
    return GrowthOrder(params, t, slope)
