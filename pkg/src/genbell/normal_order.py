"""Exact generalized Stirling and Bell numbers from normal ordering of ``[(a^dagger)^r a^s]^n``.

The main route realises ``a^dagger = x`` and ``a = d/dx`` and reads the
coefficients off the action on monomials. ``fock_oracle`` gets the same table
from the occupation-number representation and shares no code with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .core import (
    FamilyParams,
    NonIntegralResult,
    NonIntegralSolve,
    OutOfRange,
    TruncationTooSmall,
    falling_factorial,
)


@dataclass(frozen=True)
class StirlingTable:
    """Row ``n`` of S_{r,s}(n, k), stored as ``{k: value}``.

    For n >= 1 the keys run over s..n*s; row 0 is ``{0: 1}``.
    """

    params: FamilyParams
    n: int
    entries: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __getitem__(self, k: int) -> int:
        return self.entries.get(k, 0)

    def as_list(self) -> list[int]:
        """Values in increasing k."""
        return [self.entries[k] for k in sorted(self.entries)]

    def row_sum(self) -> int:
        return sum(self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, StirlingTable):
            return NotImplemented
        return (self.params, self.n, dict(self.entries)) == (other.params, other.n, dict(other.entries))

    def __hash__(self):
        return hash((self.params, self.n, tuple(sorted(self.entries.items()))))


@dataclass(frozen=True)
class BellSequence:
    params: FamilyParams
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self):
        return len(self.values)


def _params(params, s=None) -> FamilyParams:
    if isinstance(params, FamilyParams):
        return params
    if s is None:
        return FamilyParams(*params)
    return FamilyParams(params, s)


def monomial_coefficient(params: FamilyParams, n: int, m: int) -> int:
    """Coefficient c with ``[x^r (d/dx)^s]^n x^m = c x^(m + n(r-s))``."""
    if n < 0 or m < 0:
        raise OutOfRange("n and m must be non-negative")
    d = params.excess
    out = 1
    for j in range(n):
        out *= falling_factorial(m + j * d, params.s)
        if out == 0:
            break
    return out


@lru_cache(maxsize=512)
def stirling_table(params: FamilyParams, n: int) -> StirlingTable:
    """Solve ``sum_k S(n,k) ff(m,k) = monomial_coefficient(m)`` for m = 0..n*s.

    The system is lower triangular with diagonal m!, so forward substitution
    needs one exact division per row; a remainder means a bug and raises.
    """
    if n < 0:
        raise OutOfRange("n must be non-negative")
    if n == 0:
        return StirlingTable(params, 0, {0: 1})
    top = n * params.s
    solved: dict[int, int] = {}
    fact = 1
    for m in range(top + 1):
        if m:
            fact *= m
        rhs = monomial_coefficient(params, n, m)
        # ff(m, k) for increasing k, updated in place
        ffk = 1
        for k in range(m):
            if k:
                ffk *= m - k + 1
            if k in solved:
                rhs -= solved[k] * ffk
        q, rem = divmod(rhs, fact)
        if rem:
            raise NonIntegralSolve(f"inexact division at m={m} for {params}, n={n}")
        if q:
            solved[m] = q
    table = StirlingTable(params, n, solved)
    _check_row(table)
    return table


def _check_row(table: StirlingTable) -> None:
    p, n = table.params, table.n
    keys = sorted(table.entries)
    if keys != list(range(p.s, n * p.s + 1)) or table[n * p.s] != 1:
        raise NonIntegralSolve(f"malformed row for {p}, n={n}: keys {keys}")
    if any(v <= 0 for v in table.entries.values()):
        raise NonIntegralSolve(f"non-positive entry in row {p}, n={n}")


def bell_number(params: FamilyParams, n: int) -> int:
    """B_{r,s}(n): row sum of the Stirling table, with B(0) = 1."""
    return stirling_table(params, n).row_sum()


def bell_sequence(params: FamilyParams, max_n: int) -> BellSequence:
    return BellSequence(params, tuple(bell_number(params, n) for n in range(max_n + 1)))


def stirling_rr_closed(r: int, n: int, k: int) -> int:
    """S_{r,r}(n,k) by the alternating closed-form sum, in exact rationals."""
    if r < 1 or n < 1:
        raise OutOfRange("need r >= 1 and n >= 1")
    if not r <= k <= r * n:
        raise OutOfRange(f"k={k} outside [{r}, {r * n}]")
    total = Fraction(0)
    for p in range(k - r + 1):
        ratio = math.factorial(k - p) // math.factorial(k - p - r)
        term = Fraction(ratio**n, math.factorial(k - p) * math.factorial(p))
        total += -term if p % 2 else term
    if total.denominator != 1:
        raise NonIntegralResult(f"S_{{{r},{r}}}({n},{k}) came out as {total}")
    return total.numerator


def lah_number(n: int, k: int) -> int:
    """Unsigned Lah number n!/k! * C(n-1, k-1)."""
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    return math.factorial(n) // math.factorial(k) * math.comb(n - 1, k - 1)


def fock_oracle(params: FamilyParams, n: int, dim: int) -> StirlingTable:
    """Brute-force S_{r,s}(n, .) from ladder-operator action on a truncated Fock space.

    Amplitudes are tracked on the unnormalized vectors ``e_m = (a^dagger)^m |0>``,
    for which ``a^dagger e_m = e_{m+1}`` and ``a e_m = m e_{m-1}`` hold with integer
    coefficients. In the normalized basis this is ``<m'|W|m> = c sqrt(m!/m'!)``.
    The diagonal-shifted elements of ``W^n`` are then matched against the same
    falling-factorial system, solved here by the explicit inverse (a finite
    difference) rather than by substitution.
    """
    r, s = params.r, params.s
    if n < 1:
        raise OutOfRange("fock_oracle needs n >= 1")
    need = n * s + n * (r - s) + n * s
    if dim < need:
        raise TruncationTooSmall(f"dim={dim} < required {need}")

    def apply_word(vec: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for m, amp in vec.items():
            # a^s
            for _ in range(s):
                if m == 0:
                    amp = 0
                    break
                amp *= m
                m -= 1
            if amp == 0:
                continue
            # (a^dagger)^r
            m += r
            if m > dim:
                raise TruncationTooSmall(f"state |{m}> leaves the space of dimension {dim}")
            out[m] = out.get(m, 0) + amp
        return out

    shift = n * (r - s)
    diag = []
    for m in range(n * s + 1):
        vec = {m: 1}
        for _ in range(n):
            vec = apply_word(vec)
        diag.append(vec.get(m + shift, 0))

    # c(m) = sum_k S(k) m!/(m-k)!  =>  S(k) = sum_m (-1)^(k-m) c(m) / (m! (k-m)!)
    entries = {}
    for k in range(n * s + 1):
        acc = Fraction(0)
        for m in range(k + 1):
            term = Fraction(diag[m], math.factorial(m) * math.factorial(k - m))
            acc += -term if (k - m) % 2 else term
        if acc.denominator != 1:
            raise NonIntegralResult(f"oracle produced non-integer S({n},{k}) = {acc}")
        if acc:
            entries[k] = acc.numerator
    return StirlingTable(params, n, entries)


def set_partition_count(n: int) -> int:
    """Number of set partitions of {1..n}, by explicit enumeration of restricted growth strings."""
    if n == 0:
        return 1
    count = 0

    def grow(i: int, blocks: int):
        nonlocal count
        if i == n:
            count += 1
            return
        for b in range(blocks + 1):
            grow(i + 1, max(blocks, b + 1))

    grow(1, 1)
    return count
