"""Shared value types, precision handling and the positive-series summation kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import mpmath as mp
from mpmath import mpf


class GenBellError(Exception):
    """Base class for every error raised by this package."""


class OutOfRange(GenBellError, ValueError):
    pass


class NonIntegralSolve(GenBellError, ArithmeticError):
    pass


class NonIntegralResult(GenBellError, ArithmeticError):
    pass


class TruncationTooSmall(GenBellError, ValueError):
    pass


class MaxTermsExceeded(GenBellError, RuntimeError):
    pass


class Divergent(GenBellError, ValueError):
    pass


class UnsupportedShape(GenBellError, ValueError):
    pass


class UnsupportedKind(GenBellError, ValueError):
    pass


class UnsupportedFamily(GenBellError, ValueError):
    pass


class IntegerOrderUnsupported(GenBellError, ValueError):
    pass


class TailBoundFailure(GenBellError, RuntimeError):
    pass


class InsufficientSequence(GenBellError, ValueError):
    pass


class BranchCut(GenBellError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class FamilyParams:
    """The pair (r, s) labelling the boson word ``(a^dagger)^r a^s``; requires r >= s >= 1."""

    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("r and s must be integers")
        if not self.r >= self.s >= 1:
            raise OutOfRange(f"need r >= s >= 1, got r={self.r}, s={self.s}")

    @property
    def excess(self) -> int:
        """r - s, the net number of creation operators per factor."""
        return self.r - self.s

    def __str__(self):
        return f"({self.r},{self.s})"


@dataclass(frozen=True)
class PrecisionContext:
    precision_bits: int = 256
    tail_relative_bound: float | mpf = 1e-30
    max_terms: int = 10**6

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if not 0 < self.tail_relative_bound < 1:
            raise ValueError("tail_relative_bound must lie in (0, 1)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")

    @property
    def eps(self) -> mpf:
        return mp.ldexp(mpf(1), -self.precision_bits)

    def with_bits(self, bits: int) -> "PrecisionContext":
        return replace(self, precision_bits=bits)

    def for_integer_recovery(self, bits: int) -> "PrecisionContext":
        """Context at ``bits`` whose tail target is tight enough to pin down a large integer."""
        tail = min(mpf(self.tail_relative_bound), mp.ldexp(mpf(1), -(bits - 16)))
        return replace(self, precision_bits=bits, tail_relative_bound=tail)

    def at_full_precision(self, bits: int) -> "PrecisionContext":
        """Context at ``bits`` with the tail target at the rounding level of those bits."""
        return replace(self, precision_bits=bits, tail_relative_bound=mp.ldexp(mpf(1), -bits))


DEFAULT_CONTEXT = PrecisionContext()


@dataclass(frozen=True)
class ApproxValue:
    """A high-precision number with an error bound.

    ``rigorous`` is True when the truncation part of ``error_bound`` comes from a
    proven majorization; rounding error is always an estimate.
    """

    value: mp.mpf | mp.mpc
    error_bound: mpf
    rigorous: bool

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be non-negative")

    def contains(self, target) -> bool:
        """Whether ``target`` lies within ``error_bound`` of ``value``, decided exactly."""
        bound = mpf_to_fraction(self.error_bound)
        if isinstance(self.value, mp.mpc) or isinstance(target, (complex, mp.mpc)):
            v, t = mp.mpc(self.value), mp.mpc(target)
            dre = mpf_to_fraction(v.real) - mpf_to_fraction(t.real)
            dim = mpf_to_fraction(v.imag) - mpf_to_fraction(t.imag)
            return dre * dre + dim * dim <= bound * bound
        return abs(mpf_to_fraction(self.value) - _as_fraction(target)) <= bound

    def nearest_integer(self) -> int:
        exact = mpf_to_fraction(mp.re(self.value))
        return int(math.floor(exact + Fraction(1, 2)))

    def __float__(self):
        return float(mp.re(self.value))

    def __complex__(self):
        return complex(self.value)


def mpf_to_fraction(x: mpf) -> Fraction:
    """The exact binary value of an mpf."""
    # man_exp drops the sign, so read the raw tuple
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"{x} is not finite")
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _as_fraction(x) -> Fraction:
    if isinstance(x, mp.mpf):
        return mpf_to_fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if isinstance(x, complex):
        return mp.mpc(x)
    return mpf(x)


def to_mpf(x: int | Fraction | float | str) -> mpf:
    """Convert an exact number to an mpf at the current working precision."""
    return _to_mp(x)


def falling_factorial(p: int, s: int) -> int:
    """p (p-1) ... (p-s+1); zero when 0 <= p < s."""
    out = 1
    for i in range(s):
        out *= p - i
        if out == 0:
            return 0
    return out


def rising_factorial(c: Fraction, n: int) -> Fraction:
    """c (c+1) ... (c+n-1) in exact arithmetic."""
    out = Fraction(1)
    for i in range(n):
        out *= c + i
    return out


def sum_positive_series(
    terms: Iterable,
    ctx: PrecisionContext,
    *,
    min_terms: int = 1,
) -> ApproxValue:
    """Sum a series whose terms eventually decay faster than geometrically.

    ``terms`` yields mp numbers (or exact rationals) in summation order; they are
    consumed lazily. Summation stops once the latest term is below
    ``tail_relative_bound`` times the partial sum and the last two term ratios are
    decreasing and under 1/2; the remainder is then majorized by a geometric series
    with that ratio. Must be called inside the caller's working-precision block.
    """
    it: Iterator = iter(terms)
    total = mpf(0)
    abs_total = mpf(0)
    prev = None
    prev_ratio = None
    k = 0
    tail_rel = mpf(ctx.tail_relative_bound)
    for raw in it:
        t = _to_mp(raw)
        at = abs(t)
        total += t
        abs_total += at
        k += 1
        if prev is not None and k >= min_terms:
            ratio = at / prev if prev else mpf(0)
            small = at <= tail_rel * abs(total) or at == 0
            if (
                small
                and ratio < 0.5
                and (prev_ratio is None or ratio <= prev_ratio)
            ):
                tail = at * ratio / (1 - ratio)
                rounding = 4 * (k + 1) * ctx.eps * abs_total
                return ApproxValue(total, tail + rounding, True)
            prev_ratio = ratio
        prev = at
        if k >= ctx.max_terms:
            raise MaxTermsExceeded(f"series not converged after {k} terms")
    # finite series
    return ApproxValue(total, 4 * (k + 1) * ctx.eps * abs_total, True)


def recover_integer(
    evaluate: Callable[[PrecisionContext], ApproxValue],
    ctx: PrecisionContext,
    max_bits: int = 4096,
) -> tuple[int, ApproxValue]:
    """Evaluate with doubling precision until the error bound is below 1/2 and round.

    Returns the integer and the ApproxValue it was recovered from.
    """
    bits = ctx.precision_bits
    while True:
        sub = ctx.for_integer_recovery(bits)
        val = evaluate(sub)
        if val.error_bound < 0.5:
            return val.nearest_integer(), val
        if bits >= max_bits:
            raise MaxTermsExceeded(
                f"error bound {mp.nstr(val.error_bound, 5)} still >= 0.5 at {bits} bits"
            )
        bits = min(2 * bits, max_bits)
