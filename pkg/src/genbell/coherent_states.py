"""Coherent states |z>_{r,s} = N(|z|^2)^(-1/2) sum_n z^n / sqrt(B_{r,s}(n)) |n>."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

import mpmath as mp
from mpmath import mpf

from .core import (
    DEFAULT_CONTEXT,
    ApproxValue,
    FamilyParams,
    OutOfRange,
    PrecisionContext,
    TruncationTooSmall,
    UnsupportedFamily,
    UnsupportedKind,
    sum_positive_series,
    to_mpf,
)
from .measures import MomentReport, eval_weight, moment_quadrature, weight_spec
from .normal_order import bell_number


@dataclass(frozen=True)
class CoherentFamily:
    """The moment sequence rho(n) = B_{r,s}(n) that defines a family of states."""

    params: FamilyParams
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def rho(self, n: int) -> int:
        if n not in self._cache:
            self._cache[n] = bell_number(self.params, n)
        return self._cache[n]


@dataclass(frozen=True)
class StateVector:
    z: complex
    coefficients: tuple
    cutoff: int
    # bound on the probability weight beyond the cutoff
    tail_weight: mpf
    precision_bits: int = 256

    def norm_squared(self) -> mpf:
        with mp.workprec(self.precision_bits):
            return mp.fsum(abs(c) ** 2 for c in self.coefficients)


@dataclass(frozen=True)
class ResolutionReport:
    moment: MomentReport
    reconstructed_weight: tuple  # (x, pi-scaled weight W(x) = W_{r,s}(x) N(x) / pi)

    @property
    def positive(self) -> bool:
        return all(w > 0 for _, w in self.reconstructed_weight)


def _family(f) -> CoherentFamily:
    if isinstance(f, CoherentFamily):
        return f
    if isinstance(f, FamilyParams):
        return CoherentFamily(f)
    return CoherentFamily(FamilyParams(*f))


def _series(family: CoherentFamily, x, ctx: PrecisionContext) -> ApproxValue:
    # sum x^n / rho(n); term ratios x rho(n)/rho(n+1) decrease because
    # a Stieltjes moment sequence is log-convex, so the geometric tail bound holds
    def terms():
        p = mpf(1)
        for n in count():
            yield p / family.rho(n)
            p *= x

    return sum_positive_series(terms(), ctx, min_terms=2)


def normalization(family, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """N_{r,s}(x) = sum_n x^n / B_{r,s}(n)."""
    family = _family(family)
    with mp.workprec(ctx.precision_bits):
        x = to_mpf(x)
        if x < 0:
            raise OutOfRange("x must be non-negative")
        if x == 0:
            return ApproxValue(mpf(1), mpf(0), True)
        return _series(family, x, ctx)


def state_coefficients(family, z, cutoff: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> StateVector:
    """Amplitudes <n|z> for n < cutoff.

    Raises TruncationTooSmall when the probability left beyond the cutoff
    exceeds ``ctx.tail_relative_bound``.
    """
    family = _family(family)
    if cutoff < 1:
        raise OutOfRange("cutoff must be positive")
    with mp.workprec(ctx.precision_bits):
        z = mp.mpc(z)
        x = abs(z) ** 2
        norm = normalization(family, x, ctx)
        kept = mp.fsum(x**n / family.rho(n) for n in range(cutoff))
        tail = max(norm.value - kept, mpf(0)) + norm.error_bound
        tail_weight = tail / norm.value
        if tail_weight > ctx.tail_relative_bound:
            raise TruncationTooSmall(
                f"cutoff {cutoff} leaves weight {mp.nstr(tail_weight, 3)} beyond it"
            )
        scale = 1 / mp.sqrt(norm.value)
        coeffs = tuple(scale * z**n / mp.sqrt(family.rho(n)) for n in range(cutoff))
        return StateVector(complex(z), coeffs, cutoff, tail_weight, ctx.precision_bits)


def overlap(family, z, w, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """<z|w> = N(|z|^2)^(-1/2) N(|w|^2)^(-1/2) sum_n (conj(z) w)^n / B(n)."""
    family = _family(family)
    with mp.workprec(ctx.precision_bits):
        z, w = mp.mpc(z), mp.mpc(w)
        nz = normalization(family, abs(z) ** 2, ctx)
        nw = normalization(family, abs(w) ** 2, ctx)
        u = mp.conj(z) * w

        def terms():
            p = mp.mpc(1)
            for n in count():
                yield p / family.rho(n)
                p *= u

        cross = sum_positive_series(terms(), ctx, min_terms=2)
        denom = mp.sqrt(nz.value * nw.value)
        value = cross.value / denom
        rel = cross.error_bound / abs(cross.value) if cross.value else mpf(0)
        rel += (nz.error_bound / nz.value + nw.error_bound / nw.value) / 2
        return ApproxValue(value, abs(value) * rel + 8 * ctx.eps, True)


def resolution_check(
    family,
    n: int,
    ctx: PrecisionContext = PrecisionContext(precision_bits=128),
    sample_points=(mpf("0.1"), mpf(1), mpf(10)),
) -> ResolutionReport:
    """Check the moment condition behind the resolution of unity for a family with a known weight.

    Identifying W_{r,s}(x) = pi W(x) / N(x), the condition
    ``pi int x^n W(x)/N(x) dx = rho(n)`` is exactly the moment identity of
    W_{r,s}; it is checked by quadrature, and the reconstructed W(x) is
    sampled for positivity.
    """
    family = _family(family)
    if n < 1:
        raise OutOfRange("the check starts at n = 1")
    p = family.params
    try:
        spec = weight_spec(p.r, p.s)
    except UnsupportedKind as exc:
        raise UnsupportedFamily(str(exc)) from exc
    if not spec.continuous:
        raise UnsupportedFamily(f"{p} has a discrete comb, not a continuous weight")
    report = moment_quadrature(spec, n, ctx)
    samples = []
    with mp.workprec(ctx.precision_bits):
        for x in sample_points:
            x = to_mpf(x)
            w = eval_weight(spec, x, ctx).value * normalization(family, x, ctx).value / mp.pi
            samples.append((x, w))
    return ResolutionReport(report, tuple(samples))
