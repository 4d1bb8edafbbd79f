"""Weight functions whose power moments are B_{r,s}(n), and quadrature checks of that property.

Supported weights:

``dirac_comb``
    r = s; atoms at k(k+1)...(k+r-1) carrying mass 1/(e (k+r-1)!), k >= 0.
``series_r1``
    r > 1, s = 1; the general series in powers of (x/(r-1))^(1/(r-1)).
``closed_21``
    e^{-x} I_1(2 sqrt x) / (e sqrt x).
``closed_31``
    e^{-x/2} / (e sqrt(8x)) times a pair of 0F2 functions at x/8.
``closed_52``
    K_{1/3}(2 sqrt(x)/3) / sqrt(x) times a triple of 0F4 functions at x/243.
``closed_2rr``
    x^{(2-3r)/(2r)} e^{-x^{1/r}} I_r(2 x^{1/(2r)}) / (e r).

Three of the published closed forms do not have the moments they are meant to
have. ``variant="printed"`` evaluates them exactly as published. The default
``variant="derived"`` uses constants re-derived from the Dobinski series via the
Mellin pair ``int x^(s-1) 2 x^((a+b)/2) K_(a-b)(2 sqrt x) dx = Gamma(s+a) Gamma(s+b)``.
Which variant differs where is listed in ``genbell.errata``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

import mpmath as mp
from mpmath import mpf

from .core import (
    DEFAULT_CONTEXT,
    ApproxValue,
    FamilyParams,
    IntegerOrderUnsupported,
    OutOfRange,
    PrecisionContext,
    TailBoundFailure,
    UnsupportedKind,
    sum_positive_series,
    to_mpf,
)
from .dobinski import HypergeometricSpec, hypergeometric_pFq
from .normal_order import bell_number

KINDS = ("dirac_comb", "series_r1", "closed_21", "closed_31", "closed_52", "closed_2rr")
CONTINUOUS_KINDS = KINDS[1:]
VARIANTS = ("derived", "printed")


@dataclass(frozen=True)
class WeightSpec:
    params: FamilyParams
    kind: str
    variant: str = "derived"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedKind(f"unknown kind {self.kind!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        r, s = self.params.r, self.params.s
        ok = {
            "dirac_comb": r == s,
            "series_r1": s == 1 and r > 1,
            "closed_21": (r, s) == (2, 1),
            "closed_31": (r, s) == (3, 1),
            "closed_52": (r, s) == (5, 2),
            "closed_2rr": r == 2 * s,
        }[self.kind]
        if not ok:
            raise UnsupportedKind(f"kind {self.kind} does not describe family {self.params}")

    @property
    def continuous(self) -> bool:
        return self.kind != "dirac_comb"

    def atoms(self, how_many: int) -> list[tuple[int, Fraction]]:
        """(position, mass * e) for the first atoms of a comb; multiply masses by 1/e."""
        if self.kind != "dirac_comb":
            raise UnsupportedKind("only dirac_comb has atoms")
        r = self.params.r
        return [(math.prod(range(k, k + r)), Fraction(1, math.factorial(k + r - 1)))
                for k in range(how_many)]


def weight_spec(r: int, s: int, variant: str = "derived") -> WeightSpec:
    """The preferred weight for family (r, s)."""
    params = FamilyParams(r, s)
    if r == s:
        kind = "dirac_comb"
    elif (r, s) == (2, 1):
        kind = "closed_21"
    elif (r, s) == (3, 1):
        kind = "closed_31"
    elif (r, s) == (5, 2):
        kind = "closed_52"
    elif r == 2 * s:
        kind = "closed_2rr"
    elif s == 1:
        kind = "series_r1"
    else:
        raise UnsupportedKind(f"no weight function available for {params}")
    return WeightSpec(params, kind, variant)


@dataclass(frozen=True)
class MomentReport:
    n: int
    exact: int
    quadrature: ApproxValue
    relative_error: mpf

    @property
    def passed(self) -> bool:
        return self.relative_error <= 1e-8


# ---------------------------------------------------------------- special functions


def _bessel_i_series(nu, x, ctx: PrecisionContext) -> ApproxValue:
    # requires an active workprec block; nu > -1 keeps every term positive
    half = x / 2
    q = half * half
    first = half**nu / mp.gamma(nu + 1)

    def terms():
        t = first
        for m in count():
            yield t
            t = t * q / ((m + 1) * (m + 1 + nu))

    return sum_positive_series(terms(), ctx, min_terms=int(abs(float(nu))) + 2)


def bessel_i(order, argument, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """Modified Bessel function of the first kind from its ascending series."""
    with mp.workprec(ctx.precision_bits):
        nu, x = to_mpf(order), to_mpf(argument)
        if x < 0:
            raise OutOfRange("argument must be non-negative")
        if nu <= -1:
            raise OutOfRange("order must exceed -1")
        if x == 0:
            return ApproxValue(mpf(1) if nu == 0 else mpf(0), mpf(0), True)
        return _bessel_i_series(nu, x, ctx)


def bessel_k(order, argument, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """K_nu(x) = pi (I_{-nu}(x) - I_nu(x)) / (2 sin(nu pi)) for non-integer nu.

    The difference cancels about 2x/ln 2 bits, so both series run with that
    many guard bits on top of the requested precision.
    """
    nu_f = Fraction(order) if not isinstance(order, mp.mpf) else None
    if (nu_f is not None and nu_f.denominator == 1) or (nu_f is None and order == int(order)):
        raise IntegerOrderUnsupported("bessel_k needs a non-integer order")
    x_float = float(argument)
    if x_float <= 0:
        raise OutOfRange("argument must be positive")
    guard = int(2 * x_float / math.log(2)) + 32
    inner = ctx.at_full_precision(ctx.precision_bits + guard)
    with mp.workprec(inner.precision_bits):
        nu, x = to_mpf(order), to_mpf(argument)
        i_minus = _bessel_i_series(-nu, x, inner)
        i_plus = _bessel_i_series(nu, x, inner)
        scale = mp.pi / (2 * mp.sin(nu * mp.pi))
        value = scale * (i_minus.value - i_plus.value)
        err = abs(scale) * (i_minus.error_bound + i_plus.error_bound)
    with mp.workprec(ctx.precision_bits):
        value = +value
        err = err + 2 * ctx.eps * abs(value)
    return ApproxValue(value, err, i_minus.rigorous and i_plus.rigorous)


def _hyp0(lower, x, ctx) -> ApproxValue:
    return hypergeometric_pFq(HypergeometricSpec((), tuple(lower), x), ctx)


# ---------------------------------------------------------------- weights


def _combine(value, rel_err, ctx) -> ApproxValue:
    return ApproxValue(value, abs(value * rel_err) + 4 * ctx.eps * abs(value), True)


def _w_21(x, ctx):
    i1 = _bessel_i_series(mpf(1), 2 * mp.sqrt(x), ctx)
    val = mp.exp(-x) * i1.value / (mp.e * mp.sqrt(x))
    return _combine(val, i1.error_bound / i1.value, ctx)


def _w_2rr(r, x, ctx):
    ir = _bessel_i_series(mpf(r), 2 * mp.root(x, 2 * r), ctx)
    val = mp.power(x, mpf(2 - 3 * r) / (2 * r)) * mp.exp(-mp.root(x, r)) * ir.value / (mp.e * r)
    return _combine(val, ir.error_bound / ir.value, ctx)


def _w_31(x, variant, ctx):
    half = mpf(1) / 2
    f1 = _hyp0((half, 3 * half), x / 8, ctx)
    f2 = _hyp0((3 * half, mpf(2)), x / 8, ctx)
    second = x / mp.sqrt(2) if variant == "printed" else mp.sqrt(x / 2)
    a = 2 / mp.sqrt(mp.pi) * f1.value
    b = second * f2.value
    val = mp.exp(-x / 2) / (mp.e * mp.sqrt(8 * x)) * (a + b)
    rel = (a * f1.error_bound / f1.value + b * f2.error_bound / f2.value) / (a + b)
    return _combine(val, rel, ctx)


def _u52_coefficients(variant):
    if variant == "printed":
        c = 3 / (32 * mp.pi)
        return (c * 24 * mp.sqrt(3), c * 8 * mp.power(3, mpf(5) / 6), c * 3 * mp.power(3, mpf(1) / 6))
    # 1/(Gamma(4/3) Gamma(5/3)), 9^(-1/3)/Gamma(5/3), 9^(-2/3)/(2 Gamma(7/3))
    return (
        9 * mp.sqrt(3) / (4 * mp.pi),
        mp.power(9, -mpf(1) / 3) / mp.gamma(mpf(5) / 3),
        mp.power(9, -mpf(2) / 3) / (2 * mp.gamma(mpf(7) / 3)),
    )


def _w_52(x, variant, ctx):
    t = mpf(1) / 3
    c0, c1, c2 = _u52_coefficients(variant)
    arg = x / 243
    h = [
        _hyp0((t, 2 * t, 4 * t, 5 * t), arg, ctx),
        _hyp0((2 * t, 4 * t, 5 * t, mpf(2)), arg, ctx),
        _hyp0((4 * t, 5 * t, mpf(2), 7 * t), arg, ctx),
    ]
    parts = [c0 * h[0].value, c1 * mp.cbrt(x) * h[1].value, c2 * mp.cbrt(x) ** 2 * h[2].value]
    u = sum(parts)
    rel_u = sum(p * hh.error_bound / hh.value for p, hh in zip(parts, h)) / u
    k = bessel_k(Fraction(1, 3), 2 * mp.sqrt(x) / 3, ctx)
    val = 2 / (27 * mp.e) / mp.sqrt(x) * k.value * u
    return _combine(val, rel_u + k.error_bound / k.value, ctx)


def _w_r1(r, x, variant, ctx):
    d = r - 1
    y = x / d
    q = mpf(1) / d
    yq = mp.power(y, q)

    def terms():
        t = 1 / mp.gamma(r * q)
        for k in count():
            yield t
            t = t * yq / (k + 1) * mp.gamma((r + k) * q) / mp.gamma((r + k + 1) * q)

    s = sum_positive_series(terms(), ctx, min_terms=4)
    pref = 1 / (mp.e * d) if variant == "printed" else 1 / (mp.e * d * d)
    val = pref * mp.power(y, (2 - r) * q) * mp.exp(-y) * s.value
    return _combine(val, s.error_bound / s.value, ctx)


def eval_weight(spec: WeightSpec, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """Evaluate a continuous weight W_{r,s}(x) at x > 0."""
    if not spec.continuous:
        raise UnsupportedKind("the comb is a sum of point masses; use comb_moment")
    with mp.workprec(ctx.precision_bits):
        x = to_mpf(x)
        if x <= 0:
            raise OutOfRange("x must be positive")
        kind, v = spec.kind, spec.variant
        if kind == "closed_21":
            return _w_21(x, ctx)
        if kind == "closed_2rr":
            return _w_2rr(spec.params.s, x, ctx)
        if kind == "closed_31":
            return _w_31(x, v, ctx)
        if kind == "closed_52":
            return _w_52(x, v, ctx)
        return _w_r1(spec.params.r, x, v, ctx)


def comb_moment(r: int, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """n-th moment of the r = s Dirac comb, including the atom at the origin (0^0 = 1)."""
    if r < 1 or n < 0:
        raise OutOfRange("need r >= 1 and n >= 0")

    def terms():
        fact = math.factorial(r - 1)
        for k in count():
            if k:
                fact *= k + r - 1
            pos = math.prod(range(k, k + r))
            yield Fraction(pos**n, fact)

    with mp.workprec(ctx.precision_bits):
        s = sum_positive_series(terms(), ctx, min_terms=r + 2)
        val = s.value / mp.e
        return ApproxValue(val, s.error_bound / mp.e + 2 * ctx.eps * val, s.rigorous)


# ---------------------------------------------------------------- quadrature

# (substitution power q, decay rate b, decay exponent c): x = u^q and W ~ exp(-b x^c)
def _quadrature_profile(spec: WeightSpec):
    r, s = spec.params.r, spec.params.s
    return {
        "closed_21": (2, mpf(1), mpf(1)),
        "closed_2rr": (2 * s, mpf(1), mpf(1) / s),
        "closed_31": (2, mpf(1) / 2, mpf(1)),
        "closed_52": (6, mpf(2) / 3, mpf(1) / 2),
        "series_r1": (r - 1, mpf(1) / (r - 1), mpf(1)),
    }[spec.kind]


def _tail_bound(f, n, X, b, c):
    """Majorize int_X^inf f by C x^n exp(-(b/2) x^c), with C fitted over [X, 4X] and doubled.

    Heuristic: the envelope decays at half the true exponential rate, which
    absorbs the sub-exponential factors of every supported weight for X past the peak.
    """
    beta = b / 2
    probes = [X * t for t in (1, mpf(3) / 2, 2, 3, 4)]
    C = max(f(x) / (x**n * mp.exp(-beta * x**c)) for x in probes) * 2
    a = (n + 1) / c
    return C / c * beta ** (-a) * mp.gammainc(a, beta * X**c)


def moment_integral(spec: WeightSpec, n: int, ctx: PrecisionContext, tolerance=mpf("1e-12")) -> ApproxValue:
    """int_0^inf x^n W(x) dx by tanh-sinh quadrature in u = x^(1/q), extended until the tail is negligible."""
    if not spec.continuous:
        raise UnsupportedKind("moment_integral needs a continuous weight")
    q, b, c = _quadrature_profile(spec)
    with mp.workprec(ctx.precision_bits):
        tolerance = to_mpf(tolerance)

        def f(x):
            return x**n * eval_weight(spec, x, ctx).value

        def g(u):
            if u == 0:
                return mpf(0)
            return f(u**q) * q * u ** (q - 1)

        peak = max((mpf(n + 1) / (b * c)) ** (1 / c), mpf(1))
        X = 4 * peak
        breaks = [mpf(0)] + [p ** (mpf(1) / q) for p in (peak / 8, peak / 2, peak, 2 * peak, X)]
        total, qerr = mp.quad(g, breaks, error=True)
        for _ in range(40):
            tail = _tail_bound(f, n, X, b, c)
            if tail <= tolerance * abs(total) / 2:
                err = abs(qerr) + tail + 8 * ctx.eps * abs(total)
                return ApproxValue(total, err, False)
            X2 = 2 * X
            piece, perr = mp.quad(g, [X ** (mpf(1) / q), X2 ** (mpf(1) / q)], error=True)
            total += piece
            qerr += abs(perr)
            X = X2
        raise TailBoundFailure(f"tail of moment {n} for {spec.kind} not bounded below tolerance")


def moment_quadrature(
    spec: WeightSpec,
    n: int,
    ctx: PrecisionContext = PrecisionContext(precision_bits=128),
) -> MomentReport:
    """Compare the n-th moment of a continuous weight with the exact B_{r,s}(n).

    Runs for n >= 1 only: the continuous weights carry total mass below 1,
    while B(0) = 1 is a convention rather than a moment (see ``total_mass``).
    """
    if n < 1:
        raise OutOfRange("moment checks start at n = 1; use total_mass for n = 0")
    quad = moment_integral(spec, n, ctx)
    exact = bell_number(spec.params, n)
    with mp.workprec(ctx.precision_bits):
        rel = abs(quad.value - exact) / exact
    return MomentReport(n, exact, quad, rel)


def total_mass(spec: WeightSpec, ctx: PrecisionContext = PrecisionContext(precision_bits=128)) -> ApproxValue:
    """Zeroth moment of a weight, reported for information."""
    if spec.continuous:
        return moment_integral(spec, 0, ctx)
    return comb_moment(spec.params.r, 0, ctx)


def fitted_scale(spec: WeightSpec, orders, ctx: PrecisionContext = PrecisionContext(precision_bits=128)) -> tuple[mpf, mpf]:
    """Single constant c, the mean of B(n) / moment_n over ``orders``.

    Returns ``(c, worst relative error after rescaling)``.
    """
    ratios = []
    with mp.workprec(ctx.precision_bits):
        for n in orders:
            rep = moment_quadrature(spec, n, ctx)
            ratios.append(rep.exact / rep.quadrature.value)
        c = sum(ratios) / len(ratios)
        worst = max(abs(c / rt - 1) for rt in ratios)
    return c, worst
