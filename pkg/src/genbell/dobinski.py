"""Extended Dobinski series and hypergeometric representations of B_{r,s}(n).

Every series here has positive, factorially decaying terms. Gamma ratios
``Gamma(n + c) / Gamma(1 + c)`` with integer n are expanded as exact rising
products, so no Gamma function is ever evaluated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

import mpmath as mp
from mpmath import mpf

from .core import (
    DEFAULT_CONTEXT,
    ApproxValue,
    Divergent,
    FamilyParams,
    OutOfRange,
    PrecisionContext,
    UnsupportedShape,
    recover_integer,
    sum_positive_series,
    to_mpf,
)
from .normal_order import bell_number


class PrintedFormulaWarning(UserWarning):
    """A formula evaluated exactly as printed disagrees with the exact integers."""


def _scale_by_inv_e(series: ApproxValue, ctx: PrecisionContext) -> ApproxValue:
    inv_e = 1 / mp.e
    value = series.value * inv_e
    err = series.error_bound * inv_e + 2 * ctx.eps * abs(value)
    return ApproxValue(value, err, series.rigorous)


def dobinski_rr(r: int, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """(1/e) sum_k [(k+r)!/k!]^(n-1) / k!, which equals B_{r,r}(n) for n >= 1."""
    if r < 1 or n < 1:
        raise OutOfRange("need r >= 1 and n >= 1")

    def terms():
        fact = 1
        for k in count():
            if k:
                fact *= k
            rising = math.prod(range(k + 1, k + r + 1))
            yield Fraction(rising ** (n - 1), fact)

    with mp.workprec(ctx.precision_bits):
        return _scale_by_inv_e(sum_positive_series(terms(), ctx, min_terms=r + 2), ctx)


def dobinski_r1(r: int, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """B_{r,1}(n) from the Gamma-ratio series starting at k = 1.

    ``(r-1)^n Gamma(n + k/(r-1)) / Gamma(k/(r-1))`` is the integer product
    ``k (k + (r-1)) ... (k + (n-1)(r-1))``.
    """
    if r < 2 or n < 1:
        raise OutOfRange("need r >= 2 and n >= 1")
    d = r - 1

    def terms():
        fact = 1
        for k in count(1):
            fact *= k
            yield Fraction(math.prod(k + i * d for i in range(n)), fact)

    with mp.workprec(ctx.precision_bits):
        return _scale_by_inv_e(sum_positive_series(terms(), ctx, min_terms=n + 2), ctx)


def dobinski_rs(params: FamilyParams, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """B_{r,s}(n) for r > s from the Gamma-product series, with each term weighted by 1/k!.

    Without the 1/k! weight the series diverges; with it, each term is
    ``(r-s)^(s(n-1)) prod_j Gamma(n + (k+j)/(r-s)) / Gamma(1 + (k+j)/(r-s)) / k!``.
    """
    r, s = params.r, params.s
    if r <= s:
        raise OutOfRange("dobinski_rs needs r > s")
    if n < 1:
        raise OutOfRange("n must be >= 1")
    d = r - s
    prefactor = Fraction(d) ** (s * (n - 1))

    def terms():
        fact = 1
        for k in count():
            if k:
                fact *= k
            prod = Fraction(1)
            for j in range(1, s + 1):
                c = Fraction(k + j, d)
                for i in range(1, n):
                    prod *= c + i
            yield prefactor * prod / fact

    with mp.workprec(ctx.precision_bits):
        return _scale_by_inv_e(sum_positive_series(terms(), ctx, min_terms=n + 2), ctx)


def dobinski(params: FamilyParams, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """Dispatch to the Dobinski series appropriate to ``params``; B(0) = 1 is exact."""
    if n == 0:
        return ApproxValue(mpf(1), mpf(0), True)
    if params.r == params.s:
        return dobinski_rr(params.r, n, ctx)
    return dobinski_rs(params, n, ctx)


def dobinski_integer(params: FamilyParams, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """Round the Dobinski value to an integer, raising precision until the bound is below 1/2."""
    value, _ = recover_integer(lambda c: dobinski(params, n, c), ctx)
    return value


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple
    lower: tuple
    argument: object

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        for b in self.lower:
            if b <= 0 and b == int(b):
                raise ValueError(f"lower parameter {b} is a non-positive integer")


def hypergeometric_pFq(spec: HypergeometricSpec, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """sum_k prod (a_i)_k / prod (b_j)_k * x^k / k!, truncated with a ratio tail bound."""
    p, q = len(spec.upper), len(spec.lower)
    with mp.workprec(ctx.precision_bits):
        x = to_mpf(spec.argument)
        if x == 0:
            return ApproxValue(mpf(1), mpf(0), True)
        if p > q + 1 or (p == q + 1 and abs(x) >= 1):
            raise Divergent(f"{p}F{q} series diverges at {x}")
        upper = [to_mpf(a) for a in spec.upper]
        lower = [to_mpf(b) for b in spec.lower]
        # the geometric tail bound only applies once every factor (a+k)/(b+k) has settled
        settle = int(max([abs(float(v)) for v in upper + lower] + [0])) + 2

        def terms():
            t = mpf(1)
            for k in count():
                yield t
                num = x
                for a in upper:
                    num *= a + k
                den = k + 1
                for b in lower:
                    den *= b + k
                t = t * num / den

        return sum_positive_series(terms(), ctx, min_terms=settle)


def _hyp_shape(params: FamilyParams) -> tuple[str, int, int]:
    """Identify (name, p, rr) with (r, s) = (p*rr + p, p*rr)."""
    d = params.excess
    if d == 0 or params.s % d:
        raise UnsupportedShape(f"no hypergeometric form for {params}")
    p, rr = d, params.s // d
    if p == 1:
        return "r+1,r", p, rr
    if rr == 1:
        return "2r,r", p, rr
    return "pr+p,pr", p, rr


def hypergeometric_shape(params: FamilyParams) -> str:
    return _hyp_shape(params)[0]


def bell_hypergeometric(params: FamilyParams, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ApproxValue:
    """Evaluate the printed hypergeometric closed form of B_{r,s}(n) for the covered shapes.

    * ``(r+1, r)``: (1/e) prod_j (n-1+j)!/j! * rFr(n+1..n+r; 2..r+1; 1)
    * ``(2r, r)``:  (rn)!/(e r!) * 1F1(rn+1; r+1; 1)
    * ``(pr+p, pr)`` with p, r >= 2: (1/e) prod_j (p(n-1)+j)!/(pj)! * rFr(...)

    The third prefactor is evaluated as printed. It does not reproduce the exact
    Bell numbers; when that happens a ``PrintedFormulaWarning`` is issued and
    the printed value is returned unchanged.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    shape, p, rr = _hyp_shape(params)
    if shape == "r+1,r":
        pref = Fraction(math.prod(math.factorial(n - 1 + j) for j in range(1, rr + 1)),
                        math.prod(math.factorial(j) for j in range(1, rr + 1)))
        spec = HypergeometricSpec([n + j for j in range(1, rr + 1)],
                                  [j + 1 for j in range(1, rr + 1)], 1)
    elif shape == "2r,r":
        pref = Fraction(math.factorial(p * n), math.factorial(p))
        spec = HypergeometricSpec([p * n + 1], [p + 1], 1)
    else:
        pref = Fraction(math.prod(math.factorial(p * (n - 1) + j) for j in range(1, rr + 1)),
                        math.prod(math.factorial(p * j) for j in range(1, rr + 1)))
        spec = HypergeometricSpec([p * n + 1 + p * i for i in range(rr)],
                                  [1 + p + p * i for i in range(rr)], 1)
    series = hypergeometric_pFq(spec, ctx)
    with mp.workprec(ctx.precision_bits):
        scaled = ApproxValue(series.value * to_mpf(pref), series.error_bound * to_mpf(pref), series.rigorous)
        out = _scale_by_inv_e(scaled, ctx)
        exact = bell_number(params, n)
        if not out.contains(exact):
            warnings.warn(
                f"printed {shape} hypergeometric form gives {mp.nstr(out.value, 12)} for "
                f"B_{{{params.r},{params.s}}}({n}) but the exact value is {exact}",
                PrintedFormulaWarning,
                stacklevel=2,
            )
    return out


def hypergeometric_discrepancy(params: FamilyParams, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """Ratio of the printed hypergeometric value to the exact B_{r,s}(n)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrintedFormulaWarning)
        val = bell_hypergeometric(params, n, ctx)
    with mp.workprec(ctx.precision_bits):
        return val.value / to_mpf(bell_number(params, n))


def dobinski_terms(params: FamilyParams, n: int, how_many: int) -> list[Fraction]:
    """First ``how_many`` exact terms (before the 1/e factor) of the series used by ``dobinski``."""
    if params.r == params.s:
        r = params.r
        return [Fraction(math.prod(range(k + 1, k + r + 1)) ** (n - 1), math.factorial(k))
                for k in range(how_many)]
    d, s = params.excess, params.s
    pref = Fraction(d) ** (s * (n - 1))
    out = []
    for k in range(how_many):
        prod = Fraction(1)
        for j in range(1, s + 1):
            for i in range(1, n):
                prod *= Fraction(k + j, d) + i
        out.append(pref * prod / math.factorial(k))
    return out
