"""Cross-validation suite: every quantity is computed by two independent routes and compared."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath as mp

from .coherent_states import CoherentFamily, resolution_check, state_coefficients
from .core import FamilyParams, PrecisionContext
from .dobinski import dobinski_integer, dobinski_r1, dobinski_rs
from .generating_functions import classical_egf_check, egf_coefficients, matrix_element_exp
from .measures import comb_moment, moment_quadrature, weight_spec
from .moment_analysis import asymptotic_b21, asymptotic_b31, hankel_determinants
from .normal_order import (
    bell_number,
    bell_sequence,
    fock_oracle,
    lah_number,
    set_partition_count,
    stirling_rr_closed,
    stirling_table,
)

GOLDEN_B96 = (1, 207775, 566828686621, 9011375448568566265)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    gating: bool = True


def _families(max_r):
    return [FamilyParams(r, s) for r in range(1, max_r + 1) for s in range(1, r + 1)]


def check_golden(full: bool) -> CheckResult:
    p = FamilyParams(9, 6)
    exact = tuple(bell_number(p, n) for n in range(1, 5))
    series = tuple(dobinski_integer(p, n) for n in range(1, 5))
    ok = exact == GOLDEN_B96 == series
    return CheckResult("golden_b96", ok, f"exact={exact} dobinski={series}")


def check_oracle(full: bool) -> CheckResult:
    bad = []
    for p in _families(3):
        for n in range(1, 5):
            dim = 2 * n * p.s + n * p.excess
            if stirling_table(p, n) != fock_oracle(p, n, dim):
                bad.append(f"stirling{p}n={n}")
    top = 6 if full else 4
    for p in _families(4):
        for n in range(top + 1):
            if bell_number(p, n) != dobinski_integer(p, n):
                bad.append(f"dobinski{p}n={n}")
    return CheckResult("oracle_triangle", not bad, ", ".join(bad) or "all equal")


def check_closed_forms(full: bool) -> CheckResult:
    bad = []
    for r in range(1, 4):
        for n in range(1, 7):
            row = stirling_table(FamilyParams(r, r), n)
            for k in range(r, r * n + 1):
                if stirling_rr_closed(r, n, k) != row[k]:
                    bad.append(f"S_rr r={r} n={n} k={k}")
    for n in range(1, 13):
        row = stirling_table(FamilyParams(2, 1), n)
        for k in range(1, n + 1):
            if lah_number(n, k) != row[k]:
                bad.append(f"lah n={n} k={k}")
    return CheckResult("closed_forms", not bad, ", ".join(bad) or "all equal")


def check_egf(full: bool) -> CheckResult:
    bad = []
    for r in (2, 3):
        vals = egf_coefficients(r, 15).egf_values()
        for n, v in enumerate(vals):
            if v != bell_number(FamilyParams(r, 1), n):
                bad.append(f"r={r} n={n}")
    top = 10 if full else 8
    classical = classical_egf_check(top).egf_values()
    for n in range(top + 1):
        if not classical[n] == set_partition_count(n) == bell_number(FamilyParams(1, 1), n):
            bad.append(f"classical n={n}")
    return CheckResult("egf_identity", not bad, ", ".join(bad) or "all equal")


def check_hankel(full: bool) -> CheckResult:
    top = 8 if full else 5
    bad = []
    for p in _families(4):
        seq = bell_sequence(p, 2 * top)
        for order in range(1, top + 1):
            if not hankel_determinants(seq, order).positive:
                bad.append(f"{p} order={order}")
    return CheckResult("hankel_positivity", not bad, ", ".join(bad) or f"positive up to order {top}")


def check_comb(full: bool) -> CheckResult:
    # absolute target, so the tail is cut at the rounding level rather than 1e-30 relative
    ctx = PrecisionContext().at_full_precision(256)
    worst = mp.mpf(0)
    for r in range(1, 4):
        for n in range(1, 7):
            v = comb_moment(r, n, ctx)
            with mp.workprec(ctx.precision_bits):
                worst = max(worst, abs(v.value - bell_number(FamilyParams(r, r), n)))
    return CheckResult("comb_moments", worst < 1e-25, f"max abs error {mp.nstr(worst, 3)}")


CONTINUOUS = ((2, 1, 10), (3, 1, 6), (4, 2, 6), (5, 2, 4))


def check_continuous(full: bool) -> CheckResult:
    worst, where = mp.mpf(0), ""
    for r, s, top in CONTINUOUS:
        spec = weight_spec(r, s)
        for n in range(1, (top if full else 2) + 1):
            rep = moment_quadrature(spec, n)
            if rep.relative_error >= worst:
                worst, where = rep.relative_error, f"{spec.kind} n={n}"
    return CheckResult("continuous_moments", worst <= 1e-8,
                       f"max relative error {mp.nstr(worst, 3)} at {where}")


def check_matrix_element(full: bool) -> CheckResult:
    worst = mp.mpf(0)
    for lam in (0.01, 0.05, 0.1):
        for z in (0.5, 1, 1 + 0.5j):
            for r in (2, 3):
                v = matrix_element_exp(r, lam, z)
                worst = max(worst, v.error_bound / abs(v.value))
    return CheckResult("matrix_element", worst <= 1e-10, f"max relative disagreement {mp.nstr(worst, 3)}")


def check_coherent(full: bool) -> CheckResult:
    bad = []
    for p in ((2, 1), (3, 1), (4, 2), (9, 6)):
        fam = CoherentFamily(FamilyParams(*p))
        for z in (0.3, 1, 1 + 1j):
            st = state_coefficients(fam, z, 60)
            if abs(st.norm_squared() - 1) > 1e-12:
                bad.append(f"norm {p} z={z}")
    for p in ((2, 1), (3, 1), (4, 2)):
        for n in range(1, (6 if full else 2) + 1):
            rep = resolution_check(CoherentFamily(FamilyParams(*p)), n)
            if not (rep.moment.relative_error <= 1e-8 and rep.positive):
                bad.append(f"resolution {p} n={n}")
    return CheckResult("coherent_states", not bad, ", ".join(bad) or "unit norm and resolution hold")


def check_representations(full: bool) -> CheckResult:
    ctx = PrecisionContext()
    bad = []
    for r in range(2, 5):
        for n in range(1, 6):
            a, b = dobinski_r1(r, n, ctx), dobinski_rs(FamilyParams(r, 1), n, ctx)
            with mp.workprec(ctx.precision_bits):
                if abs(a.value - b.value) > a.error_bound + b.error_bound:
                    bad.append(f"r={r} n={n}")
    return CheckResult("dobinski_representations", not bad, ", ".join(bad) or "r1 and rs series agree")


def check_asymptotics(full: bool) -> list[CheckResult]:
    orders = (50, 100, 200, 400)
    b21 = [asymptotic_b21(n).deviation for n in orders]
    b31 = [asymptotic_b31(n).deviation for n in orders]
    mono21 = all(x > y for x, y in zip(b21, b21[1:]))
    mono31 = all(x > y for x, y in zip(b31, b31[1:]))
    fmt = lambda xs: ", ".join(mp.nstr(x, 4) for x in xs)
    return [
        CheckResult("asymptotic_b21", mono21 and b21[1] < 0.02, f"|ratio-1| at {orders}: {fmt(b21)}"),
        CheckResult("asymptotic_b31_trend", mono31, f"|ratio-1| at {orders}: {fmt(b31)}"),
        # the published subleading coefficient is flagged in the errata; reported only
        CheckResult("asymptotic_b31_n100_within_0.10", b31[1] < 0.10,
                    f"|ratio-1| at n=100: {mp.nstr(b31[1], 4)}", gating=False),
    ]


CHECKS: tuple[Callable[[bool], CheckResult | list[CheckResult]], ...] = (
    check_golden,
    check_oracle,
    check_closed_forms,
    check_representations,
    check_egf,
    check_hankel,
    check_comb,
    check_continuous,
    check_matrix_element,
    check_coherent,
    check_asymptotics,
)


def run_all(grid: str = "small") -> list[CheckResult]:
    if grid not in ("small", "full"):
        raise ValueError("grid must be 'small' or 'full'")
    out: list[CheckResult] = []
    for check in CHECKS:
        res = check(grid == "full")
        out.extend(res if isinstance(res, list) else [res])
    return out


def all_passed(results) -> bool:
    return all(r.passed for r in results if r.gating)

