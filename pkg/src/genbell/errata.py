"""Published formulas that had to be corrected, or that were kept but do not hold as printed.

Each entry names the test that demonstrates the problem. ``FORMULA_ERRATA``
covers the Bell-number, generating-function and asymptotic formulas;
``WEIGHT_ERRATA`` covers closed-form weight functions whose moments were
found to be off during quadrature checks.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Erratum:
    key: str
    formula: str
    printed: str
    adopted: str
    evidence: str
    status: str  # "corrected" or "kept-as-printed"
    test_id: str

    def as_dict(self) -> dict:
        return asdict(self)


FORMULA_ERRATA = (
    Erratum(
        key="dobinski-rs-inverse-factorial",
        formula="extended Dobinski series for B_{r,s}(n), r > s",
        printed="(r-s)^{s(n-1)}/e * sum_k prod_j Gamma(n+(k+j)/(r-s)) / Gamma(1+(k+j)/(r-s))",
        adopted="same series with an extra factor 1/k! in every term",
        evidence="printed terms grow without bound; corrected series reproduces "
        "B_{9,6}(1..4) = 1, 207775, 566828686621, 9011375448568566265 and every (r,1) family",
        status="corrected",
        test_id="tests/test_dobinski.py::test_rs_series_without_inverse_factorial_diverges",
    ),
    Erratum(
        key="pr-family-hypergeometric-prefactor",
        formula="hypergeometric form of B_{pr+p,pr}(n), including the B_{9,6} instance",
        printed="(1/e) prod_{j=1}^{r} (p(n-1)+j)!/(pj)! * rFr(...; 1)",
        adopted="evaluated as printed; the published first four terms of B_{9,6} "
        "and the exact normal-ordering values are treated as ground truth",
        evidence="as printed B_{9,6}(1) = 1/2160 instead of 1; the (r+1,r) and (2r,r) "
        "special forms do reproduce the exact values",
        status="kept-as-printed",
        test_id="tests/test_dobinski.py::test_printed_pr_family_prefactor_disagrees",
    ),
    Erratum(
        key="normal-ordered-exponential-sign",
        formula="normally ordered exp(lambda (a^dagger)^r a), its coherent-state "
        "expectation and the B_{r,1} EGF",
        printed="exp{[(1 - lambda z*^{r-1}(r-1))^{+1/(r-1)} - 1] |z|^2}",
        adopted="inner exponent -1/(r-1)",
        evidence="printed sign gives exp(-lambda) for r=2, z=1 instead of "
        "exp(lambda/(1-lambda)); corrected form matches the Fock-space sum to 1e-10",
        status="corrected",
        test_id="tests/test_generating_functions.py::test_printed_exponent_sign_contradicts_fock_sum",
    ),
    Erratum(
        key="b31-asymptotic-subleading",
        formula="large-n expansion of B_{3,1}(n)",
        printed="subleading coefficient 2^{-3/7}",
        adopted="kept as printed; AsymptoticReport.implied_subleading records the "
        "coefficient the exact values imply",
        evidence="|exact/asymptotic - 1| = 0.148 at n=100 and 0.097 at n=400, "
        "decaying like n^{-1/3}; implied coefficient drifts from -0.055 (n=100) "
        "to -0.043 (n=400), extrapolating near -0.02",
        status="kept-as-printed",
        test_id="tests/test_moment_analysis.py::test_b31_printed_subleading_quality",
    ),
)

WEIGHT_ERRATA = (
    Erratum(
        key="weight-r1-prefactor",
        formula="series weight W_{r,1}(x), r >= 2",
        printed="prefactor 1/(e (r-1))",
        adopted="prefactor 1/(e (r-1)^2) (variant='derived')",
        evidence="printed weight has moments (r-1) B_{r,1}(n); identical for r = 2",
        status="corrected",
        test_id="tests/test_measures.py::test_printed_series_r1_moments_off_by_r_minus_1",
    ),
    Erratum(
        key="weight-31-second-term",
        formula="closed weight W_{3,1}(x)",
        printed="second term x/sqrt(2) * 0F2(3/2, 2; x/8)",
        adopted="sqrt(x/2) * 0F2(3/2, 2; x/8), the odd-index half of the W_{r,1} series",
        evidence="printed moments are off by 41% (n=1) to 138% (n=6); no single "
        "scale fits (best scale 0.531 leaves 27% error)",
        status="corrected",
        test_id="tests/test_measures.py::test_printed_w31_fails_moments",
    ),
    Erratum(
        key="weight-52-coefficients",
        formula="closed weight W_{5,2}(x), coefficients of u_{5,2}",
        printed="(3/(32 pi)) * [24 sqrt 3, 8 3^{5/6}, 3 3^{1/6}]",
        adopted="[9 sqrt 3/(4 pi), 9^{-1/3}/Gamma(5/3), 9^{-2/3}/(2 Gamma(7/3))], "
        "re-derived from the corrected Dobinski series; the first coincides",
        evidence="printed moments are 6.6% to 7.8% high for n=1..4; best single "
        "scale 0.93095 still leaves 0.75%, so the shape differs",
        status="corrected",
        test_id="tests/test_measures.py::test_printed_w52_scale_fit",
    ),
)

ERRATA = FORMULA_ERRATA + WEIGHT_ERRATA


def format_errata(entries=ERRATA) -> str:
    lines = []
    for i, e in enumerate(entries, 1):
        lines.append(f"{i}. [{e.status}] {e.key}: {e.formula}")
        lines.append(f"   printed:  {e.printed}")
        lines.append(f"   adopted:  {e.adopted}")
        lines.append(f"   evidence: {e.evidence}")
        lines.append(f"   test:     {e.test_id}")
    return "\n".join(lines)
