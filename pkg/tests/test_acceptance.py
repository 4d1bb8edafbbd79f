"""Acceptance criteria, each run at its stated tolerance and time limit.

Every test records a one-line verdict; the lines are printed at the end of the
pytest run (see conftest.py) and when this file is executed directly.
"""

import json
import time
from pathlib import Path

import mpmath as mp
import pytest

from genbell import (
    CoherentFamily,
    FamilyParams,
    PrecisionContext,
    asymptotic_b21,
    asymptotic_b31,
    bell_number,
    bell_sequence,
    comb_moment,
    dobinski,
    egf_coefficients,
    fock_oracle,
    hankel_determinants,
    lah_number,
    matrix_element_closed,
    matrix_element_fock,
    moment_quadrature,
    recover_integer,
    resolution_check,
    state_coefficients,
    stirling_rr_closed,
    stirling_table,
    weight_spec,
)
from genbell.cli import run

P = FamilyParams
VERDICTS: dict[str, str] = {}
ROOT = Path(__file__).resolve().parent.parent


def record(cid, title, ok, detail):
    VERDICTS[cid] = f"{'PASS' if ok else 'FAIL'}  {cid:<4} {title}: {detail}"
    return ok


def test_c1_golden_integers(capsys):
    start = time.perf_counter()
    assert run(["bell", "--r", "9", "--s", "6", "--max-n", "4", "--cross-check"]) == 0
    rec = json.loads(capsys.readouterr().out)
    golden = ["1", "207775", "566828686621", "9011375448568566265"]
    exact_ok = rec["results"]["values"][1:] == golden
    ctx = PrecisionContext()
    bounds = []
    series = []
    for n in range(1, 5):
        value, approx = recover_integer(lambda c, n=n: dobinski(P(9, 6), n, c), ctx)
        series.append(str(value))
        bounds.append(approx.error_bound)
    series_ok = series == golden and all(b < 0.5 for b in bounds)
    elapsed = time.perf_counter() - start
    ok = record("C1", "golden B_{9,6}(1..4)", exact_ok and series_ok and elapsed < 10,
                f"exact={exact_ok} dobinski={series_ok} max_bound={mp.nstr(max(bounds), 3)} {elapsed:.2f}s")
    assert ok, VERDICTS["C1"]


def test_c2_oracle_triangle():
    start = time.perf_counter()
    bad = []
    for r in range(1, 4):
        for s in range(1, r + 1):
            for n in range(1, 5):
                p = P(r, s)
                if stirling_table(p, n) != fock_oracle(p, n, 2 * n * s + n * (r - s)):
                    bad.append(f"S{p} n={n}")
    ctx = PrecisionContext()
    for r in range(1, 5):
        for s in range(1, r + 1):
            for n in range(7):
                value, approx = recover_integer(lambda c, p=P(r, s), n=n: dobinski(p, n, c), ctx)
                if value != bell_number(P(r, s), n) or approx.error_bound >= 0.5:
                    bad.append(f"B({r},{s}) n={n}")
    elapsed = time.perf_counter() - start
    ok = record("C2", "oracle triangle", not bad and elapsed < 60,
                f"{len(bad)} mismatches {bad[:3]} {elapsed:.2f}s")
    assert ok, VERDICTS["C2"]


def test_c3_closed_forms():
    bad = 0
    for r in range(1, 4):
        for n in range(1, 7):
            row = stirling_table(P(r, r), n)
            bad += sum(stirling_rr_closed(r, n, k) != row[k] for k in range(r, r * n + 1))
    for n in range(1, 13):
        row = stirling_table(P(2, 1), n)
        bad += sum(lah_number(n, k) != row[k] for k in range(1, n + 1))
    ok = record("C3", "closed forms S_{r,r} and Lah", bad == 0, f"{bad} mismatches (exact)")
    assert ok, VERDICTS["C3"]


def test_c4_egf_identity():
    bad = [
        (r, n)
        for r in (2, 3)
        for n, v in enumerate(egf_coefficients(r, 15).egf_values())
        if v != bell_number(P(r, 1), n)
    ]
    ok = record("C4", "EGF identity r=2,3 n<=15", not bad, f"{len(bad)} mismatches (exact rationals)")
    assert ok, VERDICTS["C4"]


def test_c5_moments():
    start = time.perf_counter()
    worst, where = mp.mpf(0), ""
    for r, s, top in ((2, 1, 10), (3, 1, 6), (4, 2, 6), (5, 2, 4)):
        spec = weight_spec(r, s)
        for n in range(1, top + 1):
            rel = moment_quadrature(spec, n).relative_error
            if rel >= worst:
                worst, where = rel, f"{spec.kind} n={n}"
    ctx = PrecisionContext().at_full_precision(256)
    comb_err = mp.mpf(0)
    with mp.workprec(256):
        for r in range(1, 4):
            for n in range(1, 7):
                comb_err = max(comb_err, abs(comb_moment(r, n, ctx).value - bell_number(P(r, r), n)))
    elapsed = time.perf_counter() - start
    ok = record("C5", "moment verification", worst <= 1e-8 and comb_err < 1e-25 and elapsed < 300,
                f"continuous max rel {mp.nstr(worst, 3)} ({where}), comb max abs {mp.nstr(comb_err, 3)}, "
                f"{elapsed:.1f}s")
    assert ok, VERDICTS["C5"]


def test_c6_hankel_positivity():
    bad = []
    for r in range(1, 5):
        for s in range(1, r + 1):
            seq = bell_sequence(P(r, s), 16)
            for order in range(1, 9):
                rep = hankel_determinants(seq, order)
                if not (rep.det0 > 0 and rep.det1 > 0):
                    bad.append((r, s, order))
    ok = record("C6", "Hankel positivity r<=4 order<=8", not bad, f"{len(bad)} non-positive (exact)")
    assert ok, VERDICTS["C6"]


def test_c7_matrix_element():
    worst = mp.mpf(0)
    with mp.workprec(256):
        for lam in ("0.01", "0.05", "0.1"):
            for z in (0.5, 1, 1 + 0.5j):
                for r in (2, 3):
                    closed = matrix_element_closed(r, lam, z)
                    fock = matrix_element_fock(r, lam, z, 256)
                    worst = max(worst, abs(closed.value - fock.value) / abs(fock.value))
    ok = record("C7", "matrix element closed vs Fock", worst <= 1e-10, f"max rel {mp.nstr(worst, 3)}")
    assert ok, VERDICTS["C7"]


ORDERS = (50, 100, 200, 400)


def test_c8a_b21_asymptotics():
    start = time.perf_counter()
    devs = [asymptotic_b21(n).deviation for n in ORDERS]
    mono = all(a > b for a, b in zip(devs, devs[1:]))
    elapsed = time.perf_counter() - start
    ok = record("C8a", "B_{2,1} asymptotics", devs[1] < 0.02 and mono and elapsed < 60,
                f"|ratio-1| {[mp.nstr(d, 4) for d in devs]} monotone={mono} {elapsed:.2f}s")
    assert ok, VERDICTS["C8a"]


@pytest.mark.xfail(strict=True, reason="published B_{3,1} subleading coefficient leaves |ratio-1| = 0.148 "
                                       "at n=100; see errata b31-asymptotic-subleading")
def test_c8b_b31_asymptotics():
    start = time.perf_counter()
    devs = [asymptotic_b31(n).deviation for n in ORDERS]
    mono = all(a > b for a, b in zip(devs, devs[1:]))
    elapsed = time.perf_counter() - start
    ok = record("C8b", "B_{3,1} asymptotics", devs[1] < 0.10 and mono and elapsed < 60,
                f"|ratio-1| {[mp.nstr(d, 4) for d in devs]} (need < 0.10 at n=100) monotone={mono} "
                f"{elapsed:.2f}s")
    assert ok, VERDICTS["C8b"]


def test_c9_coherent_states():
    worst_norm = mp.mpf(0)
    ctx = PrecisionContext()
    for p in ((2, 1), (3, 1), (4, 2), (9, 6)):
        for z in (0.3, 1, 1 + 1j, 2):
            st = state_coefficients(CoherentFamily(P(*p)), z, 80, ctx)
            with mp.workprec(256):
                worst_norm = max(worst_norm, abs(st.norm_squared() - 1))
    worst_rel, positive = mp.mpf(0), True
    for p in ((2, 1), (3, 1), (4, 2)):
        for n in range(1, 7):
            rep = resolution_check(CoherentFamily(P(*p)), n)
            worst_rel = max(worst_rel, rep.moment.relative_error)
            positive &= rep.positive
    ok = record("C9", "coherent states", worst_norm < 1e-12 and worst_rel <= 1e-8 and positive,
                f"norm dev {mp.nstr(worst_norm, 3)}, resolution max rel {mp.nstr(worst_rel, 3)}, "
                f"W positive={positive}")
    assert ok, VERDICTS["C9"]


def test_c10_errata(capsys):
    assert run(["errata"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    keys = [row["key"] for row in rows]
    wanted = ["dobinski-rs-inverse-factorial", "pr-family-hypergeometric-prefactor",
              "normal-ordered-exponential-sign", "b31-asymptotic-subleading"]
    missing_tests = []
    for row in rows:
        file, name = row["test_id"].split("::")
        if f"def {name}(" not in (ROOT / file).read_text():
            missing_tests.append(row["test_id"])
    ok = record("C10", "errata ledger", keys == wanted and not missing_tests,
                f"{len(rows)} entries, missing tests {missing_tests}")
    assert ok, VERDICTS["C10"]


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print()
    for cid in sorted(VERDICTS, key=lambda c: (int(c[1:].rstrip("ab")), c)):
        print(VERDICTS[cid])
    sys.exit(code)
