import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from genbell import (
    CoherentFamily,
    FamilyParams,
    OutOfRange,
    TruncationTooSmall,
    UnsupportedFamily,
    bell_number,
    normalization,
    overlap,
    resolution_check,
    state_coefficients,
)

P = FamilyParams


def test_normalization_examples(ctx):
    assert normalization(CoherentFamily(P(2, 1)), 0, ctx).value == 1
    v = normalization(CoherentFamily(P(1, 1)), 1, ctx)
    with mp.workprec(ctx.precision_bits):
        ref = mp.fsum(1 / mp.mpf(bell_number(P(1, 1), n)) for n in range(200))
        assert abs(v.value - ref) <= v.error_bound + 1e-70
    fam = CoherentFamily(P(9, 6))
    v = normalization(fam, 10, ctx)
    with mp.workprec(ctx.precision_bits):
        partial = mp.fsum(mp.mpf(10) ** n / fam.rho(n) for n in range(10))
        assert abs(v.value - partial) / v.value < 1e-30


def test_normalization_domain(ctx):
    with pytest.raises(OutOfRange):
        normalization(CoherentFamily(P(2, 1)), -1, ctx)


@given(st.floats(0, 30), st.floats(0.01, 10))
def test_normalization_increasing(x, dx):
    fam = CoherentFamily(P(2, 1))
    a, b = normalization(fam, x), normalization(fam, x + dx)
    assert a.value >= 1
    assert b.value > a.value


def test_vacuum_state(ctx):
    st_ = state_coefficients(CoherentFamily(P(3, 1)), 0, 5, ctx)
    assert st_.coefficients[0] == 1
    assert all(c == 0 for c in st_.coefficients[1:])


def test_unit_norm(ctx):
    st_ = state_coefficients(CoherentFamily(P(2, 1)), 1, 40, ctx)
    with mp.workprec(ctx.precision_bits):
        assert abs(st_.norm_squared() - 1) < 1e-12
    for p in ((3, 1), (4, 2), (9, 6)):
        for z in (0.3, 1 + 1j, -2):
            st_ = state_coefficients(CoherentFamily(P(*p)), z, 60, ctx)
            with mp.workprec(ctx.precision_bits):
                assert abs(st_.norm_squared() - 1) < 1e-12


def test_truncation_too_small(ctx):
    with pytest.raises(TruncationTooSmall):
        state_coefficients(CoherentFamily(P(2, 1)), 3, 10, ctx)


def test_overlap_examples(ctx):
    fam = CoherentFamily(P(2, 1))
    z = 0.7 + 0.2j
    assert overlap(fam, z, z, ctx).contains(1)
    v = overlap(fam, z, 0, ctx)
    with mp.workprec(ctx.precision_bits):
        expected = 1 / mp.sqrt(normalization(fam, abs(mp.mpc(z)) ** 2, ctx).value)
        assert abs(v.value - expected) <= v.error_bound + 1e-70
    assert abs(overlap(fam, 1, -1, ctx).value) <= 1


def test_overlap_matches_coefficients(ctx):
    fam = CoherentFamily(P(3, 1))
    z, w = 0.5 + 0.5j, 1 - 0.3j
    a = state_coefficients(fam, z, 60, ctx).coefficients
    b = state_coefficients(fam, w, 60, ctx).coefficients
    with mp.workprec(ctx.precision_bits):
        direct = mp.fsum(mp.conj(x) * y for x, y in zip(a, b))
        assert abs(direct - overlap(fam, z, w, ctx).value) < 1e-25


@pytest.mark.parametrize("n,expected", [(1, 1), (4, 73)])
def test_resolution_examples(n, expected):
    rep = resolution_check(CoherentFamily(P(2, 1)), n)
    assert rep.moment.exact == expected
    assert rep.moment.relative_error <= 1e-8
    assert rep.positive
    assert [float(x) for x, _ in rep.reconstructed_weight] == [0.1, 1.0, 10.0]


def test_resolution_unsupported():
    with pytest.raises(UnsupportedFamily):
        resolution_check(CoherentFamily(P(2, 2)), 1)
    with pytest.raises(UnsupportedFamily):
        resolution_check(CoherentFamily(P(5, 3)), 1)
    with pytest.raises(OutOfRange):
        resolution_check(CoherentFamily(P(2, 1)), 0)
