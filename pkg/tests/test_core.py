from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from genbell import ApproxValue, FamilyParams, MaxTermsExceeded, OutOfRange, PrecisionContext, recover_integer
from genbell.core import falling_factorial, mpf_to_fraction, rising_factorial, sum_positive_series


def test_family_params_validation():
    assert FamilyParams(3, 1).excess == 2
    with pytest.raises(OutOfRange):
        FamilyParams(1, 2)
    with pytest.raises(OutOfRange):
        FamilyParams(0, 0)
    with pytest.raises(TypeError):
        FamilyParams(2.0, 1)


def test_precision_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(precision_bits=32)
    with pytest.raises(ValueError):
        PrecisionContext(tail_relative_bound=1.5)
    with pytest.raises(ValueError):
        PrecisionContext(max_terms=0)
    c = PrecisionContext().for_integer_recovery(512)
    assert c.precision_bits == 512 and c.tail_relative_bound <= mp.ldexp(1, -496)


def test_falling_and_rising_factorials():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(1, 2) == 0
    assert falling_factorial(7, 0) == 1
    assert rising_factorial(Fraction(1, 2), 3) == Fraction(15, 8)


def test_series_sums_to_e(ctx):
    def terms():
        t, k = Fraction(1), 0
        while True:
            yield t
            k += 1
            t /= k

    with mp.workprec(ctx.precision_bits):
        v = sum_positive_series(terms(), ctx)
        assert abs(v.value - mp.e) <= v.error_bound
        assert v.error_bound < 1e-29
        assert v.rigorous


def test_series_respects_max_terms():
    ctx = PrecisionContext(max_terms=50)

    def ones():
        while True:
            yield 1

    with mp.workprec(ctx.precision_bits):
        with pytest.raises(MaxTermsExceeded):
            sum_positive_series(ones(), ctx)


def test_approx_value_contains_is_exact():
    with mp.workprec(200):
        v = ApproxValue(mp.mpf(10) + mp.mpf(2) ** -150, mp.mpf(2) ** -160, True)
        assert not v.contains(10)
        assert v.contains(Fraction(2**150 * 10 + 1, 2**150))
    with pytest.raises(ValueError):
        ApproxValue(mp.mpf(1), mp.mpf(-1), True)


def test_recover_integer_raises_precision(ctx):
    big = 3**300 + 1

    def evaluate(c):
        with mp.workprec(c.precision_bits):
            return ApproxValue(mp.mpf(big), mp.mpf(big) * c.eps, True)

    n, approx = recover_integer(evaluate, ctx)
    assert n == big
    assert approx.error_bound < 0.5


@given(st.integers(-(10**40), 10**40), st.integers(-200, 200))
def test_mpf_to_fraction_round_trip(m, e):
    with mp.workprec(256):
        x = mp.ldexp(mp.mpf(m), e)
        assert mpf_to_fraction(x) == Fraction(m) * Fraction(2) ** e


@given(st.integers(-(10**30), 10**30), st.fractions(min_value=-0.49, max_value=0.49))
def test_nearest_integer(n, offset):
    with mp.workprec(256):
        v = ApproxValue(mp.mpf(n) + mp.mpf(offset.numerator) / offset.denominator, mp.mpf(0), True)
        assert v.nearest_integer() == n
        assert isinstance(v.nearest_integer(), int)


def test_approx_value_contains_complex():
    with mp.workprec(128):
        v = ApproxValue(mp.mpc(1, 1), mp.mpf("0.5"), True)
        assert v.contains(1.3 + 1.3j)
        assert not v.contains(1.4 + 1.4j)
        assert not v.contains(1)
        assert ApproxValue(mp.mpc(1, 0), mp.mpf(0), True).contains(1)
