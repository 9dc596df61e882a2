from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy.ntheory.continued_fraction import continued_fraction_periodic

from tricomplex.exact import (
    PeriodicCF,
    QuadraticNumber,
    QuadraticSurd,
    cf_eval,
    cf_matrix,
    cf_of_rational,
    cf_of_surd,
    periodic_sum,
    to_noncanonical,
)

fractions = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))


@pytest.mark.parametrize(
    "value, digits",
    [(Fraction(7, 2), [3, 2]), (Fraction(-3, 2), [-2, 2]), (Fraction(5), [5]), (Fraction(0), [0]), (Fraction(13, 5), [2, 1, 1, 2])],
)
def test_known_expansions(value, digits):
    assert cf_of_rational(value) == digits
    assert cf_eval(digits) == value


@given(fractions)
def test_round_trip_and_canonical(r):
    digits = cf_of_rational(r)
    assert cf_eval(digits) == r
    assert all(a >= 1 for a in digits[1:])
    if len(digits) > 1:
        assert digits[-1] >= 2


@given(fractions)
def test_noncanonical_form_has_same_value(r):
    digits = cf_of_rational(r)
    assume(len(digits) > 1 or digits[0] >= 2)
    other = to_noncanonical(digits)
    assert other[-1] == 1
    assert cf_eval(other) == r


def test_cf_eval_rejects_bad_digits():
    with pytest.raises(ValueError):
        cf_eval([])
    with pytest.raises(ValueError):
        cf_eval([1, 0, 2])


@given(st.lists(st.integers(1, 50), min_size=1, max_size=8))
def test_cf_matrix_prepends_digits(digits):
    p, pp, q, qq = cf_matrix(digits)
    assert p * qq - pp * q == (-1) ** len(digits)
    assert Fraction(p, q) == cf_eval(digits)


def test_named_surds():
    assert str(cf_of_surd(QuadraticSurd.sqrt(5))) == "[2; (4, 4)]"
    assert str(cf_of_surd(QuadraticSurd(1, 5, 2))) == "[(1, 1)]"
    # [1; (2, 1)] and [(1, 2)] are the same digit sequence
    r3 = cf_of_surd(QuadraticSurd(1, 3, 2))
    assert r3 == PeriodicCF((1,), (2, 1))
    assert r3.canonical() == ((), (1, 2))


def test_odd_minimal_period_is_doubled():
    pcf = cf_of_surd(QuadraticSurd.sqrt(2))
    assert pcf.minimal_period == (2,)
    assert pcf.period == (2, 2)
    assert periodic_sum(pcf) == 4


def test_period_must_be_even():
    with pytest.raises(ValueError):
        PeriodicCF((1,), (2,))


def test_rational_surd_rejected():
    with pytest.raises(ValueError):
        QuadraticSurd(1, 4, 2)
    with pytest.raises(ValueError):
        QuadraticSurd(1, 5, 0)


def _sympy_pcf(P, Q, D):
    out = continued_fraction_periodic(P, Q, D)
    if out and isinstance(out[-1], list):
        return PeriodicCF(tuple(out[:-1]), tuple(out[-1]) * (2 if len(out[-1]) % 2 else 1))
    raise AssertionError("expected a periodic expansion")


@given(st.integers(-60, 60), st.integers(2, 400), st.integers(-30, 30).filter(bool))
def test_matches_sympy_expansion(P, D, Q):
    assume(isqrt(D) ** 2 != D)
    assert cf_of_surd(QuadraticSurd(P, D, Q)) == _sympy_pcf(P, Q, D)


@given(st.integers(-60, 60), st.integers(2, 400), st.integers(-30, 30).filter(bool))
def test_value_is_exact(P, D, Q):
    assume(isqrt(D) ** 2 != D)
    x = QuadraticSurd(P, D, Q)
    assert cf_of_surd(x).value().same_value(x.to_number())


@given(st.integers(-60, 60), st.integers(2, 400), st.integers(1, 30))
def test_reduced_keeps_value(P, D, Q):
    assume(isqrt(D) ** 2 != D)
    x = QuadraticSurd(P, D, Q)
    y = x.reduced()
    assert y == x
    assert abs(y.Q) <= abs(x.Q)


def test_reduced_display():
    assert str(QuadraticSurd(2, 12, 4).reduced()) == "(1+√3)/2"


def test_floor_and_conjugate():
    x = QuadraticSurd.sqrt(7)
    assert x.floor() == 2
    assert x.conjugate().floor() == -3
    assert (x.to_number() + x.conjugate().to_number()).is_zero()


def test_quadratic_number_arithmetic():
    r2 = QuadraticNumber(Fraction(0), Fraction(1), 2)
    assert (r2 * r2 - 2).is_zero()
    assert (r2 - Fraction(3, 2)).sign() < 0
    assert (r2 - Fraction(7, 5)).sign() > 0
