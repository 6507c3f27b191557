from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genusgauge.errors import DomainError, InvalidDivisorError, InvalidModulusError, ParameterError, PoleError
from genusgauge.exact_core import AbGroup, LaurentPoly, as_rat, floor_div, format_rat, geom_sum, lnr

U = LaurentPoly.monomial(1, 1)
ONE = LaurentPoly.monomial(1, 0)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6).map(LaurentPoly)


@pytest.mark.parametrize("m,p,expected", [(5, 4, 1), (-1, 6, 5), (0, 2, 0)])
def test_lnr_examples(m, p, expected):
    assert lnr(m, p) == expected


@pytest.mark.parametrize("p", [0, -2, 3])
def test_lnr_rejects_bad_modulus(p):
    with pytest.raises(InvalidModulusError):
        lnr(1, p)


@pytest.mark.parametrize("a,b,expected", [(7, 2, 3), (-1, 2, -1), (-4, 2, -2)])
def test_floor_div_examples(a, b, expected):
    assert floor_div(a, b) == expected


def test_floor_div_rejects_nonpositive():
    with pytest.raises(InvalidDivisorError):
        floor_div(1, 0)


@given(st.integers(-10**6, 10**6), st.integers(1, 500))
def test_lnr_periodic_and_in_range(m, half):
    p = 2 * half
    r = lnr(m, p)
    assert 0 <= r < p
    assert lnr(m + p, p) == r


@given(st.integers(-10**6, 10**6), st.integers(1, 1000))
def test_floor_div_brackets(a, b):
    f = floor_div(a, b)
    assert f * b <= a < (f + 1) * b


def test_geom_sum_examples():
    assert geom_sum(1) == 1
    assert geom_sum(3) == LaurentPoly({0: 1, 1: 1, 2: 1})
    assert geom_sum(-1) == LaurentPoly({-1: -1})
    with pytest.raises(DomainError):
        geom_sum(0)


@pytest.mark.parametrize("q", [q for q in range(-9, 10) if q % 2])
def test_geom_sum_times_one_minus_u(q):
    assert (ONE - U) * geom_sum(q) == ONE - LaurentPoly.monomial(1, q)


def test_laurent_examples():
    assert (ONE + U) + (-U) == 1
    assert (ONE + U).eval_sign() == 0
    assert (ONE + U).mul_monomial(1, -1) == LaurentPoly({-1: 1, 0: 1})


def test_laurent_canonical_form_drops_zeros():
    p = LaurentPoly({0: 0, 3: 2})
    assert p.coeffs == {3: 2}
    assert (p - p).is_zero()
    assert str(p - p) == "0"


def test_laurent_str_sorted():
    assert str(LaurentPoly({1: 1, -1: 1})) == "u^-1 + u"
    assert str(LaurentPoly({2: -2, 0: 1})) == "1 - 2*u^2"
    assert LaurentPoly({2: 1, -3: 4}).to_json() == {"-3": 4, "2": 1}


def test_eval_int_pole():
    with pytest.raises(PoleError):
        LaurentPoly({-1: 1}).eval_int(0)
    assert LaurentPoly({0: 3, 2: 1}).eval_int(0) == 3


@given(polys, polys, st.sampled_from([-2, -1, 1, 2]))
def test_evaluation_is_ring_homomorphism(a, b, x):
    assert (a + b).eval_int(x) == a.eval_int(x) + b.eval_int(x)
    assert (a * b).eval_int(x) == a.eval_int(x) * b.eval_int(x)
    assert (-a).eval_int(x) == -a.eval_int(x)


@given(polys)
def test_special_values(a):
    assert a.eval_int(1) == a.coefficient_sum()
    assert a.eval_int(-1) == a.eval_sign()


@given(polys, st.integers(-5, 5), st.integers(-5, 5))
def test_mul_monomial_matches_product(a, c, m):
    assert a.mul_monomial(c, m) == a * LaurentPoly.monomial(c, m)


def test_laurent_rejects_non_integers():
    with pytest.raises(ParameterError):
        LaurentPoly({0: 1.5})


def test_rationals():
    assert format_rat(Fraction(-6, 4)) == "-3/2"
    assert format_rat(Fraction(4, 2)) == "2"
    assert as_rat("3/6") == Fraction(1, 2)
    assert Fraction(0).denominator == 1
    with pytest.raises(ParameterError):
        as_rat("x")
    with pytest.raises(ParameterError):
        as_rat(0.5)


def test_abgroup_invariant_factors():
    assert AbGroup(0, (2, 2)).torsion == (2, 2)
    assert AbGroup(0, (2, 3)).torsion == (6,)
    assert AbGroup(1, (4, 6)).torsion == (2, 12)
    assert AbGroup(0, (1,)).torsion == ()
    assert AbGroup(2, (2, 2)).mod2_dimension() == 4
    assert AbGroup(1, (4,)).mod2_dimension() == 2
    assert str(AbGroup(1, (4,))) == "Z^1 + Z/4"
