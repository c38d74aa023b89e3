from fractions import Fraction

import pytest
from hypothesis import given

from symknot.laurent import DELTA, LaurentPoly

from strategies import nonzero_polys, polys

t = LaurentPoly.monomial(1)


def test_construction_drops_zeros_and_sorts():
    p = LaurentPoly({3: 1, -1: 2, 0: 0})
    assert list(p.items()) == [(-1, 2), (3, 1)]
    assert p.min_exp == -1 and p.max_exp == 3 and p.span == 4


def test_arithmetic():
    p = 1 - t + t ** 2
    assert p * p == LaurentPoly.from_list([1, -2, 3, -2, 1])
    assert p - p == LaurentPoly()
    assert (t ** -2) == LaurentPoly({-2: 1})
    assert 2 * p == p + p


def test_only_units_invert():
    with pytest.raises(ValueError):
        (2 * t) ** -1
    with pytest.raises(ValueError):
        (1 + t) ** -1


def test_evaluation_is_exact():
    p = t ** -1 - 1 + t
    assert p(-1) == -3
    assert p(2) == Fraction(3, 2)


def test_exact_division():
    assert (DELTA * (1 + t)).exact_div(DELTA) == 1 + t
    with pytest.raises(ValueError):
        (1 + t).exact_div(1 - t)


def test_serialize_round_trip():
    p = LaurentPoly({-3: 2, 0: -1, 5: 7})
    assert p.serialize() == "-3:2 0:-1 5:7"
    assert LaurentPoly.parse(p.serialize()) == p


def test_to_string():
    assert (t ** -1 - 1 + t).to_string() == "t^-1 - 1 + t"
    assert (-2 * t ** 3).to_string("q") == "-2*q^3"
    assert LaurentPoly().to_string() == "0"


def test_exponent_helpers():
    p = LaurentPoly({-2: 1, 4: 3})
    assert p.invert_variable() == LaurentPoly({2: 1, -4: 3})
    assert p.divide_exponents(2) == LaurentPoly({-1: 1, 2: 3})
    with pytest.raises(ValueError):
        LaurentPoly({1: 1}).divide_exponents(2)
    assert LaurentPoly({-1: 1, 1: 1}).is_palindromic()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(polys, nonzero_polys)
def test_division_round_trip(a, b):
    assert (a * b).exact_div(b) == a


@given(polys)
def test_hash_consistent(a):
    assert hash(a) == hash(LaurentPoly(a.coeffs))
