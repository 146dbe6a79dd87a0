from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parapoles.lfactor import (
    LFactorProduct,
    cancel,
    div,
    frac_str,
    is_product_of_L,
    mul,
    parse_frac,
    pole_locus,
    specialize,
)

keys = st.tuples(st.integers(1, 6), st.fractions(min_value=-10, max_value=10, max_denominator=6))
products = st.dictionaries(keys, st.integers(-3, 3), max_size=6).map(LFactorProduct)


def test_zero_exponents_dropped():
    p = LFactorProduct({(1, 1): 2, (2, F(1, 2)): 0})
    assert dict(p) == {(1, F(1)): 2}
    assert len(LFactorProduct.factor(1, 0, 0)) == 0


def test_bad_lambda():
    with pytest.raises(ValueError):
        LFactorProduct({(0, 1): 1})


def test_mul_div_cancel():
    a = LFactorProduct.factor(1, 1)
    b = LFactorProduct.factor(1, 0)
    q = div(mul(a, b), b)
    assert q == a
    assert cancel(a, a) == LFactorProduct()
    assert (a * b).numerator == a * b
    assert (a / b).denominator == b


def test_str_format():
    p = LFactorProduct({(1, 1): 1, (2, F(-1, 2)): -2, (1, 0): 1})
    assert str(p) == "L(s, chi) * L(s + 1, chi) * L(2s - 1/2, chi^2)^-2"
    assert str(LFactorProduct()) == "1"


def test_json_round_trip():
    p = LFactorProduct({(3, F(5, 3)): 1, (1, -2): -1})
    assert LFactorProduct.from_json(p.to_json()) == p
    assert p.to_json()[0] == {"lambda": 1, "c": "-2", "exponent": -1}


def test_frac_helpers():
    assert frac_str(F(3, 2)) == "3/2"
    assert frac_str(4) == "4"
    assert parse_frac("-7/3") == F(-7, 3)


def test_dominates_and_product_of_L():
    d = LFactorProduct({(1, 1): 1, (2, 1): 1})
    assert d.dominates(LFactorProduct.factor(1, 1))
    assert not d.dominates(LFactorProduct.factor(1, 1, 2))
    assert is_product_of_L(d)
    assert not is_product_of_L(d / LFactorProduct.factor(1, 0))


def test_specialize():
    p = LFactorProduct({(1, 1): 1, (2, 1): 1, (3, 0): 1})
    assert specialize(p, 1) == p
    assert specialize(p, 2) == LFactorProduct.factor(2, 1)
    assert specialize(p, 3) == LFactorProduct.factor(3, 0)
    with pytest.raises(ValueError):
        specialize(p, 0)


def test_pole_locus_a1():
    # d c_w for the nontrivial coset of A1: L(s+1) L(s) / L(s+1) = L(s)
    loc = pole_locus(LFactorProduct.factor(1, 0))
    assert [(e.real_part, e.max_order) for e in loc] == [(0, 1)]
    assert "lattice" in loc.note


def test_pole_locus_cancellation():
    # L(2s+1) / L(s + 1/2): on the real axis the orders cancel, off it the
    # pole of L(2s+1) at imaginary offset pi i / log q survives
    p = LFactorProduct({(2, 1): 1, (1, F(1, 2)): -1})
    assert [(e.real_part, e.max_order) for e in pole_locus(p)] == [(F(-1, 2), 1)]
    p = LFactorProduct({(1, F(1, 2)): 1, (2, 1): -1})
    assert list(pole_locus(p)) == []


def test_pole_locus_character_order():
    p = LFactorProduct({(1, 1): 1, (2, 3): 2})
    assert [(e.real_part, e.max_order) for e in pole_locus(p, 2)] == [(F(-3, 2), 2)]
    assert list(pole_locus(p, 3)) == []


@given(products, products, products)
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a / a == LFactorProduct()
    assert a * a.inverse() == LFactorProduct()
    assert a ** 2 == a * a


@given(products)
def test_numerator_over_denominator(a):
    assert a.numerator / a.denominator == a
    assert is_product_of_L(a.numerator) and is_product_of_L(a.denominator)
    assert hash(LFactorProduct(dict(a))) == hash(a)


@given(products)
def test_pole_orders_bounded(a):
    total = sum(e for e in a.values() if e > 0)
    for e in pole_locus(a):
        assert 0 < e.max_order <= total
