from fractions import Fraction as F

import pytest

from parapoles.eisenstein import basic_function_numerator, eisenstein_poles
from parapoles.lfactor import LFactorProduct, pole_locus
from parapoles.parabolic import parabolic_datum
from parapoles.quotient import c_w, d_product, enumerate_quotient


def poles(report):
    return [(e.real_part, e.character_order, e.max_order) for e in report.poles]


def test_a1_by_hand():
    # d c_w is L(s+1) for w = 1 and L(s) for w = s_1
    r = eisenstein_poles("A1", 1)
    assert poles(r) == [(-1, 1, 1), (0, 1, 1)]
    assert r.n_max == 1 and r.d0 == 1 and r.status == "verified"


def test_c2_strip():
    r = eisenstein_poles("C2", 2)
    assert r.strip_bound == F(3, 2)
    assert all(abs(x) <= F(3, 2) for x, _, _ in poles(r))
    assert {d for _, d, _ in poles(r)} == {1, 2}


def test_g2_orders():
    r = eisenstein_poles("G2", 1)
    assert r.d0 == 2 and r.n_max == 2
    assert (F(-1, 2), 1, 2) in poles(r)


def test_half_integral_lattice_flag():
    # s_k + 1 = 3/2 and d0 = 1: real parts are half-integers, outside Z
    r = eisenstein_poles("A2", 1)
    assert r.invariants == {"strip": True, "lattice": False, "lattice_shifted": True}
    assert r.status == "failed"
    assert {v["invariant"] for v in r.violations} == {"lattice"}


@pytest.mark.parametrize("name,node", [("B3", 2), ("C3", 3), ("D4", 2), ("G2", 2)])
def test_union_matches_direct(name, node):
    p = parabolic_datum(name, node)
    q = enumerate_quotient(p)
    d = d_product(p)
    expected = {}
    for i in range(len(q)):
        prod = d * c_w(p, q.rep(i))
        for dp in range(1, p.d0 + 1):
            for e in pole_locus(prod, dp):
                key = (e.real_part, dp)
                expected[key] = max(expected.get(key, 0), e.max_order)
    got = {(x, dp): o for x, dp, o in poles(eisenstein_poles(name, node))}
    assert got == expected


def test_order_bounded_by_d():
    for name, node in [("F4", 2), ("E6", 4), ("B4", 2)]:
        r = eisenstein_poles(name, node)
        assert r.n_max <= sum(d_product(parabolic_datum(name, node)).values())


def test_json_shape():
    j = eisenstein_poles("G2", 2).to_json()
    assert j["s_k"] == "1/2" and j["strip_bound"] == "3/2" and j["d0"] == 3
    assert j["poles"][0].keys() == {"real_part", "character_order", "max_order"}


def test_basic_function_numerator():
    assert basic_function_numerator("A1", 1) == LFactorProduct.factor(1, 1)
    assert basic_function_numerator("G2", 1) == LFactorProduct({(1, F(5, 2)): 1, (2, 1): 1})
    assert basic_function_numerator("C2", 2) == LFactorProduct({(1, F(3, 2)): 1, (2, 1): 1})


@pytest.mark.slow
def test_e8_node4_all_orders():
    r = eisenstein_poles("E8", 4)
    assert r.d0 == 6 and r.n_max == 21
    assert {e.character_order for e in r.poles} == {1, 2, 3, 4, 5, 6}
    assert r.invariants == {"strip": True, "lattice": False, "lattice_shifted": True}
    order6 = [(x, o) for x, d, o in poles(r) if d == 6]
    assert order6 == [(F(x), 1) for x in ("-1/2", "-1/3", "-1/6", "0", "1/6", "1/3")]
