from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from uglov_nsr.exact import as_ratfunc, symbols
from uglov_nsr.symfunc import (
    MAX_DEGREE,
    CapacityError,
    Dominance,
    SymFunc,
    basis_change,
    dominance_compare,
    macdonald_inner,
    monomial,
    parse_partition,
    partition_count,
    partitions_of,
    power_sum,
    z_coefficient,
)
from oracles import p_poly

q, t = symbols("q t")


def test_partitions_small():
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert list(partitions_of(0)) == [()]
    assert partition_count(10) == 42


def test_partition_counts_match_sympy():
    from sympy.functions.combinatorial.numbers import partition

    for n in range(16):
        assert partition_count(n) == partition(n)


def test_capacity():
    with pytest.raises(CapacityError):
        partitions_of(MAX_DEGREE + 1)


def test_parse_partition():
    assert parse_partition("2,1") == (2, 1)
    assert parse_partition("()") == ()
    with pytest.raises(ValueError):
        parse_partition("1,2")
    with pytest.raises(ValueError):
        parse_partition("a")


def test_dominance_examples():
    assert dominance_compare((2, 1), (1, 1, 1)) is Dominance.GREATER
    assert dominance_compare((3, 3), (4, 1, 1)) is Dominance.INCOMPARABLE
    assert dominance_compare((2,), (1, 1, 1)) is Dominance.DIFFERENT_WEIGHT
    assert dominance_compare((1, 1, 1), (2, 1)) is Dominance.LESS


def test_dominance_is_partial_order():
    for n in range(1, 9):
        ps = partitions_of(n)
        ge = {(a, b) for a in ps for b in ps if dominance_compare(a, b) in (Dominance.GREATER, Dominance.EQUAL)}
        for a, b in ge:
            if (b, a) in ge:
                assert a == b
        for a, b in ge:
            for c in ps:
                if (b, c) in ge:
                    assert (a, c) in ge


def test_z_coefficient():
    assert z_coefficient((2, 1, 1)) == 2 * 2
    assert z_coefficient((3, 3)) == 9 * 2


def _sympy_p_to_m(mu):
    d = sum(mu)
    xs = sp.symbols(f"x1:{d + 1}")
    poly = sp.Poly(p_poly(mu, xs), *xs)
    out = {}
    for nu in partitions_of(d):
        exps = tuple(nu) + (0,) * (d - len(nu))
        c = poly.coeff_monomial(exps)
        if c:
            out[nu] = Fraction(int(c.p), int(c.q))
    return out


def test_p_to_m_matches_variable_expansion():
    for d in range(1, 6):
        for mu in partitions_of(d):
            ours = basis_change(SymFunc({mu: 1}), "p", "m")
            assert {k: v.to_fraction() for k, v in ours.terms.items()} == _sympy_p_to_m(mu)


def test_monomial_examples():
    assert monomial((1, 1)) == SymFunc({(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})
    assert basis_change(power_sum(2), "p", "m") == SymFunc({(2,): 1})
    assert basis_change(power_sum(1), "p", "m") == SymFunc({(1,): 1})


def test_round_trip_identity():
    for d in range(0, 9):
        for mu in partitions_of(d):
            f = SymFunc({mu: 1})
            assert basis_change(basis_change(f, "p", "m"), "m", "p") == f


def test_dimensions():
    for d in range(8):
        from uglov_nsr.symfunc import m_to_p_matrix, p_to_m_matrix

        assert len(p_to_m_matrix(d)) == len(m_to_p_matrix(d)) == partition_count(d)


def test_inner_product_examples():
    assert macdonald_inner(power_sum(2), power_sum(2)) == 2 * (1 - q ** 2) / (1 - t ** 2)
    assert macdonald_inner(power_sum(1, 1), power_sum(2)) == 0
    assert macdonald_inner(power_sum(1, 1), power_sum(1, 1)) == 2 * (1 - q) ** 2 / (1 - t) ** 2


coeffs = st.integers(-3, 3)


@st.composite
def symfuncs(draw, d=3):
    return SymFunc({mu: draw(coeffs) * (1 + draw(coeffs) * q) for mu in partitions_of(d)})


@given(symfuncs(), symfuncs(), symfuncs(), coeffs)
def test_inner_product_bilinear_symmetric(f, g, h, c):
    assert macdonald_inner(f, g) == macdonald_inner(g, f)
    assert macdonald_inner(f + h.scale(c), g) == macdonald_inner(f, g) + c * macdonald_inner(h, g)


def test_inner_product_diagonal_nonzero():
    for mu in partitions_of(5):
        assert not macdonald_inner(power_sum(*mu), power_sum(*mu)).is_zero()


@given(symfuncs(), symfuncs())
def test_ring_operations(f, g):
    assert f * g == g * f
    assert (f + g) - g == f
    assert (f * g).degrees() <= {6}


def test_json_round_trip():
    f = SymFunc({(2, 1): q / t, (3,): as_ratfunc(5)})
    assert SymFunc.from_json(f.to_json()) == f
    assert {"partition": [3], "coeff": "5"} in f.to_json()


def test_homogeneous_and_proportionality():
    f = SymFunc({(2,): q, (1,): 1})
    assert f.homogeneous(2) == SymFunc({(2,): q})
    g = SymFunc({(2,): 3 * q, (1, 1): q})
    assert g.proportionality_constant(SymFunc({(2,): 3, (1, 1): 1})) == q
    assert g.proportionality_constant(SymFunc({(2,): 1, (1, 1): 1})) is None
