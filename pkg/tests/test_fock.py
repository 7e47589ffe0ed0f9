from fractions import Fraction

import pytest

from uglov_nsr.exact import I, SQRT2, as_ratfunc, symbols
from uglov_nsr.fock import (
    NS,
    R,
    Fock,
    FockParams,
    character_check,
    check_ccr,
    fock_character,
    partition_numbers,
    sector_indices,
)
from uglov_nsr.ops import ScalarOp, operators_agree, supercommutator
from uglov_nsr.symfunc import SymFunc, partitions_of

alpha, beta = symbols("alpha beta")
ONE = SymFunc.one()


@pytest.fixture(params=[1, -1], ids=["eps+", "eps-"])
def fock(request):
    return Fock(FockParams(NS, epsilon=request.param))


def test_boson_examples():
    fk = Fock()
    assert fk.a(-1)(ONE) == SymFunc({(2,): -1 / (2 * beta)})
    assert fk.a(1)(fk.a(-1)(ONE)) == ONE
    assert fk.a(0)(SymFunc({(2,): 1})) == SymFunc({(2,): alpha})
    assert fk.a(2)(SymFunc({(4, 4): 1})) == SymFunc({(4,): -8 * beta})


def test_fermion_vacuum_values(fock):
    eps = fock.params.epsilon
    assert fock.f_r(0)(ONE) == SymFunc({(): eps / SQRT2})
    assert fock.f_ns(Fraction(-1, 2))(ONE) == SymFunc({(1,): -I / SQRT2})
    v = fock.f_ns(Fraction(1, 2))(fock.f_ns(Fraction(-1, 2))(ONE))
    assert v == ONE


def test_index_validation():
    fk = Fock()
    with pytest.raises(ValueError):
        fk.f_ns(1)
    with pytest.raises(ValueError):
        fk.f_r(Fraction(1, 2))
    with pytest.raises(ValueError):
        FockParams("X")


def test_small_relations():
    fk = Fock(FockParams(R))
    assert supercommutator(fk.f_r(0), fk.f_r(0))(ONE) == ONE
    zero = ScalarOp(as_ratfunc(0))
    assert operators_agree(supercommutator(fk.a(1), fk.f_ns(Fraction(-1, 2))), zero, 3) is None


@pytest.mark.parametrize("sector", [NS, R])
def test_ccr_degree_four(sector, fock):
    rep = check_ccr(4, FockParams(sector, epsilon=fock.params.epsilon))
    assert rep["passed"], [c for c in rep["cases"] if c["status"] != "pass"][:3]
    assert rep["mixed"]["anticommute"] is True


def test_parity_operator_squares_to_one(fock):
    P = fock.parity_operator()
    for d in range(7):
        for mu in partitions_of(d):
            v = SymFunc({mu: 1})
            assert P(P(v)) == v


def test_parity_flips_under_fermions(fock):
    P = fock.parity_operator()
    v = fock.f_ns(Fraction(-1, 2))(ONE)
    assert P(v) == v.scale(-1)
    assert P(ONE) == ONE


def test_degree_shifts(fock):
    ops = [fock.a(-2), fock.a(1), fock.f_ns(Fraction(3, 2)), fock.f_r(-1), fock.f_r(2)]
    for op in ops:
        for d in range(6):
            for mu in partitions_of(d):
                assert op.on_monomial(mu).degrees() <= {d + op.degree_shift}


def test_sector_indices():
    assert sector_indices(NS, -1, 1) == [Fraction(-1, 2), Fraction(1, 2)]
    assert sector_indices(R, -1, 1) == [-1, 0, 1]


def test_characters():
    assert fock_character(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partition_numbers(10) == fock_character(10)
    rep = character_check(20)
    assert rep["passed"] and rep["fock"][20] == 627
    with pytest.raises(ValueError):
        character_check(21)
