from fractions import Fraction

import pytest

from uglov_nsr.exact import SQRT2, symbols
from uglov_nsr.fock import NS, R
from uglov_nsr.nsr import (
    NSRContext,
    alpha_rs,
    check_nsr_relations,
    delta_rs,
    g0_singular_eigenvalue,
    lambda_rs,
    sector_of,
    verify_singular_uglov,
)
from uglov_nsr.ops import ScalarOp, operators_agree, supercommutator
from uglov_nsr.symfunc import SymFunc
from uglov_nsr.uglov import uglov_beta

alpha, beta = symbols("alpha beta")
ONE = SymFunc.one()
h = Fraction(1, 2)


def test_sector_and_weights():
    assert sector_of(1, 1) == NS and sector_of(2, 1) == R
    assert alpha_rs(1, 1) == beta - 1 / beta
    assert delta_rs(1, 1) == 0
    assert lambda_rs(2, 1) == (2 * beta - 1 / beta) / (2 * SQRT2)


@pytest.mark.parametrize("sector", [NS, R])
def test_l0_vacuum(sector):
    ctx = NSRContext.create(sector)
    rho = (beta - 1 / beta) / 2
    d = h if sector == NS else Fraction(0)
    assert ctx.L(0)(ONE) == ONE.scale((alpha ** 2 - 2 * rho * alpha) / 2 + (1 - 2 * d) / 16)


def test_delta_matches_alpha_rs():
    for r, s in [(1, 1), (2, 1), (3, 1), (2, 2), (1, 4)]:
        ctx = NSRContext.for_rs(r, s)
        assert ctx.delta == delta_rs(r, s)


def _agree(x, y, D=4):
    return operators_agree(x, y, D) is None


def test_virasoro_examples():
    ctx = NSRContext.create(NS)
    assert _agree(supercommutator(ctx.L(1), ctx.L(-1)), ctx.L(0) * 2)
    assert supercommutator(ctx.L(2), ctx.L(-2))(ONE) == (ctx.L(0) * 4)(ONE) + ONE.scale(ctx.c / 2)


def test_ns_super_examples():
    ctx = NSRContext.create(NS)
    assert _agree(supercommutator(ctx.G(h), ctx.G(-h)), ctx.L(0) * 2)
    assert _agree(supercommutator(ctx.L(1), ctx.G(-h)), ctx.G(h))


def test_r_super_examples():
    ctx = NSRContext.create(R, epsilon=-1)
    G0sq = ctx.G(0) @ ctx.G(0)
    assert _agree(G0sq, ctx.L(0) - ScalarOp(ctx.c / 24))
    assert _agree(supercommutator(ctx.L(1), ctx.G(-1)), ctx.G(0) * Fraction(3, 2))


def test_g_minus_half_on_vacuum():
    ctx = NSRContext.for_rs(1, 1)
    v = ctx.G(-h)(ONE)
    # G_{-1/2}|alpha> = alpha f_{-1/2}|alpha>, with alpha_{1,1} = beta - 1/beta
    assert v == ctx.fock.f_ns(-h)(ONE).scale(beta - 1 / beta)
    assert v.proportionality_constant(ctx.fock.f_ns(-h)(ONE).scale(beta + 1 / beta)) is not None
    assert v.proportionality_constant(SymFunc({(1,): 1})) is not None


@pytest.mark.parametrize("sector", [NS, R])
def test_relations_degree_four(sector):
    rep = check_nsr_relations(sector, 4, window=2)
    assert rep["passed"], [c for c in rep["cases"] if c["status"] != "pass"][:3]


def test_relations_detect_wrong_central_charge():
    ctx = NSRContext.create(NS)
    ctx.c = ctx.c + 1
    rep = check_nsr_relations(NS, 4, window=2, ctx=ctx)
    assert not rep["passed"]


@pytest.mark.parametrize("rs", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)])
@pytest.mark.parametrize("eps", [1, -1])
def test_singular_uglov(rs, eps):
    rep = verify_singular_uglov(*rs, epsilon=eps)
    assert rep["passed"], [c for c in rep["cases"] if not c["residual_zero"]][:2]


def test_singular_report_shape():
    rep = verify_singular_uglov(2, 1)
    assert rep["sector"] == R
    case = rep["cases"][0]
    assert set(case) >= {"case", "sector", "generator", "index", "residual_zero"}
    assert rep["g0_eigenvalue"] == str(-(2 * beta + 1 / beta) / (2 * SQRT2))
    assert g0_singular_eigenvalue(2, 1, -1) == (2 * beta + 1 / beta) / (2 * SQRT2)


def test_wrong_alpha_is_not_annihilated():
    ctx = NSRContext.for_rs(1, 1)
    P = uglov_beta((1, 1))
    assert not ctx.L(1)(P).is_zero() or not ctx.G(h)(P).is_zero()


@pytest.mark.parametrize("rs,parity", [((1, 1), -1), ((2, 2), 1), ((3, 1), -1), ((1, 3), -1)])
def test_uglov_parity(rs, parity):
    ctx = NSRContext.for_rs(*rs)
    P = uglov_beta((rs[0],) * rs[1])
    assert ctx.fock.parity_operator()(P) == P.scale(parity)
