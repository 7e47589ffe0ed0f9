import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from uglov_nsr.exact import as_ratfunc, symbols
from uglov_nsr.fock import Fock
from uglov_nsr.linalg import nullspace, rank, row_reduce
from uglov_nsr.ops import ODD, ScalarOp, VertexOperator, operators_agree, supercommutator
from uglov_nsr.symfunc import SymFunc

beta, q = symbols("beta q")
ints = st.integers(-4, 4)


@settings(max_examples=80)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_and_nullspace_match_sympy(m, n, data):
    rows = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    assert rank(rows, n) == sp.Matrix(rows).rank()
    basis = nullspace(rows, n)
    assert len(basis) == n - sp.Matrix(rows).rank()
    for v in basis:
        for r in rows:
            assert sum((as_ratfunc(a) * x for a, x in zip(r, v)), as_ratfunc(0)).is_zero()


def test_row_reduce_symbolic():
    rows = [[beta, 1], [beta ** 2, beta]]
    red, piv = row_reduce(rows, 2)
    assert piv == [0] and red[0] == [as_ratfunc(1), 1 / beta]
    assert nullspace(rows, 2) == [[-1 / beta, as_ratfunc(1)]]


def test_composition_and_sums():
    fk = Fock()
    a1, am1 = fk.a(1), fk.a(-1)
    prod = a1 @ am1
    assert prod.degree_shift == 0
    assert operators_agree(supercommutator(a1, am1), ScalarOp(as_ratfunc(1)), 4) is None
    w = operators_agree(a1 @ am1, am1 @ a1, 2)
    assert w is not None and w[0] == ()
    with pytest.raises(ValueError):
        a1 + am1
    f = fk.f_ns(-0.5)
    assert f.parity == ODD and (f @ f).parity == 0


def test_operator_algebra_linear():
    fk = Fock()
    op = fk.a(-1) * 3 - fk.a(-1)
    v = SymFunc({(1,): q})
    assert op(v) == fk.a(-1)(v).scale(2)


def test_vertex_operator_modes():
    # exp(p_1 z) exp(d/dp_1 / z) p_1 = exp(p_1 z)(p_1 + 1/z); the z^0 part is 2 p_1
    V = VertexOperator(as_ratfunc(1), lambda n: 1 if n == 1 else 0, lambda n: 1 if n == 1 else 0)
    assert V.mode(0)(SymFunc({(1,): 1})) == SymFunc({(1,): 2})
    assert V.mode(1)(SymFunc.one()) == SymFunc({(1,): 1})
    assert V.mode(-1)(SymFunc({(1,): 1})) == SymFunc.one()
    assert V.creation_part(2) == {(1, 1): as_ratfunc(1) / 2}
