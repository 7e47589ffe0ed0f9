import math
from fractions import Fraction

import pytest

from hypothesis import given, strategies as st

from uglov_nsr.exact import as_ratfunc, symbols
from uglov_nsr.series import (
    ExpRule,
    HbarSeries,
    LimitError,
    TruncationError,
    hbar_expand,
    hbar_expand_adaptive,
    limit_h0,
    root_of_unity_rules,
)
from oracles import S, hbar_series, same

q, t, gamma = symbols("q t gamma")
RULES = root_of_unity_rules()


def test_q_alone():
    s = hbar_expand(q, {"q": ExpRule(-1, 1)}, 3)
    assert [s.coefficient(k) for k in range(3)] == [-1, -1, Fraction(-1, 2)]


def test_ratio_matches_taylor():
    # the hand expansion of (1 - e^h)/(1 - e^(gamma h)) is 1/gamma + h (1-gamma)/(2 gamma)
    s = hbar_expand_adaptive((1 + q) / (1 + t), RULES, need_order=2)
    oracle = hbar_series((1 + S["q"]) / (1 + S["t"]), 2)
    assert same(s.coefficient(0), oracle[0])
    assert same(s.coefficient(1), oracle[1])
    assert s.coefficient(1) == (1 - gamma) / (2 * gamma)


def test_pole_detected():
    s = hbar_expand_adaptive(2 / (1 - q * t), RULES, need_order=1)
    assert s.valuation == -1
    assert s.coefficient(-1) == -2 / (1 + gamma)
    with pytest.raises(LimitError) as err:
        limit_h0(s)
    assert err.value.pole_order == 1


def test_limit_of_macdonald_coefficient():
    s = hbar_expand_adaptive((1 + q) * (1 - t) / (1 - q * t), RULES, need_order=1)
    assert limit_h0(s) == 2 / (1 + gamma)


def test_truncation_error_on_vanishing_denominator():
    with pytest.raises(TruncationError):
        hbar_expand(1 / ((1 + q) ** 3), RULES, 2)
    assert hbar_expand_adaptive(1 / ((1 + q) ** 3), RULES).valuation == -3


def test_limit_of_constant_series():
    assert limit_h0(HbarSeries([1 / gamma, 5], order=2)) == 1 / gamma


exprs = st.sampled_from(
    [
        (1 + q) / (1 + t),
        (1 - q * t) / (1 + q),
        q ** 2 * t,
        (1 - t ** 2) / (1 - q ** 2),
        (q + t) / (2 + q - t),
        as_ratfunc(3),
    ]
)


@given(exprs, exprs)
def test_expansion_is_multiplicative(f, g):
    N = 3
    lhs = hbar_expand_adaptive(f * g, RULES, need_order=N).truncate(N)
    rhs = (hbar_expand_adaptive(f, RULES, need_order=N) * hbar_expand_adaptive(g, RULES, need_order=N)).truncate(N)
    for k in range(min(lhs.valuation, rhs.valuation), N):
        assert lhs.coefficient(k) == rhs.coefficient(k)


@given(st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=9))
def test_numeric_sanity(g):
    f = (1 + q) * (1 - t) / (1 - q * t)
    lim = limit_h0(hbar_expand_adaptive(f, root_of_unity_rules(g), need_order=1)).to_fraction()
    h = 1e-6
    val = f.evaluate({"q": -math.exp(h), "t": -math.exp(float(g) * h)}).real
    assert abs(val - float(lim)) < 1e-3 * abs(float(lim))


def test_series_arithmetic():
    a = HbarSeries([1, 2], order=3)
    b = a.inverse()
    c = (a * b).truncate(3)
    assert c.coefficient(0) == 1 and c.coefficient(1) == 0
    assert (a ** 2).coefficient(1) == 4
    assert (a ** -1).coefficient(1) == -2
    with pytest.raises(TruncationError):
        a.coefficient(3)


def test_half_power_rules():
    qh, th = symbols("qh th")
    s = hbar_expand(qh ** 2, RULES, 2)
    assert s.coefficient(0) == -1 and s.coefficient(1) == -1
    s = hbar_expand(th ** 2, RULES, 2)
    assert s.coefficient(0) == -1 and s.coefficient(1) == -gamma

