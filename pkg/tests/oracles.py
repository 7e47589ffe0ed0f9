"""Independent sympy oracles shared by the tests."""
import sympy as sp

from uglov_nsr.exact import SYMBOLS

Z = sp.Symbol("z8")
S = {name: sp.Symbol(name) for name in SYMBOLS}


def to_sympy(r):
    return sp.sympify(str(r).replace("^", "**"), locals={**S, "z8": Z})


def _reduce(expr):
    expr = sp.sympify(expr).subs({sp.sqrt(2): Z - Z ** 3}).subs(sp.I, Z ** 2)
    num = sp.numer(sp.together(expr))
    return sp.rem(sp.expand(num), Z ** 4 + 1, Z)


def same(r, expr) -> bool:
    """RatFunc ``r`` equals the sympy expression (in which I, sqrt(2) are allowed)."""
    return sp.expand(_reduce(to_sympy(r) - sp.sympify(expr))) == 0


def power_sum(k, xs):
    return sum(x ** k for x in xs)


def p_poly(mu, xs):
    out = sp.Integer(1)
    for k in mu:
        out *= power_sum(k, xs)
    return sp.expand(out)


def hbar_series(expr, order, gamma=None):
    """Series in h of expr(q=-e^h, t=-e^(gamma h)) up to h^(order-1)."""
    h = sp.Symbol("h")
    g = S["gamma"] if gamma is None else gamma
    sub = sp.sympify(expr).subs({S["q"]: -sp.exp(h), S["t"]: -sp.exp(g * h)})
    ser = sp.series(sub, h, 0, order).removeO()
    return [sp.simplify(ser.coeff(h, k)) for k in range(order)]
