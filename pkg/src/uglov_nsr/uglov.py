"""Uglov symmetric functions: the q = -e^hbar, t = -e^(gamma*hbar) limit of P_mu."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import RatFunc, as_ratfunc, symbol
from .macdonald import macdonald
from .series import LimitError, hbar_expand_adaptive, limit_h0, root_of_unity_rules
from .symfunc import SymFunc, basis_change

__all__ = ["UglovPoly", "UglovPoleError", "uglov", "uglov_at", "uglov_beta"]


class UglovPoleError(ZeroDivisionError):
    def __init__(self, nu, coeff, gamma):
        self.partition, self.coeff, self.gamma = nu, coeff, gamma
        super().__init__(f"coefficient of m_{list(nu)} = {coeff} has a pole at gamma = {gamma}")


@dataclass
class UglovPoly:
    mu: tuple
    gamma: object  # "gamma" (symbolic) or a Fraction
    expansion: SymFunc
    m_expansion: dict = field(repr=False)
    first_order: dict = field(repr=False, default_factory=dict)

    @property
    def first_order_zero(self) -> bool:
        return all(c.is_zero() for c in self.first_order.values())

    def to_json(self) -> dict:
        return {
            "partition": list(self.mu),
            "gamma": str(self.gamma),
            "terms": self.expansion.to_json(),
            "first_order_zero": self.first_order_zero,
        }


_cache: dict = {}


def uglov(mu, gamma=None) -> UglovPoly:
    """P^(gamma,2)_mu, with gamma symbolic unless a rational value is given.

    Every monomial-basis coefficient of P_mu(q,t) is expanded in hbar; the
    order-0 term is the limit and the order-1 term is kept for checking.
    """
    mu = tuple(mu)
    key = (mu, None if gamma is None else Fraction(gamma))
    if key in _cache:
        return _cache[key]
    rules = root_of_unity_rules(None if gamma is None else Fraction(gamma))
    P = macdonald(mu)
    limit, first = {}, {}
    for nu, c in P.m_expansion.items():
        s = hbar_expand_adaptive(c, rules, need_order=2)
        try:
            limit[nu] = limit_h0(s)
        except LimitError as exc:
            raise LimitError(exc.pole_order, f"coefficient of m_{list(nu)} in P_{list(mu)}: {exc}") from None
        first[nu] = s.coefficient(1)
    m_exp = {nu: c for nu, c in limit.items() if not c.is_zero()}
    out = UglovPoly(
        mu,
        "gamma" if gamma is None else Fraction(gamma),
        basis_change(SymFunc(m_exp), "m", "p"),
        m_exp,
        first,
    )
    _cache[key] = out
    return out


def uglov_at(mu, gamma) -> UglovPoly:
    """Specialize the symbolic result at a rational gamma."""
    gamma = Fraction(gamma)
    sym = uglov(mu)
    m_exp = {}
    for nu, c in sym.m_expansion.items():
        try:
            m_exp[nu] = c.subs({"gamma": gamma})
        except ZeroDivisionError:
            raise UglovPoleError(nu, c, gamma) from None
    m_exp = {nu: c for nu, c in m_exp.items() if not c.is_zero()}
    first = {}
    for nu, c in sym.first_order.items():
        try:
            first[nu] = c.subs({"gamma": gamma})
        except ZeroDivisionError:
            raise UglovPoleError(nu, c, gamma) from None
    return UglovPoly(mu, gamma, basis_change(SymFunc(m_exp), "m", "p"), m_exp, first)


def uglov_beta(mu) -> SymFunc:
    """p-basis expansion of P^(1/beta^2, 2)_mu with coefficients in beta."""
    beta = symbol("beta")
    return uglov(mu).expansion.subs({"gamma": beta ** -2})
