"""Truncated Laurent series in hbar with RatFunc coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import I, SYMBOLS, ZETA, RatFunc, _frac, as_ratfunc, monomial_from_exponents, symbol

__all__ = [
    "HbarSeries",
    "ExpRule",
    "TruncationError",
    "LimitError",
    "hbar_expand",
    "hbar_expand_adaptive",
    "limit_h0",
    "root_of_unity_rules",
    "INITIAL_ORDER",
    "MAX_ORDER",
]

INITIAL_ORDER = 4
MAX_ORDER = 64


class TruncationError(ArithmeticError):
    """Series is identically zero to the working order; retry with a larger one."""


class LimitError(ArithmeticError):
    """The hbar -> 0 limit does not exist."""

    def __init__(self, pole_order: int, message: str | None = None):
        self.pole_order = pole_order
        super().__init__(message or f"limit does not exist: pole of order {pole_order}")


class HbarSeries:
    """``sum_{k=valuation}^{order-1} coeffs[k-valuation] * hbar**k + O(hbar**order)``.

    Leading zero coefficients are stripped, so ``valuation`` is the true
    valuation whenever ``coeffs`` is non-empty.
    """

    __slots__ = ("coeffs", "valuation", "order")

    def __init__(self, coeffs, order=None, valuation=0):
        coeffs = [as_ratfunc(c) for c in coeffs]
        if order is None:
            order = valuation + len(coeffs)
        coeffs = coeffs[: max(order - valuation, 0)]
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            valuation += 1
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs
        self.valuation = valuation if coeffs else order
        self.order = order

    @classmethod
    def constant(cls, c, order: int) -> "HbarSeries":
        return cls([c], order=order)

    def coefficient(self, k: int) -> RatFunc:
        if k >= self.order:
            raise TruncationError(f"coefficient of hbar^{k} is beyond order {self.order}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return as_ratfunc(0)

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def truncate(self, order: int) -> "HbarSeries":
        return HbarSeries(self.coeffs, order=min(order, self.order), valuation=self.valuation)

    def _coerce(self, other):
        if isinstance(other, HbarSeries):
            return other
        try:
            return HbarSeries([as_ratfunc(other)], order=self.order)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = min(self.order, other.order)
        val = min(self.valuation, other.valuation)
        return HbarSeries(
            [self.coefficient(k) + other.coefficient(k) for k in range(val, order)], order=order, valuation=val
        )

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries([-c for c in self.coeffs], order=self.order, valuation=self.valuation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HbarSeries):
            try:
                c = as_ratfunc(other)
            except TypeError:
                return NotImplemented
            return HbarSeries([x * c for x in self.coeffs], order=self.order, valuation=self.valuation)
        val = self.valuation + other.valuation
        order = min(self.valuation + other.order, other.valuation + self.order)
        n = order - val
        out = []
        for k in range(max(n, 0)):
            acc = None
            for i in range(min(k + 1, len(self.coeffs))):
                j = k - i
                if j < len(other.coeffs):
                    term = self.coeffs[i] * other.coeffs[j]
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else as_ratfunc(0))
        return HbarSeries(out, order=order, valuation=val)

    __rmul__ = __mul__

    def inverse(self) -> "HbarSeries":
        if not self.coeffs:
            raise TruncationError("series is zero to the working order; increase truncation")
        n = self.order - self.valuation
        a0_inv = self.coeffs[0].inverse()
        out = [a0_inv]
        for k in range(1, n):
            acc = as_ratfunc(0)
            for i in range(1, min(k + 1, len(self.coeffs))):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * a0_inv)
        return HbarSeries(out, order=n - self.valuation, valuation=-self.valuation)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = HbarSeries([1], order=self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if not isinstance(other, HbarSeries):
            c = as_ratfunc(other)
            return self * c.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map(self, fn) -> "HbarSeries":
        return HbarSeries([fn(c) for c in self.coeffs], order=self.order, valuation=self.valuation)

    def subs(self, mapping) -> "HbarSeries":
        return self.map(lambda c: c.subs(mapping))

    def __repr__(self):
        terms = [f"({c})*hbar^{self.valuation + i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms + [f"O(hbar^{self.order})"])


@dataclass(frozen=True)
class ExpRule:
    """Substitution ``symbol -> const * exp(rate * hbar)``."""

    const: object
    rate: object

    def __post_init__(self):
        object.__setattr__(self, "const", as_ratfunc(self.const))
        object.__setattr__(self, "rate", as_ratfunc(self.rate))


def root_of_unity_rules(gamma=None) -> dict:
    """q = -e^hbar, t = -e^(gamma*hbar) and the matching half-power branches.

    ``qh``/``th`` stand for q^(1/2), t^(1/2) and go to ``i*e^(hbar/2)``,
    ``i*e^(gamma*hbar/2)``.
    """
    g = symbol("gamma") if gamma is None else as_ratfunc(gamma)
    return {
        "q": ExpRule(-1, 1),
        "t": ExpRule(-1, g),
        "qh": ExpRule(I, as_ratfunc(1) / 2),
        "th": ExpRule(I, g / 2),
    }


def _expand_poly(p, rules, plain, order):
    """Series of the fmpq_mpoly ``p`` under the rules, to absolute ``order``."""
    rule_idx = [(i, rules[s]) for i, s in enumerate(SYMBOLS) if s in rules]
    plain_idx = [(i, plain[s]) for i, s in enumerate(SYMBOLS) if s in plain]
    free_idx = [i for i, s in enumerate(SYMBOLS) if s not in rules and s not in plain]
    groups: dict = {}
    cpow: dict = {}
    for mon, c in p.terms():
        mon = tuple(int(e) for e in mon)
        key = tuple(mon[i] for i, _ in rule_idx)
        coeff = as_ratfunc(_frac(c))
        for (i, rule) in rule_idx:
            e = mon[i]
            if e:
                k = ("r", i, e)
                if k not in cpow:
                    cpow[k] = rule.const ** e
                coeff = coeff * cpow[k]
        for (i, val) in plain_idx:
            e = mon[i]
            if e:
                k = ("p", i, e)
                if k not in cpow:
                    cpow[k] = val ** e
                coeff = coeff * cpow[k]
        rest = [0] * len(SYMBOLS)
        for i in free_idx:
            rest[i] = mon[i]
        if any(rest):
            coeff = coeff * monomial_from_exponents(rest)
        groups[key] = groups[key] + coeff if key in groups else coeff
    out = [as_ratfunc(0)] * order
    for key, coeff in groups.items():
        if coeff.is_zero():
            continue
        rate = as_ratfunc(0)
        for e, (_, rule) in zip(key, rule_idx):
            if e:
                rate = rate + e * rule.rate
        power = as_ratfunc(1)
        for k in range(order):
            if k:
                power = power * rate
            out[k] = out[k] + coeff * power / math.factorial(k)
    return out


def hbar_expand(f, rules: dict, order: int) -> HbarSeries:
    """Expand ``f`` under ``rules`` to absolute order ``order`` in hbar.

    ``rules`` maps symbol names to :class:`ExpRule` (hbar dependent) or to
    any RatFunc-coercible value (plain substitution).  Numerator and
    denominator are expanded separately and then divided; raises
    :class:`TruncationError` if the denominator vanishes to ``order``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    f = as_ratfunc(f)
    exp_rules = {k: v for k, v in rules.items() if isinstance(v, ExpRule)}
    plain = {k: as_ratfunc(v) for k, v in rules.items() if not isinstance(v, ExpRule)}

    den = HbarSeries(_expand_poly(f.den, exp_rules, plain, order), order=order)
    if den.is_zero():
        raise TruncationError(f"denominator vanishes to order {order}; increase truncation")
    work = order + max(den.valuation, 0)
    if work != order:
        den = HbarSeries(_expand_poly(f.den, exp_rules, plain, work), order=work)
    num = [as_ratfunc(0)] * work
    for j, comp in enumerate(f.num):
        if comp.is_zero():
            continue
        part = _expand_poly(comp, exp_rules, plain, work)
        zj = ZETA ** j
        num = [a + b * zj for a, b in zip(num, part)]
    return HbarSeries(num, order=work) / den


def hbar_expand_adaptive(f, rules: dict, need_order: int = 1) -> HbarSeries:
    """Expand with doubling truncation until coefficients below ``need_order`` are known."""
    order = INITIAL_ORDER
    while True:
        try:
            s = hbar_expand(f, rules, order)
            if s.order >= need_order:
                return s
        except TruncationError:
            pass
        if order >= MAX_ORDER:
            raise TruncationError(f"could not reach hbar order {need_order} with truncation {MAX_ORDER}")
        order = min(2 * order, MAX_ORDER)


def limit_h0(s: HbarSeries) -> RatFunc:
    """The hbar -> 0 limit; raises :class:`LimitError` on a pole."""
    if s.coeffs and s.valuation < 0:
        raise LimitError(-s.valuation)
    return s.coefficient(0)
