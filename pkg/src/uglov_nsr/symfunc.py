"""Partitions and the ring of symmetric functions in the power-sum basis.

A partition is a plain tuple of weakly decreasing positive ints.  A
:class:`SymFunc` is a finite combination of power-sum monomials
``p_mu = p_{mu_1} p_{mu_2} ...`` keyed by partition.  The monomial basis is
reached through per-degree transition matrices.
"""
from __future__ import annotations

import functools
import math
from collections import Counter
from enum import Enum
from fractions import Fraction

from .exact import RatFunc, as_ratfunc, parse_ratfunc, symbol

__all__ = [
    "MAX_DEGREE",
    "CapacityError",
    "Dominance",
    "partitions_of",
    "partition_count",
    "parse_partition",
    "dominance_compare",
    "z_coefficient",
    "SymFunc",
    "p_to_m_matrix",
    "m_to_p_matrix",
    "basis_change",
    "monomial",
    "power_sum",
    "macdonald_inner",
]

MAX_DEGREE = 24


class CapacityError(ValueError):
    """Requested degree exceeds the configured maximum."""


class Dominance(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"
    DIFFERENT_WEIGHT = "different_weight"


def _check_degree(n: int) -> None:
    if n > MAX_DEGREE:
        raise CapacityError(f"degree {n} exceeds the maximum {MAX_DEGREE}")


@functools.lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of ``n`` in reverse-lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_degree(n)

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in gen(n - k, k):
                yield (k,) + rest

    return tuple(gen(n, n))


def partition_count(n: int) -> int:
    return len(partitions_of(n))


def parse_partition(text: str) -> tuple:
    """Parse ``"2,1"`` (or ``"2 1"``, ``"()"``) into a partition tuple."""
    cleaned = text.strip().strip("()[]").replace(" ", ",")
    if not cleaned:
        return ()
    try:
        parts = tuple(int(x) for x in cleaned.split(",") if x)
    except ValueError as exc:
        raise ValueError(f"bad partition syntax: {text!r}") from exc
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"not a partition (need weakly decreasing positive parts): {text!r}")
    return parts


def dominance_compare(mu, nu) -> Dominance:
    if sum(mu) != sum(nu):
        return Dominance.DIFFERENT_WEIGHT
    if tuple(mu) == tuple(nu):
        return Dominance.EQUAL
    ge = le = True
    a = b = 0
    for i in range(max(len(mu), len(nu))):
        a += mu[i] if i < len(mu) else 0
        b += nu[i] if i < len(nu) else 0
        if a < b:
            ge = False
        if a > b:
            le = False
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def z_coefficient(mu) -> int:
    """z_mu = prod_i i^{m_i} m_i!."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part ** mult * math.factorial(mult)
    return out


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def _merge(mu, nu):
    return tuple(sorted(mu + nu, reverse=True))


class SymFunc:
    """Finite linear combination of power-sum monomials.

    Coefficients are RatFunc by default but any ring element supporting
    ``+``, ``*`` and ``is_zero()`` works (e.g. :class:`~uglov_nsr.series.HbarSeries`).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mu, c in dict(terms).items():
                if isinstance(c, (int, Fraction)):
                    c = as_ratfunc(c)
                if not _is_zero(c):
                    self.terms[tuple(mu)] = c

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def one(cls) -> "SymFunc":
        return cls({(): 1})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {sum(mu) for mu in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous element (raises otherwise)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def homogeneous(self, d: int) -> "SymFunc":
        return SymFunc._raw({mu: c for mu, c in self.terms.items() if sum(mu) == d})

    def coefficient(self, mu):
        return self.terms.get(tuple(mu), as_ratfunc(0))

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True))

    def __len__(self):
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, int) and other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for mu, c in other.terms.items():
            if mu in out:
                s = out[mu] + c
                if _is_zero(s):
                    del out[mu]
                else:
                    out[mu] = s
            else:
                out[mu] = c
        return SymFunc._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        if _is_zero(c):
            return SymFunc._raw({})
        out = {}
        for mu, a in self.terms.items():
            v = a * c
            if not _is_zero(v):
                out[mu] = v
        return SymFunc._raw(out)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            out: dict = {}
            for mu, a in self.terms.items():
                for nu, b in other.terms.items():
                    key = _merge(mu, nu)
                    v = a * b
                    out[key] = out[key] + v if key in out else v
            return SymFunc({k: v for k, v in out.items()})
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(as_ratfunc(1) / c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_coefficients(self, fn) -> "SymFunc":
        return SymFunc({mu: fn(c) for mu, c in self.terms.items()})

    def subs(self, mapping) -> "SymFunc":
        return self.map_coefficients(lambda c: c.subs(mapping))

    # -- comparison helpers ------------------------------------------------

    def proportionality_constant(self, other: "SymFunc"):
        """``c`` with ``self == c * other``, or None when not proportional."""
        if other.is_zero():
            return None if not self.is_zero() else as_ratfunc(0)
        mu = max(other.terms, key=lambda k: (sum(k), k))
        c = self.coefficient(mu) / other.terms[mu]
        if self == other.scale(c):
            return c
        return None

    # -- printing / json ---------------------------------------------------

    def to_json(self) -> list:
        return [{"partition": list(mu), "coeff": str(c)} for mu, c in self]

    @classmethod
    def from_json(cls, data) -> "SymFunc":
        return cls({tuple(d["partition"]): parse_ratfunc(d["coeff"]) for d in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu, c in self:
            name = "*".join(f"p{k}" for k in mu) or "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymFunc({self})"


def power_sum(*parts) -> SymFunc:
    return SymFunc({tuple(sorted(parts, reverse=True)): 1})


# ---------------------------------------------------------------------------
# monomial basis
# ---------------------------------------------------------------------------


def _p_in_monomial_coefficient(lam, mu) -> int:
    """Coefficient of x^mu in p_lam(x_1..x_N), N = len(mu).

    Counts the ways to distribute the parts of ``lam`` over the variables
    so that variable i receives total exponent mu_i.
    """

    @functools.lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(lam):
            return 1 if not any(remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= lam[i]:
                nxt = remaining[:j] + (r - lam[i],) + remaining[j + 1:]
                total += count(i + 1, nxt)
        return total

    return count(0, tuple(mu))


@functools.lru_cache(maxsize=None)
def p_to_m_matrix(d: int) -> dict:
    """``{lam: {mu: c}}`` with p_lam = sum_mu c m_mu, computed in N = d variables."""
    _check_degree(d)
    parts = partitions_of(d)
    out = {}
    for lam in parts:
        row = {}
        for mu in parts:
            c = _p_in_monomial_coefficient(lam, mu)
            if c:
                row[mu] = Fraction(c)
        out[lam] = row
    return out


@functools.lru_cache(maxsize=None)
def m_to_p_matrix(d: int) -> dict:
    """``{mu: {lam: c}}`` with m_mu = sum_lam c p_lam (inverse of :func:`p_to_m_matrix`)."""
    forward = p_to_m_matrix(d)
    parts = partitions_of(d)
    # forward is triangular: p_lam involves only m_mu with mu >= lam in
    # dominance, hence mu >= lam lexicographically; solve from the top.
    out: dict = {}
    for mu in parts:
        # m_mu = (p_mu - sum_{nu > mu} c_{mu,nu} m_nu) / c_{mu,mu}
        row = forward[mu]
        diag = row[mu]
        acc = {mu: Fraction(1)}
        for nu, c in row.items():
            if nu == mu:
                continue
            for lam, e in out[nu].items():
                acc[lam] = acc.get(lam, Fraction(0)) - c * e
        out[mu] = {lam: v / diag for lam, v in acc.items() if v}
    return out


def monomial(mu) -> SymFunc:
    """m_mu expanded in power sums."""
    mu = tuple(mu)
    d = sum(mu)
    return SymFunc({lam: c for lam, c in m_to_p_matrix(d)[mu].items()})


def basis_change(f: SymFunc, source: str, target: str) -> SymFunc:
    """Convert coefficient dictionaries between the ``"p"`` and ``"m"`` bases.

    A SymFunc always means a p-combination internally; when ``source`` is
    ``"m"`` its keys are read as monomial labels, and a ``"m"`` target
    returns a SymFunc whose keys are monomial labels.
    """
    if source not in ("p", "m") or target not in ("p", "m"):
        raise ValueError("bases must be 'p' or 'm'")
    if source == target:
        return f
    for d in f.degrees():
        _check_degree(d)
    table = p_to_m_matrix if source == "p" else m_to_p_matrix
    out: dict = {}
    for mu, c in f.terms.items():
        for nu, e in table(sum(mu))[mu].items():
            v = c * e
            out[nu] = out[nu] + v if nu in out else v
    return SymFunc(out)


# ---------------------------------------------------------------------------
# Macdonald scalar product
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _inner_weight(lam) -> RatFunc:
    q, t = symbol("q"), symbol("t")
    w = as_ratfunc(z_coefficient(lam))
    for part in lam:
        w = w * (1 - q ** part) / (1 - t ** part)
    return w


def macdonald_inner(f: SymFunc, g: SymFunc) -> RatFunc:
    """<p_lam, p_mu> = delta z_lam prod (1 - q^lam_i) / (1 - t^lam_i), extended bilinearly."""
    total = as_ratfunc(0)
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    for lam, a in small.terms.items():
        b = big.terms.get(lam)
        if b is not None:
            total = total + a * b * _inner_weight(lam)
    return total
