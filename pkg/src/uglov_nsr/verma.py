"""Verma modules of the NSR algebra, singular vectors and their bosonization.

A PBW word is a tuple of generators ``("L", n)`` / ``("G", k)`` with
negative indices, read left to right and acting on the highest-weight
vector.  Canonical order: all L's before all G's, L indices decreasing
(L_{-1} L_{-2}), G indices strictly decreasing (G_{-1/2} G_{-3/2}).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import RatFunc, as_ratfunc, symbol
from .fock import NS, R, sector_indices
from .linalg import nullspace
from .nsr import NSRContext, delta_rs, g0_singular_eigenvalue, lambda_rs, sector_of
from .symfunc import SymFunc, partitions_of
from .uglov import uglov_beta

__all__ = [
    "HighestWeight",
    "VermaModule",
    "VermaVector",
    "StructuralError",
    "UnsupportedCase",
    "pbw_basis",
    "singular_vector",
    "bosonize",
    "compare_uglov",
    "even_odd_singular",
    "format_word",
    "annihilation_report",
    "g0_check",
    "highest_weight_rs",
    "SingularPair",
    "level_of",
]


class StructuralError(ArithmeticError):
    """The singular-vector kernel does not have dimension one."""


class UnsupportedCase(ValueError):
    pass


def _gen(kind, index):
    return (kind, Fraction(index))


def format_word(word) -> str:
    if not word:
        return "1"
    return " ".join(f"{k}_{{{i}}}" for k, i in word)


def _key(g):
    kind, i = g
    return (0 if kind == "L" else 1, -i)


@dataclass(frozen=True)
class HighestWeight:
    sector: str
    c: RatFunc
    delta: RatFunc
    lam: RatFunc | None = None  # G_0 eigenvalue (R sector only)


class VermaVector:
    """Finite combination of PBW words on a highest-weight vector."""

    __slots__ = ("module", "terms")

    def __init__(self, module: "VermaModule", terms=None):
        self.module = module
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return VermaVector(self.module, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = as_ratfunc(c)
        return VermaVector(self.module, {w: x * c for w, x in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, VermaVector) and (self - other).is_zero()

    __hash__ = None

    def coefficient(self, word):
        return self.terms.get(tuple(word), as_ratfunc(0))

    def levels(self) -> set:
        return {-sum((i for _, i in w), Fraction(0)) for w in self.terms}

    def words(self):
        return sorted(self.terms, key=self.module.word_order)

    def sigma(self) -> "VermaVector":
        """The automorphism G -> -G applied to the operator part."""
        return VermaVector(
            self.module, {w: (-c if sum(1 for k, _ in w if k == "G") % 2 else c) for w, c in self.terms.items()}
        )

    def to_json(self) -> list:
        out = []
        for w in self.words():
            out.append(
                {
                    "word": {"L": [str(-i) for k, i in w if k == "L"], "G": [str(-i) for k, i in w if k == "G"]},
                    "coeff": str(self.terms[w]),
                }
            )
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[w]}) {format_word(w)}|hw>" for w in self.words())

    __repr__ = __str__


class VermaModule:
    """Rewriting engine for M(c, Delta) (NS) or M(c, lambda) (R)."""

    def __init__(self, hw: HighestWeight):
        if hw.sector == R and not (hw.lam * hw.lam + hw.c / 24 - hw.delta).is_zero():
            raise ValueError("Ramond highest weight needs lambda^2 = Delta - c/24")
        self.hw = hw
        self._memo: dict = {}

    @property
    def sector(self):
        return self.hw.sector

    @staticmethod
    def word_order(word):
        """Sort key: larger L-level first, then more L factors, then the word itself."""
        lvl = -sum((i for k, i in word if k == "L"), Fraction(0))
        nL = sum(1 for k, _ in word if k == "L")
        return (-lvl, -nL, [_key(g) for g in word])

    def vector(self, terms=None) -> VermaVector:
        return VermaVector(self, terms)

    def highest_weight_vector(self) -> VermaVector:
        return VermaVector(self, {(): as_ratfunc(1)})

    def word(self, *gens) -> VermaVector:
        """Canonicalize an arbitrary product of generators applied to |hw>."""
        v = self.highest_weight_vector()
        for g in reversed(gens):
            v = self.apply(_gen(*g), v)
        return v

    # -- commutators --------------------------------------------------------

    def _bracket(self, x, y):
        """[x, y} as a list of (coeff, generator or None for the identity)."""
        (kx, m), (ky, n) = x, y
        c = self.hw.c
        out = []
        if kx == "L" and ky == "L":
            if m != n:
                out.append((as_ratfunc(m - n), ("L", m + n)))
            if m + n == 0:
                out.append((c * ((m ** 3 - m) / 12), None))
        elif kx == "L" and ky == "G":
            coeff = m / 2 - n
            if coeff:
                out.append((as_ratfunc(coeff), ("G", m + n)))
        elif kx == "G" and ky == "L":
            coeff = -(n / 2 - m)
            if coeff:
                out.append((as_ratfunc(coeff), ("G", m + n)))
        else:
            out.append((as_ratfunc(2), ("L", m + n)))
            if m + n == 0:
                out.append((c * (m ** 2 - Fraction(1, 4)) / 3, None))
        return out

    def _on_hw(self, g) -> dict:
        kind, i = g
        if i > 0:
            return {}
        if i == 0:
            if kind == "L":
                return {(): self.hw.delta}
            if self.sector == NS:
                raise ValueError("G_0 does not exist in the NS sector")
            return {(): self.hw.lam}
        return {(g,): as_ratfunc(1)}

    def _apply_word(self, g, word) -> dict:
        key = (g, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not word:
            out = self._on_hw(g)
        else:
            y, rest = word[0], word[1:]
            kind, i = g
            if i < 0 and (_key(g) < _key(y) or (g == y and kind == "L")):
                out = {(g,) + word: as_ratfunc(1)}
            elif g == y:  # G_k G_k = L_{2k} for k < 0
                out = self._apply_word(("L", 2 * i), rest)
            else:
                sign = -1 if (kind == "G" and y[0] == "G") else 1
                out = {}
                inner = self._apply_word(g, rest)
                for w, c in inner.items():
                    for w2, c2 in self._apply_word(y, w).items():
                        _acc(out, w2, c * c2 * sign)
                for coeff, z in self._bracket(g, y):
                    if z is None:
                        _acc(out, rest, coeff)
                    else:
                        for w2, c2 in self._apply_word(z, rest).items():
                            _acc(out, w2, coeff * c2)
                out = {w: c for w, c in out.items() if not c.is_zero()}
        self._memo[key] = out
        return out

    def apply(self, g, v: VermaVector) -> VermaVector:
        """Act with one generator (any index) on ``v``."""
        g = _gen(*g)
        out: dict = {}
        for w, c in v.terms.items():
            for w2, c2 in self._apply_word(g, w).items():
                _acc(out, w2, c * c2)
        return VermaVector(self, out)

    def apply_word(self, word, v: VermaVector) -> VermaVector:
        for g in reversed(word):
            v = self.apply(g, v)
        return v


def _acc(d, k, v):
    if k in d:
        d[k] = d[k] + v
    else:
        d[k] = v


def _distinct_subsets(parts: list, bound: Fraction):
    """Subsets of the distinct ``parts`` with sum at most ``bound``."""
    for r in range(len(parts) + 1):
        for combo in combinations(parts, r):
            if sum(combo, Fraction(0)) <= bound:
                yield combo


def pbw_basis(sector: str, level) -> list:
    """Canonical PBW words of the given level (R: G_{-k} with k >= 1)."""
    level = Fraction(level)
    g_parts = [k for k in sector_indices(sector, Fraction(1, 2), level) if k > 0]
    words = []
    for combo in _distinct_subsets(g_parts, level):
        rest = level - sum(combo, Fraction(0))
        if rest.denominator != 1:
            continue
        gs = tuple(("G", -k) for k in sorted(combo))
        for lam in partitions_of(int(rest)):
            ls = tuple(("L", Fraction(-m)) for m in sorted(lam))
            words.append(ls + gs)
    return sorted(set(words), key=VermaModule.word_order)


def highest_weight_rs(r: int, s: int, epsilon: int = 1) -> HighestWeight:
    sector = sector_of(r, s)
    beta = symbol("beta")
    rho = (beta - 1 / beta) / 2
    c = Fraction(3, 2) - 12 * rho ** 2
    lam = lambda_rs(r, s, epsilon) if sector == R else None
    return HighestWeight(sector, c, delta_rs(r, s), lam)


def _generating_set(sector):
    if sector == NS:
        return [("G", Fraction(1, 2)), ("G", Fraction(3, 2))]
    return [("L", Fraction(1)), ("G", Fraction(1))]


_SINGULAR: dict = {}


def singular_vector(r: int, s: int, epsilon: int = 1) -> VermaVector:
    """The singular vector at level rs/2 of M(c, Delta_{r,s}) (R: lambda_{r,s})."""
    key = (r, s, epsilon)
    if key in _SINGULAR:
        return _SINGULAR[key]
    hw = highest_weight_rs(r, s, epsilon)
    mod = VermaModule(hw)
    basis = pbw_basis(hw.sector, Fraction(r * s, 2))
    images = []
    for w in basis:
        v = mod.highest_weight_vector()
        v = mod.apply_word(w, v)
        images.append([mod.apply(g, v) for g in _generating_set(hw.sector)])
    row_keys = []
    for imgs in images:
        for j, img in enumerate(imgs):
            for w in img.terms:
                if (j, w) not in row_keys:
                    row_keys.append((j, w))
    rows = [[images[col][j].coefficient(w) for col in range(len(basis))] for j, w in row_keys]
    ker = nullspace(rows, len(basis))
    if len(ker) != 1:
        raise StructuralError(f"kernel at level {Fraction(r * s, 2)} has dimension {len(ker)}")
    vec = ker[0]
    lead = next(c for c in vec if not c.is_zero())
    out = mod.vector({w: c / lead for w, c in zip(basis, vec)})
    _SINGULAR[key] = out
    return out


def annihilation_report(v: VermaVector, max_index) -> list:
    """Residuals of every positive generator with index <= max_index."""
    mod = v.module
    cases = []
    gens = [("L", Fraction(n)) for n in range(1, int(max_index) + 1)]
    gens += [("G", k) for k in sector_indices(mod.sector, Fraction(1, 2), max_index) if k > 0]
    for g in gens:
        res = mod.apply(g, v)
        cases.append({"generator": g[0], "index": str(g[1]), "residual_zero": res.is_zero()})
    return cases


# ---------------------------------------------------------------------------
# bosonization
# ---------------------------------------------------------------------------


def bosonize(v: VermaVector, r: int, s: int, epsilon: int = 1) -> SymFunc:
    """Image of ``v`` in Lambda with |hw> -> 1 at alpha = alpha_{r,s}."""
    ctx = NSRContext.for_rs(r, s, epsilon)
    total = SymFunc()
    for w, c in v.terms.items():
        img = SymFunc.one()
        for kind, i in reversed(w):
            op = ctx.L(int(i)) if kind == "L" else ctx.G(i)
            img = op(img)
        total = total + img.scale(c)
    return total


def compare_uglov(r: int, s: int, epsilon: int = 1) -> dict:
    """Proportionality of the bosonized singular vector and P^(1/beta^2,2)_{(r^s)}."""
    chi = singular_vector(r, s, epsilon)
    image = bosonize(chi, r, s, epsilon)
    P = uglov_beta((r,) * s)
    const = image.proportionality_constant(P)
    out = {"case": f"({r},{s})", "sector": sector_of(r, s), "proportional": const is not None}
    if const is not None:
        out["constant"] = str(const)
    else:
        mu = max(P.terms, key=lambda k: (sum(k), k))
        ratio = image.coefficient(mu) / P.terms[mu]
        for nu in sorted(set(P.terms) | set(image.terms), reverse=True):
            if image.coefficient(nu) != P.coefficient(nu) * ratio:
                out["mismatch"] = {"partition": list(nu), "image": str(image.coefficient(nu)), "uglov": str(P.coefficient(nu))}
                break
    return out


# ---------------------------------------------------------------------------
# the two-highest-weight Ramond module
# ---------------------------------------------------------------------------


@dataclass
class SingularPair:
    even_part: VermaVector  # D^0, words with an even number of G's
    odd_part: VermaVector  # D^1
    lam: RatFunc
    even: tuple = field(default=())  # chi~even as (component in M(lam), component in M(-lam))
    odd: tuple = field(default=())
    checks: dict = field(default_factory=dict)

    def even_operator(self) -> dict:
        """D^0 + D^1 G_0 / lambda as {word: coeff}, with G_0 written explicitly."""
        out = dict(self.even_part.terms)
        inv = self.lam.inverse()
        for w, c in self.odd_part.terms.items():
            out[w + (("G", Fraction(0)),)] = c * inv
        return out


def even_odd_singular(r: int, s: int, epsilon: int = 1) -> SingularPair:
    """Split chi_{r,s} into sigma-even/odd parts and build the singular vectors of
    M~(c, Delta) = M(c, lambda) + M(c, -lambda)."""
    if sector_of(r, s) != R:
        raise UnsupportedCase("even/odd singular vectors exist in the Ramond sector only")
    chi = singular_vector(r, s, epsilon)
    hw = chi.module.hw
    if (hw.delta - hw.c / 24).is_zero():
        raise UnsupportedCase("Delta = c/24: the two highest weights coincide")
    lam = hw.lam
    plus = chi.module
    minus = VermaModule(HighestWeight(R, hw.c, hw.delta, -lam))
    D0 = {w: c for w, c in chi.terms.items() if sum(1 for k, _ in w if k == "G") % 2 == 0}
    D1 = {w: c for w, c in chi.terms.items() if sum(1 for k, _ in w if k == "G") % 2 == 1}
    pair = SingularPair(plus.vector(D0), plus.vector(D1), lam)

    def act(mod, terms, v):
        total = mod.vector()
        for w, c in terms.items():
            total = total + mod.apply_word(w, v).scale(c)
        return total

    op = pair.even_operator()
    two_lam = 2 * lam
    # |Delta+> = (|lam> - |-lam>)/(2 lam),  |Delta-> = (|lam> + |-lam>)/2
    hw_plus = (plus.highest_weight_vector().scale(1 / two_lam), minus.highest_weight_vector().scale(-1 / two_lam))
    hw_minus = (plus.highest_weight_vector().scale(Fraction(1, 2)), minus.highest_weight_vector().scale(Fraction(1, 2)))
    pair.even = (act(plus, op, hw_plus[0]), act(minus, op, hw_plus[1]))
    pair.odd = (act(plus, op, hw_minus[0]), act(minus, op, hw_minus[1]))

    chi_plus = (act(plus, chi.terms, plus.highest_weight_vector()), minus.vector())
    chi_minus_terms = chi.sigma().terms
    chi_minus = (plus.vector(), act(minus, chi_minus_terms, minus.highest_weight_vector()))
    combo_even = tuple((a - b).scale(1 / two_lam) for a, b in zip(chi_plus, chi_minus))
    combo_odd = tuple((a + b).scale(Fraction(1, 2)) for a, b in zip(chi_plus, chi_minus))

    def annihilated(vec):
        return all(mod.apply(g, comp).is_zero() for mod, comp in zip((plus, minus), vec) for g in _generating_set(R))

    pair.checks = {
        "even_matches_combination": all(x == y for x, y in zip(pair.even, combo_even)),
        "odd_matches_combination": all(x == y for x, y in zip(pair.odd, combo_odd)),
        "even_annihilated": annihilated(pair.even),
        "odd_annihilated": annihilated(pair.odd),
        "chi_minus_singular": annihilated(chi_minus),
    }
    return pair


def g0_check(r: int, s: int, epsilon: int = 1) -> dict:
    """G_0 chi = (-1)^s eps (r beta + s/beta)/(2 sqrt2) chi in the Verma module."""
    chi = singular_vector(r, s, epsilon)
    expected = g0_singular_eigenvalue(r, s, epsilon)
    res = chi.module.apply(("G", 0), chi) - chi.scale(expected)
    return {"case": f"({r},{s})", "expected": str(expected), "residual_zero": res.is_zero()}


def level_of(v: VermaVector):
    lv = v.levels()
    return lv.pop() if len(lv) == 1 else None

