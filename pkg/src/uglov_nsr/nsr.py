"""NSR generators L_n, G_k realized on symmetric functions.

    L_n = 1/2 sum_m :a_{n-m} a_m: - rho (n+1) a_n
          + 1/2 sum_{k<l, k+l=n} (l-k) f_k f_l + delta_{n,0} (1-2 delta)/16
    G_k = sum_m f_{k-m} a_m + 2 rho (-k-1/2) f_k

with rho = (beta - 1/beta)/2, ``f`` the fermion of the sector and the
annihilating factor always written on the right.  Sums are cut off using
the degree of the input, so each operator is exact on every p_mu.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import SQRT2, RatFunc, as_ratfunc, symbol
from .fock import NS, R, Fock, FockParams, half, sector_indices
from .ops import EVEN, ODD, GradedOp, ScalarOp, operators_agree, supercommutator
from .symfunc import SymFunc, _is_zero
from .uglov import uglov_beta

__all__ = [
    "NSRContext",
    "sector_of",
    "alpha_rs",
    "delta_rs",
    "lambda_rs",
    "g0_singular_eigenvalue",
    "check_nsr_relations",
    "verify_singular_uglov",
]


def sector_of(r: int, s: int) -> str:
    return NS if (r - s) % 2 == 0 else R


def _beta():
    return symbol("beta")


def alpha_rs(r: int, s: int, beta=None) -> RatFunc:
    """alpha_{r,s} = (1+r) beta / 2 - (1+s) / (2 beta)."""
    b = _beta() if beta is None else as_ratfunc(beta)
    return Fraction(1 + r, 2) * b - Fraction(1 + s, 2) / b


def delta_rs(r: int, s: int, beta=None) -> RatFunc:
    """Delta_{r,s} = (r beta - s/beta)^2 / 8 - rho^2 / 2 + (1 - 2 delta)/16."""
    b = _beta() if beta is None else as_ratfunc(beta)
    rho = (b - 1 / b) / 2
    d = Fraction(1, 2) if sector_of(r, s) == NS else Fraction(0)
    return (r * b - s / b) ** 2 / 8 - rho ** 2 / 2 + (1 - 2 * d) / 16


def lambda_rs(r: int, s: int, epsilon: int = 1, beta=None) -> RatFunc:
    """lambda_{r,s} = eps (r beta - s/beta) / (2 sqrt2)."""
    b = _beta() if beta is None else as_ratfunc(beta)
    return epsilon * (r * b - s / b) / (2 * SQRT2)


def g0_singular_eigenvalue(r: int, s: int, epsilon: int = 1, beta=None) -> RatFunc:
    """(-1)^s eps (r beta + s/beta) / (2 sqrt2), the G_0 eigenvalue on the singular vector."""
    b = _beta() if beta is None else as_ratfunc(beta)
    return (-1) ** s * epsilon * (r * b + s / b) / (2 * SQRT2)


class _TermOp(GradedOp):
    """Operator whose action on p_mu is a degree-dependent sum of products."""

    def __init__(self, label, shift, parity, terms_for_degree):
        super().__init__(label, shift, parity)
        self._terms_for_degree = terms_for_degree

    def _compute(self, mu):
        d = sum(mu)
        acc: dict = {}
        src = SymFunc({mu: 1})
        for coeff, factors in self._terms_for_degree(d):
            v = src
            for op in reversed(factors):
                v = op(v)
                if v.is_zero():
                    break
            for nu, c in v.terms.items():
                x = c * coeff
                acc[nu] = acc[nu] + x if nu in acc else x
        return SymFunc({k: v for k, v in acc.items() if not _is_zero(v)})


@dataclass
class NSRContext:
    """NSR data for one Fock module: sector, alpha, epsilon and beta."""

    params: FockParams

    def __post_init__(self):
        self.fock = Fock(self.params)
        b = self.params.beta
        self.rho = (b - 1 / b) / 2
        self.c = Fraction(3, 2) - 12 * self.rho ** 2
        a = self.params.alpha
        self.delta = (a ** 2 - 2 * self.rho * a) / 2 + (1 - 2 * self.params.delta) / 16
        self._ops: dict = {}

    @classmethod
    def create(cls, sector=NS, alpha=None, epsilon=1, beta=None) -> "NSRContext":
        kw = {"sector": sector, "epsilon": epsilon}
        if alpha is not None:
            kw["alpha"] = alpha
        if beta is not None:
            kw["beta"] = beta
        return cls(FockParams(**kw))

    @classmethod
    def for_rs(cls, r: int, s: int, epsilon: int = 1) -> "NSRContext":
        return cls.create(sector_of(r, s), alpha=alpha_rs(r, s), epsilon=epsilon)

    @property
    def sector(self) -> str:
        return self.params.sector

    def _check_index(self, k):
        k = half(k)
        if (k - self.params.delta).denominator != 1:
            raise ValueError(f"index {k} is not in Z+{self.params.delta} ({self.sector} sector)")
        return k

    def L(self, n: int) -> GradedOp:
        n = int(n)
        key = ("L", n)
        if key not in self._ops:
            self._ops[key] = _TermOp(f"L[{n}]", -2 * n, EVEN, lambda d: self._L_terms(n, d))
        return self._ops[key]

    def G(self, k) -> GradedOp:
        k = self._check_index(k)
        key = ("G", k)
        if key not in self._ops:
            self._ops[key] = _TermOp(f"G[{k}]", int(-2 * k), ODD, lambda d: self._G_terms(k, d))
        return self._ops[key]

    def _L_terms(self, n, d):
        fk = self.fock
        terms = []
        # bosons: pairs a_j a_m with j + m = n and j <= m (m on the right)
        top = d // 2
        for m in range(math.ceil(n / 2), max(top, 0) + 1):
            j = n - m
            if m > 0 and 2 * m > d and j <= 0:
                continue
            coeff = Fraction(1, 2) if j == m else Fraction(1)
            terms.append((as_ratfunc(coeff), [fk.a(j), fk.a(m)]))
        terms.append((-self.rho * (n + 1), [fk.a(n)]))
        # fermions: k < l, k + l = n, f_l on the right
        for l in sector_indices(self.sector, Fraction(n, 2), Fraction(d, 2)):
            k = n - l
            if k < l:
                terms.append((as_ratfunc((l - k) / 2), [fk.f(k), fk.f(l)]))
        if n == 0:
            terms.append((as_ratfunc((1 - 2 * self.params.delta) / 16), []))
        return terms

    def _G_terms(self, k, d):
        fk = self.fock
        terms = []
        lo = math.ceil(k - Fraction(d, 2))
        for m in range(lo, d // 2 + 1):
            terms.append((as_ratfunc(1), [fk.f(k - m), fk.a(m)]))
        terms.append((2 * self.rho * (-k - Fraction(1, 2)), [fk.f(k)]))
        return terms


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


def _scalar(x):
    return ScalarOp(as_ratfunc(x))


def check_nsr_relations(sector: str, max_degree: int, window=None, ctx: NSRContext | None = None) -> dict:
    """All three NSR relations with indices in [-window, window] on Lambda^{<=D}."""
    ctx = ctx or NSRContext.create(sector)
    D = max_degree
    W = Fraction(D, 2) if window is None else Fraction(window)
    c = ctx.c
    bos = list(range(-int(W), int(W) + 1))
    ferm = sector_indices(ctx.sector, -W, W)
    cases = []

    def rel(name, lhs, rhs):
        w = operators_agree(lhs, rhs, D)
        case = {"relation": name, "status": "pass" if w is None else "fail"}
        if w is not None:
            case["witness"] = {"partition": list(w[0]), "residual": w[1].to_json()}
        cases.append(case)

    for m in bos:
        for n in bos:
            if n <= m and not (m == n):
                continue
            rhs = ctx.L(m + n) * (m - n) if m != n else _scalar(0)
            if m + n == 0:
                central = c * Fraction(m ** 3 - m, 12)
                rhs = rhs + _scalar(central) if m != n else _scalar(central)
            rel(f"[L{m},L{n}]", supercommutator(ctx.L(m), ctx.L(n)), rhs)
    for n in bos:
        for k in ferm:
            coeff = Fraction(n, 2) - k
            rhs = ctx.G(n + k) * coeff if coeff != 0 else _zero_like(ctx.G(n + k))
            rel(f"[L{n},G{k}]", supercommutator(ctx.L(n), ctx.G(k)), rhs)
    for i, k in enumerate(ferm):
        for l in ferm[i:]:
            rhs = ctx.L(int(k + l)) * 2
            if k + l == 0:
                rhs = rhs + _scalar(c / 3 * (k ** 2 - Fraction(1, 4)))
            rel(f"{{G{k},G{l}}}", supercommutator(ctx.G(k), ctx.G(l)), rhs)
    return {"sector": ctx.sector, "cases": cases, "passed": all(x["status"] == "pass" for x in cases)}


class _Zero(GradedOp):
    def _compute(self, mu):
        return SymFunc()


def _zero_like(op: GradedOp) -> GradedOp:
    return _Zero("0", op.degree_shift, op.parity)


# ---------------------------------------------------------------------------
# singular vectors versus Uglov functions
# ---------------------------------------------------------------------------


def verify_singular_uglov(r: int, s: int, epsilon: int = 1) -> dict:
    """Annihilation of P^(1/beta^2,2)_{(r^s)} by positive modes at alpha = alpha_{r,s}.

    Checks f^add_k (0 < k <= rs/2 + 1), G_k (0 < k <= rs), L_n (0 < n <= rs)
    and, in the R sector, the G_0 eigenvalue.
    """
    sector = sector_of(r, s)
    ctx = NSRContext.for_rs(r, s, epsilon)
    mu = (r,) * s
    P = uglov_beta(mu)
    rs = r * s
    cases = []

    def record(gen, index, residual):
        case = {
            "case": f"({r},{s})",
            "sector": sector,
            "generator": gen,
            "index": str(index),
            "residual_zero": residual.is_zero(),
        }
        if not residual.is_zero():
            case["residual"] = residual.to_json()
        cases.append(case)

    fk = ctx.fock
    for k in sector_indices(NS if sector == R else R, Fraction(1, 2), Fraction(rs, 2) + 1):
        record("f_add", k, fk.f_add(k)(P))
    for k in sector_indices(sector, Fraction(1, 2), rs):
        record("G", k, ctx.G(k)(P))
    for n in range(1, rs + 1):
        record("L", n, ctx.L(n)(P))
    out = {"case": f"({r},{s})", "sector": sector, "partition": list(mu), "cases": cases}
    if sector == R:
        expected = g0_singular_eigenvalue(r, s, epsilon)
        record("G0-eigen", 0, ctx.G(0)(P) - P.scale(expected))
        out["g0_eigenvalue"] = str(expected)
    out["passed"] = all(c["residual_zero"] for c in cases)
    return out
