"""Boson and fermion modes acting on symmetric functions.

Even power sums carry the boson ``a_n``; odd power sums carry both fermion
families through the vertex operators

    V+-(z) = exp(-+sum_{n odd} p_n z^n / n) exp(+-sum_{n odd} 2 d/dp_n z^-n),

with ``f^NS(z^2) = i/(2 sqrt2 z) (V+ - V-)`` and
``f^R(z^2) = eps/(2 sqrt2 z) (V+ + V-)``, modes read off from
``f(z^2) = sum_k f_k z^(-2k-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import I, SQRT2, as_ratfunc, symbol
from .ops import EVEN, ODD, GradedOp, ScalarOp, VertexOperator, supercommutator, operators_agree
from .symfunc import SymFunc

__all__ = [
    "NS",
    "R",
    "FockParams",
    "Fock",
    "BosonMode",
    "half",
    "sector_indices",
    "check_ccr",
    "fock_character",
    "partition_numbers",
    "character_check",
]

NS, R = "NS", "R"


def half(k) -> Fraction:
    """Normalize an index (int, Fraction or '3/2' string) to a Fraction."""
    return Fraction(k)


def sector_indices(sector: str, lo, hi) -> list:
    """Fermion indices of the sector in [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    shift = Fraction(1, 2) if sector == NS else Fraction(0)
    start = int((lo - shift).__ceil__())
    out = []
    k = start + shift
    while k <= hi:
        out.append(k)
        k += 1
    return out


@dataclass(frozen=True)
class FockParams:
    sector: str = NS
    alpha: object = field(default_factory=lambda: symbol("alpha"))
    epsilon: int = 1
    beta: object = field(default_factory=lambda: symbol("beta"))

    def __post_init__(self):
        if self.sector not in (NS, R):
            raise ValueError(f"sector must be 'NS' or 'R', got {self.sector!r}")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        object.__setattr__(self, "alpha", as_ratfunc(self.alpha))
        object.__setattr__(self, "beta", as_ratfunc(self.beta))

    @property
    def delta(self) -> Fraction:
        return Fraction(1, 2) if self.sector == NS else Fraction(0)


class BosonMode(GradedOp):
    """a_n: -2 beta n d/dp_{2n} (n > 0), -p_{2|n|}/(2 beta) (n < 0), alpha (n = 0)."""

    def __init__(self, n: int, params: FockParams):
        super().__init__(f"a[{n}]", -2 * n, EVEN)
        self.n = n
        beta = params.beta
        if n > 0:
            self.coeff = -2 * beta * n
        elif n < 0:
            self.coeff = -1 / (2 * beta)
        else:
            self.coeff = params.alpha

    def _compute(self, mu):
        n = self.n
        if n == 0:
            return SymFunc({mu: self.coeff})
        if n < 0:
            return SymFunc({tuple(sorted(mu + (-2 * n,), reverse=True)): self.coeff})
        k = mu.count(2 * n)
        if not k:
            return SymFunc()
        rest = list(mu)
        rest.remove(2 * n)
        return SymFunc({tuple(rest): self.coeff * k})


class Fock:
    """Mode operators for one choice of :class:`FockParams`, memoized."""

    def __init__(self, params: FockParams | None = None, **kw):
        self.params = params or FockParams(**kw)
        one = as_ratfunc(1)
        odd = lambda n: n % 2 == 1  # noqa: E731
        self._vplus = VertexOperator(
            one, lambda n: -one / n if odd(n) else 0, lambda n: 2 if odd(n) else 0, "V+"
        )
        self._vminus = VertexOperator(
            one, lambda n: one / n if odd(n) else 0, lambda n: -2 if odd(n) else 0, "V-"
        )
        self._modes: dict = {}

    @property
    def sector(self):
        return self.params.sector

    def _memo(self, key, build):
        op = self._modes.get(key)
        if op is None:
            op = build()
            self._modes[key] = op
        return op

    def a(self, n: int) -> GradedOp:
        return self._memo(("a", n), lambda: BosonMode(n, self.params))

    def f_ns(self, r) -> GradedOp:
        r = half(r)
        if r.denominator != 2:
            raise ValueError(f"NS fermion index must be in Z+1/2, got {r}")

        def build():
            k = int(-2 * r)
            op = (self._vplus.mode(k) - self._vminus.mode(k)) * (I / (2 * SQRT2))
            op.parity, op.label = ODD, f"fNS[{r}]"
            return op

        return self._memo(("fNS", r), build)

    def f_r(self, k) -> GradedOp:
        k = half(k)
        if k.denominator != 1:
            raise ValueError(f"R fermion index must be an integer, got {k}")

        def build():
            j = int(-2 * k)
            op = (self._vplus.mode(j) + self._vminus.mode(j)) * (as_ratfunc(self.params.epsilon) / (2 * SQRT2))
            op.parity, op.label = ODD, f"fR[{k}]"
            return op

        return self._memo(("fR", k), build)

    def f(self, k) -> GradedOp:
        """Fermion of the sector (f^NS in NS, f^R in R)."""
        return self.f_ns(k) if self.sector == NS else self.f_r(k)

    def f_add(self, k) -> GradedOp:
        """The additional fermion (f^R in NS, f^NS in R)."""
        return self.f_r(k) if self.sector == NS else self.f_ns(k)

    def parity_operator(self) -> GradedOp:
        """(sqrt2/eps) f^R_0, which squares to the identity."""
        return self.f_r(0) * (SQRT2 / self.params.epsilon)


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------


def _case(name, ok, witness=None):
    out = {"relation": name, "status": "pass" if ok else "fail"}
    if witness is not None:
        mu, residual = witness
        out["witness"] = {"partition": list(mu), "residual": residual.to_json()}
    return out


def _rel(name, lhs, rhs, D):
    w = operators_agree(lhs, rhs, D)
    return _case(name, w is None, w)


def check_ccr(max_degree: int, params: FockParams | None = None, window=None, fock: Fock | None = None) -> dict:
    """(Anti)commutators of all modes with |index| <= window (default D/2) on Lambda^{<=D}.

    Returns ``{"cases": [...], "passed": bool, "mixed": {...}}``; the
    ``mixed`` entry records whether f^NS and f^R anticommute, which is
    observed rather than required.
    """
    fk = fock or Fock(params or FockParams())
    D = max_degree
    W = Fraction(D, 2) if window is None else Fraction(window)
    cases = []
    bos = range(-int(W), int(W) + 1)
    zero = ScalarOp(as_ratfunc(0))
    for n in bos:
        for m in bos:
            if m < n:
                continue
            rhs = ScalarOp(as_ratfunc(n if n + m == 0 else 0))
            cases.append(_rel(f"[a{n},a{m}]", supercommutator(fk.a(n), fk.a(m)), rhs, D))
    families = [("NS", fk.f_ns, sector_indices(NS, -W, W)), ("R", fk.f_r, sector_indices(R, -W, W))]
    for fam, f, idx in families:
        for i, k in enumerate(idx):
            for l in idx[i:]:
                rhs = ScalarOp(as_ratfunc(1 if k + l == 0 else 0))
                cases.append(_rel(f"{{f{fam}{k},f{fam}{l}}}", supercommutator(f(k), f(l)), rhs, D))
            for n in bos:
                cases.append(_rel(f"[a{n},f{fam}{k}]", supercommutator(fk.a(n), f(k)), zero, D))
    mixed_anti = True
    for r in families[0][2]:
        for k in families[1][2]:
            if operators_agree(supercommutator(fk.f_ns(r), fk.f_r(k)), zero, D) is not None:
                mixed_anti = False
    return {
        "cases": cases,
        "passed": all(c["status"] == "pass" for c in cases),
        "mixed": {"relation": "{fNS_r, fR_k}", "anticommute": mixed_anti},
    }


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


def fock_character(max_degree: int) -> list:
    """Dimensions by degree of the Fock space spanned by a_{-m}, f^R_{-k}, f^NS_{-r}.

    Degrees: a_{-m} -> 2m (bosonic), f^R_{-k} -> 2k and f^NS_{-r} -> 2r
    (each used at most once).
    """
    D = max_degree
    series = [1] + [0] * D
    for m in range(1, D // 2 + 1):  # 1/(1 - q^{2m})
        step = 2 * m
        for i in range(step, D + 1):
            series[i] += series[i - step]
    for deg in list(range(2, D + 1, 2)) + list(range(1, D + 1, 2)):  # (1 + q^deg), fermions
        for i in range(D, deg - 1, -1):
            series[i] += series[i - deg]
    return series


def partition_numbers(max_degree: int) -> list:
    """p(0..D) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * max_degree
    for n in range(1, max_degree + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def character_check(max_degree: int) -> dict:
    if max_degree > 20:
        raise ValueError("character check is limited to degree 20")
    fock = fock_character(max_degree)
    lam = partition_numbers(max_degree)
    mismatch = [m for m in range(max_degree + 1) if fock[m] != lam[m]]
    return {"fock": fock, "partitions": lam, "passed": not mismatch, "mismatch": mismatch}
