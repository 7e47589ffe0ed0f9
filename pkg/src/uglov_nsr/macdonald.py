"""Macdonald polynomials P_mu(q, t) and two independent operator oracles.

The construction is Gram-Schmidt in the q,t scalar product, run through the
partitions of a degree in increasing lexicographic order (a linear extension
of dominance).  ``apply_D_N`` is the N-variable difference operator and
``eta_zero`` its bosonized form on the whole ring; both are used only to
check the construction.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .exact import RatFunc, as_ratfunc, coefficients_in, parse_ratfunc, symbol
from .linalg import nullspace
from .ops import GradedOp, VertexOperator
from .symfunc import (
    SymFunc,
    _check_degree,
    basis_change,
    macdonald_inner,
    monomial,
    partitions_of,
)

__all__ = [
    "MacdonaldPoly",
    "ContractError",
    "macdonald",
    "macdonald_degree",
    "set_cache_dir",
    "cache_dir",
    "eigenvalue",
    "eigenvalue_N",
    "NVarPoly",
    "project",
    "apply_D_N",
    "difference_operator_matrix",
    "difference_eigenvector",
    "eta_operator",
    "eta_zero",
    "invert_qt",
]

CACHE_ENV = "UGLOV_NSR_CACHE"
CACHE_FORMAT = 1


class ContractError(ValueError):
    """An operation's precondition was violated by its input."""


@dataclass
class MacdonaldPoly:
    mu: tuple
    expansion: SymFunc
    m_expansion: dict = field(repr=False)

    def m_coefficient(self, nu) -> RatFunc:
        return self.m_expansion.get(tuple(nu), as_ratfunc(0))


# ---------------------------------------------------------------------------
# disk cache
# ---------------------------------------------------------------------------

_cache_dir: Path | None = None
_memory: dict = {}


def set_cache_dir(path) -> None:
    """Use ``path`` for the on-disk cache (None disables it)."""
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None


def cache_dir() -> Path | None:
    if _cache_dir is not None:
        return _cache_dir
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def _cache_file(mu) -> Path | None:
    base = cache_dir()
    if base is None:
        return None
    name = "P_" + ("_".join(map(str, mu)) or "empty") + ".json"
    return base / name


def _checksum(terms) -> str:
    blob = json.dumps(terms, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _load(mu):
    path = _cache_file(mu)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        if data.get("format") != CACHE_FORMAT or list(data["partition"]) != list(mu):
            return None
        if data.get("checksum") != _checksum(data["m_expansion"]):
            return None
        return {tuple(d["partition"]): parse_ratfunc(d["coeff"]) for d in data["m_expansion"]}
    except (OSError, ValueError, KeyError, SyntaxError):
        return None


def _store(mu, m_exp: dict) -> None:
    path = _cache_file(mu)
    if path is None:
        return
    terms = [{"partition": list(nu), "coeff": str(c)} for nu, c in sorted(m_exp.items(), reverse=True)]
    data = {"format": CACHE_FORMAT, "partition": list(mu), "m_expansion": terms, "checksum": _checksum(terms)}
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(json.dumps(data, indent=1))
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _from_m(mu, m_exp: dict) -> MacdonaldPoly:
    exp = basis_change(SymFunc(m_exp), "m", "p")
    return MacdonaldPoly(tuple(mu), exp, dict(m_exp))


def macdonald_degree(d: int) -> dict:
    """All P_mu with |mu| = d, keyed by partition."""
    _check_degree(d)
    parts = partitions_of(d)
    if all(mu in _memory for mu in parts):
        return {mu: _memory[mu] for mu in parts}
    loaded = {mu: _load(mu) for mu in parts}
    if all(v is not None for v in loaded.values()):
        for mu, m_exp in loaded.items():
            _memory[mu] = _from_m(mu, m_exp)
        return {mu: _memory[mu] for mu in parts}

    built = []  # (P, <P,P>) in increasing lex order
    for mu in reversed(parts):
        m = monomial(mu)
        P = m
        for Q, norm in built:
            c = macdonald_inner(m, Q.expansion)
            if not c.is_zero():
                P = P - Q.expansion.scale(c / norm)
        m_exp = basis_change(P, "p", "m").terms
        poly = MacdonaldPoly(mu, P, dict(m_exp))
        built.append((poly, macdonald_inner(P, P)))
        _memory[mu] = poly
        _store(mu, poly.m_expansion)
    return {mu: _memory[mu] for mu in parts}


def macdonald(mu) -> MacdonaldPoly:
    """P_mu(q, t), unitriangular in the monomial basis."""
    mu = tuple(mu)
    if mu not in _memory:
        macdonald_degree(sum(mu))
    return _memory[mu]


def invert_qt(f: SymFunc) -> SymFunc:
    """Substitute q -> 1/q, t -> 1/t in every coefficient."""
    q, t = symbol("q"), symbol("t")
    return f.subs({"q": 1 / q, "t": 1 / t})


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------


def eigenvalue(mu) -> RatFunc:
    """E_mu(q,t) = 1 + (t-1) sum_i (q^{mu_i} - 1) t^{-i}, the eta_0 eigenvalue."""
    q, t = symbol("q"), symbol("t")
    s = as_ratfunc(0)
    for i, part in enumerate(mu, start=1):
        s = s + (q ** part - 1) * t ** (-i)
    return 1 + (t - 1) * s


def eigenvalue_N(mu, N: int) -> RatFunc:
    """E_{mu,N}(q,t) = sum_{j=1}^N q^{mu_j} t^{N-j}, the D_N eigenvalue."""
    q, t = symbol("q"), symbol("t")
    mu = list(mu) + [0] * (N - len(mu))
    return sum((q ** mu[j - 1] * t ** (N - j) for j in range(1, N + 1)), as_ratfunc(0))


# ---------------------------------------------------------------------------
# N-variable difference operator
# ---------------------------------------------------------------------------


def _xnames(N: int):
    if not 1 <= N <= 12:
        raise ValueError("N must be between 1 and 12")
    return [f"x{i}" for i in range(1, N + 1)]


@dataclass(frozen=True)
class NVarPoly:
    """Polynomial in x1..xN with q,t-dependent coefficients."""

    N: int
    value: RatFunc

    def terms(self) -> dict:
        return coefficients_in(self.value, _xnames(self.N))

    def is_symmetric(self) -> bool:
        names = _xnames(self.N)
        for i in range(self.N - 1):
            swap = {names[i]: symbol(names[i + 1]), names[i + 1]: symbol(names[i])}
            if self.value.subs(swap) != self.value:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, NVarPoly) and self.N == other.N and self.value == other.value

    def __hash__(self):
        return hash((self.N, self.value))

    def scale(self, c) -> "NVarPoly":
        return NVarPoly(self.N, self.value * c)


def project(f: SymFunc, N: int) -> NVarPoly:
    """pi_N: substitute p_k -> x_1^k + ... + x_N^k."""
    xs = [symbol(n) for n in _xnames(N)]
    power = {}
    total = as_ratfunc(0)
    for mu, c in f.terms.items():
        term = as_ratfunc(1)
        for k in mu:
            if k not in power:
                power[k] = sum((x ** k for x in xs), as_ratfunc(0))
            term = term * power[k]
        total = total + term * c
    return NVarPoly(N, total)


def apply_D_N(f, N: int | None = None) -> NVarPoly:
    """sum_i prod_{j != i} (t x_i - x_j)/(x_i - x_j) T_{q,x_i} applied to f.

    ``f`` is an :class:`NVarPoly` or a SymFunc (projected to N variables).
    Raises :class:`ContractError` when the result is not a polynomial in
    the x's, which happens exactly for non-symmetric input.
    """
    if isinstance(f, SymFunc):
        if N is None:
            raise ValueError("N is required for SymFunc input")
        f = project(f, N)
    N = f.N
    names = _xnames(N)
    xs = [symbol(n) for n in names]
    q, t = symbol("q"), symbol("t")
    total = as_ratfunc(0)
    for i in range(N):
        shifted = f.value.subs({names[i]: q * xs[i]})
        factor = as_ratfunc(1)
        for j in range(N):
            if j != i:
                factor = factor * (t * xs[i] - xs[j]) / (xs[i] - xs[j])
        total = total + shifted * factor
    den_syms = RatFunc.from_poly(total.den).free_symbols()
    if den_syms & set(names):
        raise ContractError("difference operator result is not polynomial; input is not symmetric")
    return NVarPoly(N, total)


def difference_operator_matrix(d: int, N: int | None = None) -> dict:
    """``{nu: {lam: c}}``: D_N m_nu = sum_lam c m_lam on degree d (N = d by default)."""
    N = d if N is None else N
    out = {}
    for nu in partitions_of(d):
        if len(nu) > N:
            continue
        img = apply_D_N(monomial(nu), N).terms()
        row = {}
        for exps, c in img.items():
            lam = tuple(sorted((e for e in exps if e), reverse=True))
            if list(exps) == sorted(exps, reverse=True):
                row[lam] = c
        out[nu] = row
    return out


def difference_eigenvector(mu) -> dict:
    """m-basis eigenvector of D_N (N = |mu|) for E_{mu,N}, with m_mu coefficient 1."""
    mu = tuple(mu)
    d = sum(mu)
    N = max(d, 1)
    mat = difference_operator_matrix(d, N)
    basis = [nu for nu in partitions_of(d) if len(nu) <= N]
    E = eigenvalue_N(mu, N)
    rows = []
    for lam in basis:
        rows.append([mat[nu].get(lam, as_ratfunc(0)) - (E if lam == nu else 0) for nu in basis])
    ker = nullspace(rows, len(basis))
    if len(ker) != 1:
        raise ContractError(f"eigenspace for {mu} has dimension {len(ker)}")
    v = ker[0]
    lead = v[basis.index(mu)]
    return {nu: c / lead for nu, c in zip(basis, v) if not c.is_zero()}


# ---------------------------------------------------------------------------
# bosonized operator
# ---------------------------------------------------------------------------

_ETA: list = []


def eta_operator() -> GradedOp:
    """eta_0, the z^0 coefficient of
    exp(sum (1 - t^-n) p_n z^n / n) exp(-sum (1 - q^n) d/dp_n z^-n)."""
    if not _ETA:
        q, t = symbol("q"), symbol("t")
        V = VertexOperator(
            as_ratfunc(1),
            lambda n: (1 - t ** (-n)) / n,
            lambda n: -(1 - q ** n),
            label="eta",
        )
        _ETA.append(V.mode(0))
    return _ETA[0]


def eta_zero(f: SymFunc) -> SymFunc:
    return eta_operator()(f)
