"""Graded linear operators on symmetric functions and vertex-operator modes.

Operators act on :class:`~uglov_nsr.symfunc.SymFunc` through their action on
power-sum monomials, which is memoized per monomial.  Matrices are the
per-degree restrictions of that action.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import product

from .exact import as_ratfunc
from .symfunc import SymFunc, _is_zero, partitions_of

__all__ = [
    "EVEN",
    "ODD",
    "GradedOp",
    "ScalarOp",
    "supercommutator",
    "VertexOperator",
    "operators_agree",
]

EVEN, ODD = 0, 1


def _add_into(acc: dict, key, value):
    if key in acc:
        acc[key] = acc[key] + value
    else:
        acc[key] = value


class GradedOp:
    """Linear operator with a fixed degree shift and Z/2 parity.

    Subclasses override :meth:`_compute`, the image of a single ``p_mu``.
    """

    def __init__(self, label: str, degree_shift: int, parity: int = EVEN):
        self.label = label
        self.degree_shift = degree_shift
        self.parity = parity % 2
        self._cache: dict = {}

    def _compute(self, mu) -> SymFunc:
        raise NotImplementedError

    def on_monomial(self, mu) -> SymFunc:
        mu = tuple(mu)
        out = self._cache.get(mu)
        if out is None:
            if sum(mu) + self.degree_shift < 0:
                out = SymFunc()
            else:
                out = self._compute(mu)
            self._cache[mu] = out
        return out

    def __call__(self, f: SymFunc) -> SymFunc:
        acc: dict = {}
        for mu, c in f.terms.items():
            img = self.on_monomial(mu)
            for nu, a in img.terms.items():
                _add_into(acc, nu, a * c)
        return SymFunc({k: v for k, v in acc.items() if not _is_zero(v)})

    def matrix(self, d: int) -> dict:
        """``{mu: image of p_mu}`` for all partitions ``mu`` of ``d``."""
        return {mu: self.on_monomial(mu) for mu in partitions_of(d)}

    # -- algebra -------------------------------------------------------------

    def __matmul__(self, other: "GradedOp") -> "GradedOp":
        return _Product(self, other)

    def __add__(self, other: "GradedOp") -> "GradedOp":
        return _Sum([(1, self), (1, other)])

    def __sub__(self, other: "GradedOp") -> "GradedOp":
        return _Sum([(1, self), (-1, other)])

    def __neg__(self):
        return _Sum([(-1, self)])

    def __mul__(self, c) -> "GradedOp":
        return _Sum([(c, self)])

    __rmul__ = __mul__

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} shift={self.degree_shift} parity={self.parity}>"


class ScalarOp(GradedOp):
    """Multiplication by a constant (degree 0, even)."""

    def __init__(self, value, label=None):
        super().__init__(label or f"({value})", 0, EVEN)
        self.value = value

    def _compute(self, mu):
        return SymFunc({mu: self.value}) if not _is_zero(self.value) else SymFunc()


class _Product(GradedOp):
    def __init__(self, a: GradedOp, b: GradedOp):
        super().__init__(f"{a.label}*{b.label}", a.degree_shift + b.degree_shift, a.parity + b.parity)
        self.a, self.b = a, b

    def _compute(self, mu):
        return self.a(self.b.on_monomial(mu))


class _Sum(GradedOp):
    def __init__(self, terms):
        flat = []
        for c, op in terms:
            if isinstance(op, _Sum):
                flat.extend((c * c2, op2) for c2, op2 in op.terms)
            else:
                flat.append((c, op))
        shifts = {op.degree_shift for _, op in flat}
        parities = {op.parity for _, op in flat}
        if len(shifts) > 1 or len(parities) > 1:
            raise ValueError("cannot add operators with different degree shift or parity")
        label = " + ".join(f"{c}*{op.label}" if c != 1 else op.label for c, op in flat)
        super().__init__(label, shifts.pop(), parities.pop())
        self.terms = flat

    def _compute(self, mu):
        acc: dict = {}
        for c, op in self.terms:
            for nu, a in op.on_monomial(mu).terms.items():
                v = a * c if not isinstance(c, int) or c != 1 else a
                _add_into(acc, nu, v)
        return SymFunc({k: v for k, v in acc.items() if not _is_zero(v)})


def supercommutator(x: GradedOp, y: GradedOp) -> GradedOp:
    """``[x, y} = xy - (-1)^{|x||y|} yx``."""
    sign = -1 if (x.parity and y.parity) else 1
    return _Sum([(1, x @ y), (-sign, y @ x)])


def operators_agree(x: GradedOp, y: GradedOp, max_degree: int):
    """Compare two operators on every p_mu of degree <= max_degree.

    Returns None on agreement, else ``(mu, residual)`` for the first mismatch.
    """
    for d in range(max_degree + 1):
        for mu in partitions_of(d):
            diff = x.on_monomial(mu) - y.on_monomial(mu)
            if not diff.is_zero():
                return mu, diff
    return None


# ---------------------------------------------------------------------------
# vertex operators
# ---------------------------------------------------------------------------


class VertexOperator:
    """``V(z) = c * exp(sum_n A_n p_n z^n) * exp(sum_n B_n d/dp_n z^-n)``.

    ``A`` and ``B`` are callables ``n -> coefficient`` (return 0 to switch a
    mode off).  Coefficients may be RatFunc or any ring element with the
    same interface.  The z^k coefficient raises the degree by ``k``.
    """

    def __init__(self, prefactor, A, B, label="V", parity=EVEN):
        self.prefactor = prefactor
        self._A_fn, self._B_fn = A, B
        self.label = label
        self.parity = parity
        self._A: dict = {}
        self._B: dict = {}
        self._E: dict = {}
        self._modes: dict = {}

    def A(self, n):
        if n not in self._A:
            self._A[n] = self._A_fn(n)
        return self._A[n]

    def B(self, n):
        if n not in self._B:
            self._B[n] = self._B_fn(n)
        return self._B[n]

    def creation_part(self, a: int) -> dict:
        """``{mu: coeff}``, the z^a coefficient of the creation exponential."""
        if a not in self._E:
            out = {}
            for mu in partitions_of(a):
                c = None
                for part, mult in Counter(mu).items():
                    x = self.A(part)
                    if _is_zero(x):
                        c = None
                        break
                    term = x ** mult * Fraction(1, math.factorial(mult))
                    c = term if c is None else c * term
                else:
                    if c is None:
                        c = as_ratfunc(1)
                    out[mu] = c
            self._E[a] = out
        return self._E[a]

    def annihilation_terms(self, mu):
        """Yield ``(removed_degree, coeff, remaining_partition)`` for exp(B d/dp) p_mu."""
        counts = sorted(Counter(mu).items(), reverse=True)
        choices = []
        for part, mult in counts:
            b = self.B(part)
            opts = [(0, as_ratfunc(1))]
            if not _is_zero(b):
                bk = as_ratfunc(1)
                for k in range(1, mult + 1):
                    bk = bk * b
                    opts.append((k, bk * math.comb(mult, k)))
            choices.append(opts)
        for pick in product(*choices):
            removed = 0
            coeff = None
            rest = []
            for (part, mult), (k, c) in zip(counts, pick):
                removed += part * k
                coeff = c if coeff is None else coeff * c
                rest.extend([part] * (mult - k))
            yield removed, (coeff if coeff is not None else as_ratfunc(1)), tuple(rest)

    def mode(self, k: int) -> "VertexMode":
        if k not in self._modes:
            self._modes[k] = VertexMode(self, k)
        return self._modes[k]


class VertexMode(GradedOp):
    """The z^k coefficient of a :class:`VertexOperator`."""

    def __init__(self, vop: VertexOperator, k: int):
        super().__init__(f"{vop.label}[z^{k}]", k, vop.parity)
        self.vop = vop
        self.k = k

    def _compute(self, mu):
        acc: dict = {}
        for removed, coeff, rest in self.vop.annihilation_terms(mu):
            a = self.k + removed
            if a < 0:
                continue
            for nu, e in self.vop.creation_part(a).items():
                key = tuple(sorted(nu + rest, reverse=True))
                _add_into(acc, key, e * coeff)
        pre = self.vop.prefactor
        return SymFunc({key: v * pre for key, v in acc.items() if not _is_zero(v)})
