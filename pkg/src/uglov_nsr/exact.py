"""Exact coefficient arithmetic.

Two coefficient types live here:

* :class:`CycloConst` -- elements of the cyclotomic field Q(z8), z8 a primitive
  8th root of unity (z8**4 == -1).  This field holds both ``i = z8**2`` and
  ``sqrt(2) = z8 - z8**3``.
* :class:`RatFunc` -- rational functions over Q(z8) in a fixed set of named
  symbols.

A ``RatFunc`` is stored as ``(n0 + n1*z8 + n2*z8**2 + n3*z8**3) / d`` with the
``n_k`` and ``d`` polynomials over Q (python-flint ``fmpq_mpoly``).  The
denominator is kept free of z8, the gcd of ``d`` with all ``n_k`` is 1 and
``d`` is monic in graded-lex order; this makes the representation canonical,
so equality is structural.
"""
from __future__ import annotations

import ast
import functools
from fractions import Fraction
from numbers import Rational

import flint

__all__ = [
    "SYMBOLS",
    "CycloConst",
    "RatFunc",
    "ZETA",
    "I",
    "SQRT2",
    "symbol",
    "symbols",
    "as_ratfunc",
    "parse_ratfunc",
]

#: Every symbol a RatFunc may use.  ``x1``..``x12`` are the variables of the
#: finite-variable polynomial rings used by the difference-operator oracle.
SYMBOLS = (
    "beta", "b2", "gamma", "alpha", "q", "t", "qh", "th", "u", "eps", "hbar",
) + tuple(f"x{i}" for i in range(1, 13))

_CTX = flint.fmpq_mpoly_ctx.get(SYMBOLS, "deglex")
_INDEX = {name: i for i, name in enumerate(SYMBOLS)}
_ZERO = _CTX.constant(0)
_ONE = _CTX.constant(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


# ---------------------------------------------------------------------------
# Q(z8)
# ---------------------------------------------------------------------------


def _cyclo_mul(a, b):
    """Product of two length-4 coefficient sequences modulo x**4 + 1."""
    out = [0, 0, 0, 0]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            k = i + j
            if k < 4:
                out[k] = out[k] + ai * bj
            else:
                out[k - 4] = out[k - 4] - ai * bj
    return out


def _galois(a, k):
    """Image of ``sum a_j z8**j`` under z8 -> z8**k (k odd)."""
    out = [0, 0, 0, 0]
    for j, aj in enumerate(a):
        if not aj:
            continue
        e = (j * k) % 8
        if e < 4:
            out[e] = out[e] + aj
        else:
            out[e - 4] = out[e - 4] - aj
    return out


class CycloConst:
    """Element ``c0 + c1*z8 + c2*z8**2 + c3*z8**3`` of Q(z8)."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (_frac(c0), _frac(c1), _frac(c2), _frac(c3))

    @classmethod
    def _raw(cls, coeffs):
        obj = object.__new__(cls)
        obj.c = tuple(_frac(x) for x in coeffs)
        return obj

    def _coerce(self, other):
        if isinstance(other, CycloConst):
            return other
        if isinstance(other, (int, Rational)):
            return CycloConst(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloConst._raw(a + b for a, b in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return CycloConst._raw(-a for a in self.c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloConst._raw(_cyclo_mul(self.c, other.c))

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        prod = list(self.c)
        for k in (3, 5, 7):
            prod = _cyclo_mul(prod, _galois(self.c, k))
        return prod[0]

    def inverse(self) -> "CycloConst":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(z8)")
        conj = [1, 0, 0, 0]
        for k in (3, 5, 7):
            conj = _cyclo_mul(conj, _galois(self.c, k))
        n = self.norm()
        return CycloConst._raw(x / n for x in conj)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloConst(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def conjugate(self, k: int) -> "CycloConst":
        return CycloConst._raw(_galois(self.c, k))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __repr__(self):
        return f"CycloConst{self.c}"

    def __str__(self):
        return str(RatFunc.from_const(self))


ZETA = CycloConst(0, 1)
I = CycloConst(0, 0, 1)
SQRT2 = CycloConst(0, 1, 0, -1)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def _poly_mul4(a, b):
    out = [_ZERO, _ZERO, _ZERO, _ZERO]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if bj.is_zero():
                continue
            k = i + j
            if k < 4:
                out[k] = out[k] + ai * bj
            else:
                out[k - 4] = out[k - 4] - ai * bj
    return out


def _poly_galois4(a, k):
    out = [_ZERO, _ZERO, _ZERO, _ZERO]
    for j, aj in enumerate(a):
        if aj.is_zero():
            continue
        e = (j * k) % 8
        if e < 4:
            out[e] = out[e] + aj
        else:
            out[e - 4] = out[e - 4] - aj
    return out


class RatFunc:
    """Rational function over Q(z8) in the symbols of :data:`SYMBOLS`.

    Instances are immutable.  Arithmetic accepts ints, Fractions and
    :class:`CycloConst` on either side.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        r = as_ratfunc(value)
        self.num, self.den, self._hash = r.num, r.den, None

    # -- construction ------------------------------------------------------

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj.num = tuple(num)
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _normalized(cls, num, den, reduce=True):
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        nonzero = [p for p in num if not p.is_zero()]
        if not nonzero:
            return cls._make((_ZERO,) * 4, _ONE)
        if reduce and not den.is_constant():
            g = den
            for p in nonzero:
                if g.is_constant():
                    break
                g = g.gcd(p)
            if not g.is_constant():
                den = den / g
                num = [p / g if not p.is_zero() else p for p in num]
        lc = den.leading_coefficient()
        if lc != 1:
            den = den / lc
            num = [p / lc for p in num]
        return cls._make(num, den)

    @classmethod
    def from_const(cls, c) -> "RatFunc":
        if isinstance(c, CycloConst):
            return cls._make([_CTX.constant(flint.fmpq(x.numerator, x.denominator)) for x in c.c], _ONE)
        c = _frac(c)
        return cls._make(
            (_CTX.constant(flint.fmpq(c.numerator, c.denominator)), _ZERO, _ZERO, _ZERO), _ONE
        )

    @classmethod
    def from_poly(cls, p, den=None) -> "RatFunc":
        return cls._normalized((p, _ZERO, _ZERO, _ZERO), _ONE if den is None else den)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num[0].is_zero() and self.num[1].is_zero() and self.num[2].is_zero() and self.num[3].is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and all(p.is_constant() for p in self.num)

    def is_rational_constant(self) -> bool:
        return self.is_constant() and all(p.is_zero() for p in self.num[1:])

    def has_zeta(self) -> bool:
        return any(not p.is_zero() for p in self.num[1:])

    def to_const(self) -> CycloConst:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return CycloConst._raw(_frac(p.leading_coefficient()) if not p.is_zero() else 0 for p in self.num)

    def to_fraction(self) -> Fraction:
        if not self.is_rational_constant():
            raise ValueError(f"{self} is not a rational constant")
        p = self.num[0]
        return _frac(p.leading_coefficient()) if not p.is_zero() else Fraction(0)

    def free_symbols(self) -> set:
        used = set()
        for p in self.num + (self.den,):
            for mon in p.monoms():
                used.update(SYMBOLS[i] for i, e in enumerate(mon) if e)
        return used

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            num = [a + b for a, b in zip(self.num, other.num)]
            return RatFunc._normalized(num, self.den, reduce=not self.den.is_constant())
        g = self.den.gcd(other.den)
        da, db = self.den / g, other.den / g
        num = [a * db + b * da for a, b in zip(self.num, other.num)]
        return RatFunc._normalized(num, self.den * db)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make([-p for p in self.num], self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return _RZERO
        a_num, b_num = self.num, other.num
        a_den, b_den = self.den, other.den
        # cross-cancel before multiplying
        if not b_den.is_constant():
            g = _content_gcd(a_num, b_den)
            if not g.is_constant():
                a_num = [p / g if not p.is_zero() else p for p in a_num]
                b_den = b_den / g
        if not a_den.is_constant():
            g = _content_gcd(b_num, a_den)
            if not g.is_constant():
                b_num = [p / g if not p.is_zero() else p for p in b_num]
                a_den = a_den / g
        b_plain = b_num[1].is_zero() and b_num[2].is_zero() and b_num[3].is_zero()
        a_plain = a_num[1].is_zero() and a_num[2].is_zero() and a_num[3].is_zero()
        if b_plain:
            c = b_num[0]
            num = [p * c if not p.is_zero() else p for p in a_num]
        elif a_plain:
            c = a_num[0]
            num = [p * c if not p.is_zero() else p for p in b_num]
        else:
            num = _poly_mul4(a_num, b_num)
        # with z8 on both sides a Q-irreducible factor of the denominator can
        # split between the two numerators, so cross-cancelling is not enough
        return RatFunc._normalized(num, a_den * b_den, reduce=not (a_plain or b_plain))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero RatFunc")
        if not self.has_zeta():
            return RatFunc._normalized((self.den, _ZERO, _ZERO, _ZERO), self.num[0], reduce=False)
        conj = [_ONE, _ZERO, _ZERO, _ZERO]
        for k in (3, 5, 7):
            conj = _poly_mul4(conj, _poly_galois4(self.num, k))
        norm = _poly_mul4(conj, self.num)[0]
        return RatFunc._normalized([p * self.den for p in conj], norm)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return _RONE
        if not self.has_zeta():
            return RatFunc._make((self.num[0] ** n, _ZERO, _ZERO, _ZERO), self.den ** n)
        out, base = _RONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.den == other.den and all(a == b for a, b in zip(self.num, other.num))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(str(self))
        return self._hash

    def __reduce__(self):
        return (parse_ratfunc, (str(self),))

    # -- substitution --------------------------------------------------------

    def subs(self, mapping: dict) -> "RatFunc":
        """Substitute symbols (by name) with RatFunc-coercible values."""
        mapping = {k: as_ratfunc(v) for k, v in mapping.items()}
        num = [_subs_poly(p, mapping) for p in self.num]
        out = num[0] + num[1] * ZETA + num[2] * ZETA ** 2 + num[3] * ZETA ** 3
        return out / _subs_poly(self.den, mapping)

    def conjugate(self, k: int) -> "RatFunc":
        """Apply the Galois automorphism z8 -> z8**k to the constants."""
        return RatFunc._make(_poly_galois4(self.num, k), self.den)

    def numerator(self):
        """Numerator as a list of four fmpq_mpoly (coefficients of z8**j)."""
        return list(self.num)

    def denominator(self):
        return self.den

    def total_size(self) -> int:
        """Crude size measure used for pivot choice in elimination."""
        deg = max((p.total_degree() for p in self.num if not p.is_zero()), default=0)
        return deg + self.den.total_degree()

    def evaluate(self, values: dict) -> complex:
        """Floating-point evaluation; ``values`` maps symbol -> number."""
        z = complex(2 ** -0.5, 2 ** -0.5)
        point = [values.get(s, 0) for s in SYMBOLS]

        def ev(p):
            total = 0
            for mon, c in p.terms():
                term = complex(float(_frac(c)))
                for v, e in zip(point, mon):
                    if e:
                        term *= v ** int(e)
                total += term
            return total

        return sum(ev(p) * z ** k for k, p in enumerate(self.num)) / ev(self.den)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if self.is_rational_constant():
            return str(self.to_fraction())
        parts = []
        for k, p in enumerate(self.num):
            if p.is_zero():
                continue
            if k == 0:
                parts.append(f"({p.str()})")
            elif k == 1:
                parts.append(f"({p.str()})*z8")
            else:
                parts.append(f"({p.str()})*z8^{k}")
        body = " + ".join(parts)
        if self.den.is_one():
            return f"({body})"
        return f"({body})/({self.den.str()})"

    def __repr__(self):
        return f"RatFunc('{self}')"


def _content_gcd(num, d):
    g = d
    for p in num:
        if p.is_zero():
            continue
        g = g.gcd(p)
        if g.is_constant():
            break
    return g


def _subs_poly(p, mapping):
    if p.is_zero():
        return _RZERO
    pows: dict = {}
    total = _RZERO
    keep = [i for i, s in enumerate(SYMBOLS) if s not in mapping]
    for mon, c in p.terms():
        mon = tuple(int(e) for e in mon)
        rest = [0] * len(SYMBOLS)
        term = RatFunc.from_const(_frac(c))
        for i, e in enumerate(mon):
            if not e:
                continue
            s = SYMBOLS[i]
            if s in mapping:
                key = (s, e)
                if key not in pows:
                    pows[key] = mapping[s] ** e
                term = term * pows[key]
            else:
                rest[i] = e
        if any(rest[i] for i in keep):
            term = term * monomial_from_exponents(rest)
        total = total + term
    return total


def monomial_from_exponents(exps) -> "RatFunc":
    """Monomial with the given exponent vector (ordered as :data:`SYMBOLS`)."""
    return RatFunc._make((_CTX.from_dict({tuple(exps): 1}), _ZERO, _ZERO, _ZERO), _ONE)


def _coerce(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return _small_int(value)
    if isinstance(value, (Fraction, Rational, flint.fmpq)):
        return RatFunc.from_const(value)
    if isinstance(value, CycloConst):
        return RatFunc.from_const(value)
    return NotImplemented


@functools.lru_cache(maxsize=512)
def _small_int(n: int) -> RatFunc:
    return RatFunc.from_const(n)


def as_ratfunc(value) -> RatFunc:
    """Coerce ints, Fractions, CycloConst or RatFunc to RatFunc."""
    r = _coerce(value)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {value!r} to RatFunc")
    return r


_RZERO = RatFunc._make((_ZERO,) * 4, _ONE)
_RONE = RatFunc._make((_ONE, _ZERO, _ZERO, _ZERO), _ONE)


@functools.lru_cache(maxsize=None)
def symbol(name: str) -> RatFunc:
    """The generator ``name`` as a RatFunc."""
    if name not in _INDEX:
        raise KeyError(f"unknown symbol {name!r}; declared symbols are {SYMBOLS}")
    return RatFunc._make((_CTX.gens()[_INDEX[name]], _ZERO, _ZERO, _ZERO), _ONE)


def symbols(names: str):
    return tuple(symbol(n) for n in names.replace(",", " ").split())


# ---------------------------------------------------------------------------
# parsing of the canonical text form
# ---------------------------------------------------------------------------

_ALLOWED_NAMES = set(SYMBOLS) | {"z8"}


def parse_ratfunc(text: str) -> RatFunc:
    """Parse the canonical text form produced by ``str(RatFunc)``.

    Accepts ``+ - * / ^`` (or ``**``), parentheses, integer literals,
    declared symbol names and ``z8``.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse rational function {text!r}") from exc
    return _eval_node(tree.body)


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return as_ratfunc(node.value)
    if isinstance(node, ast.Name):
        if node.id not in _ALLOWED_NAMES:
            raise ValueError(f"unknown symbol {node.id!r}")
        return RatFunc.from_const(ZETA) if node.id == "z8" else symbol(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError("exponents must be integer literals")
            return _eval_node(node.left) ** (sign * exp.value)
        a, b = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ValueError(f"unsupported syntax in rational function: {ast.dump(node)}")


def coefficients_in(f: RatFunc, names) -> dict:
    """Split ``f`` as ``sum_e c_e * prod(names**e)`` with ``c_e`` free of ``names``.

    The denominator of ``f`` must not involve ``names``.
    """
    f = as_ratfunc(f)
    idx = [_INDEX[n] for n in names]
    for mon in f.den.monoms():
        if any(mon[i] for i in idx):
            raise ValueError(f"denominator of {f} involves {names}")
    pieces: dict = {}
    for k, p in enumerate(f.num):
        for mon, c in p.terms():
            mon = [int(e) for e in mon]
            key = tuple(mon[i] for i in idx)
            for i in idx:
                mon[i] = 0
            bucket = pieces.setdefault(key, [dict(), dict(), dict(), dict()])
            bucket[k][tuple(mon)] = c
    out = {}
    for key, comps in pieces.items():
        num = [_CTX.from_dict(d) if d else _ZERO for d in comps]
        out[key] = RatFunc._normalized(num, f.den)
    return out
