"""Sparse polynomials in the four formal variables z, w, zb, wb.

A polynomial is a mapping from exponent vectors ``(ez, ew, ezb, ewb)`` to
complex coefficients. ``zb`` and ``wb`` are treated as independent symbols
(Wirtinger convention); they only become the conjugates of ``z`` and ``w``
when a polynomial is evaluated at a point.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

VARS = ("z", "w", "zb", "wb")
VAR_INDEX = {name: k for k, name in enumerate(VARS)}

# index of the conjugate partner of each variable
_CONJ_PERM = (2, 3, 0, 1)

# coefficients below this fraction of the operands' scale are treated as
# cancellation noise and dropped
DROP_RTOL = 1e-14

Exp = tuple


def _order_key(e):
    # graded lexicographic: total degree first, then (ez, ew, ezb, ewb)
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial with complex coefficients."""

    __slots__ = ("_terms", "_hash", "_sorted")

    def __init__(self, terms: Mapping[Exp, complex] | None = None, ref_scale: float = 0.0):
        clean = {}
        if terms:
            vals = [complex(c) for c in terms.values()]
            if not all(np.isfinite(c.real) and np.isfinite(c.imag) for c in vals):
                raise ValueError("non-finite coefficient")
            cut = DROP_RTOL * max(ref_scale, max(abs(c) for c in vals))
            for e, c in zip(terms, vals):
                if abs(c) > cut:
                    clean[tuple(int(k) for k in e)] = c
        self._terms = clean
        self._hash = None
        self._sorted = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: complex) -> Poly:
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> Poly:
        e = [0, 0, 0, 0]
        e[VAR_INDEX[name]] = power
        return cls({tuple(e): 1.0})

    @classmethod
    def monomial(cls, e: Exp, c: complex = 1.0) -> Poly:
        return cls({tuple(e): c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> list[tuple[Exp, complex]]:
        """Terms in descending graded-lex order."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0, 0) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> complex:
        return self._terms.get((0, 0, 0, 0), 0j)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def max_exponents(self) -> tuple:
        if not self._terms:
            return (0, 0, 0, 0)
        return tuple(max(e[k] for e in self._terms) for k in range(4))

    def scale(self) -> float:
        """Largest coefficient modulus; zero for the zero polynomial."""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def leading(self) -> tuple[Exp, complex]:
        return self.terms[0]

    def monomial_content(self) -> Exp:
        """Exponent vector of the largest monomial dividing every term."""
        if not self._terms:
            return (0, 0, 0, 0)
        return tuple(min(e[k] for e in self._terms) for k in range(4))

    def sort_key(self) -> tuple:
        return tuple((e, (c.real, c.imag)) for e, c in self.terms)

    # -- algebra ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, float, complex)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> Poly:
        out = Poly()
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __add__(self, other) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        d = dict(self._terms)
        for e, c in other._terms.items():
            d[e] = d.get(e, 0j) + c
        return Poly(d, ref_scale=max(self.scale(), other.scale()))

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = complex(other)
            if c == 0:
                return Poly()
            out = Poly()
            out._terms = {e: v * c for e, v in self._terms.items()}
            return out
        d: dict = {}
        ref = 0.0
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                p = c1 * c2
                ref = max(ref, abs(p))
                d[e] = d.get(e, 0j) + p
        return Poly(d, ref_scale=ref)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Exp, sign: int = 1) -> Poly:
        """Multiply (sign=+1) or exactly divide (sign=-1) by the monomial ``e``."""
        out = Poly()
        out._terms = {
            tuple(a + sign * b for a, b in zip(t, e)): c for t, c in self._terms.items()
        }
        if any(min(t) < 0 for t in out._terms):
            raise ValueError("monomial does not divide polynomial")
        return out

    def conj(self) -> Poly:
        """Swap z<->zb, w<->wb and conjugate every coefficient."""
        out = Poly()
        out._terms = {
            tuple(e[_CONJ_PERM[k]] for k in range(4)): c.conjugate() for e, c in self._terms.items()
        }
        return out

    def diff(self, var: int | str) -> Poly:
        k = VAR_INDEX[var] if isinstance(var, str) else var
        d = {}
        for e, c in self._terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                d[tuple(ne)] = c * e[k]
        out = Poly()
        out._terms = d
        return out

    def divide_exact(self, divisor: Poly, rtol: float = 1e-11) -> Poly | None:
        """Quotient if ``divisor`` divides ``self`` up to rounding, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly()
        lt_e, lt_c = divisor.leading()
        rem = dict(self._terms)
        quot: dict = {}
        cut = rtol * self.scale()
        while rem:
            e = max(rem, key=_order_key)
            c = rem.pop(e)
            if abs(c) <= cut:
                continue
            if any(a < b for a, b in zip(e, lt_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lt_e))
            qc = c / lt_c
            quot[qe] = quot.get(qe, 0j) + qc
            for de, dc in divisor._terms.items():
                if de == lt_e:
                    continue
                te = tuple(a + b for a, b in zip(qe, de))
                rem[te] = rem.get(te, 0j) - qc * dc
        return Poly(quot)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z, w):
        """Evaluate at points ``(z, w)``; zb and wb take the conjugate values."""
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        shape = np.broadcast(z, w).shape
        if not self._terms:
            return np.zeros(shape, dtype=complex) if shape else 0j
        base = (z, w, np.conj(z), np.conj(w))
        top = self.max_exponents()
        powers = []
        for b, m in zip(base, top):
            p = [np.ones_like(b)]
            for _ in range(m):
                p.append(p[-1] * b)
            powers.append(p)
        out = np.zeros(shape, dtype=complex)
        for e, c in self._terms.items():
            out = out + c * powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]]
        return out if shape else complex(out)

    def real_gradient(self, z, w):
        """Derivatives along (Re z, Im z, Re w, Im w), shape (..., 4), complex."""
        dz, dw, dzb, dwb = (self.diff(k)(z, w) for k in range(4))
        return np.stack([dz + dzb, 1j * (dz - dzb), dw + dwb, 1j * (dw - dwb)], axis=-1)

    # -- printing -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_number(c: complex) -> str:
    """Exact, parseable rendering of a coefficient (repr keeps every bit)."""
    re, im = c.real, c.imag
    if im == 0:
        return _real(re)
    if re == 0:
        if im == 1:
            return "i"
        return "-i" if im == -1 else f"{_real(im)}*i"
    sign = "-" if im < 0 else "+"
    tail = "i" if abs(im) == 1 else f"{_real(abs(im))}*i"
    return f"({_real(re)} {sign} {tail})"


def _format_monomial(e: Exp) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_term(e: Exp, c: complex, first: bool) -> str:
    mono = _format_monomial(e)
    neg = c.imag == 0 and c.real < 0 or c.real == 0 and c.imag < 0
    if neg and not first:
        c = -c
    if c == 1 and mono:
        body = mono
    elif c == -1 and mono:
        # only reachable for the first term; unary minus binds tighter than '^'
        body = "-" + mono if "^" not in mono.split("*")[0] else "-1*" + mono
    else:
        num = format_number(c)
        body = f"{num}*{mono}" if mono else num
    if first:
        return body
    return (" - " if neg else " + ") + body


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    return "".join(_format_term(e, c, i == 0) for i, (e, c) in enumerate(p.terms))


def poly_product(factors: Iterable[tuple[Poly, int]]) -> Poly:
    out = Poly.const(1.0)
    for f, k in factors:
        out = out * f**k
    return out
