"""Rational expressions in z, w, zb, wb and their Wirtinger calculus.

A :class:`RatExpr` is stored in partially factored form::

    value = poly * prod(F_i ** k_i)

``poly`` is an untracked polynomial carrying all numeric content. Each
``F_i`` is a *tracked factor*: a monic polynomial (leading coefficient 1
in graded-lex order) raised to a nonzero integer power. Single variables
pulled out as monomial content are tracked factors too, which is how
common monomial factors cancel. Other factors become tracked when they
are raised to an explicit power or used as a divisor; an untracked
polynomial is trial-divided by every denominator factor, which gives the
cancellation ``(1-w)^4/(1-wb) * (1-wb) -> (1-w)^4``.

Keeping conjugate pairs such as ``(w - 1)`` and ``(wb - 1)`` as separate
factors lets :func:`modulus` use ``|F| = |conj F|`` at points where both
vanish, e.g. the pole-factor maps at ``(0, 1)``.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .poly import VAR_INDEX, Poly, format_poly, format_number, poly_product

TAU_DEN = 1e-9


class PoleProximity(ArithmeticError):
    """Evaluation too close to a zero of a denominator factor."""


_MONO_VARS = tuple(Poly.var(v) for v in ("z", "w", "zb", "wb"))
_MONO_SET = frozenset(_MONO_VARS)


def _monic(p: Poly) -> tuple[complex, Poly]:
    """Split ``p`` into (leading coefficient, monic polynomial)."""
    _, lc = p.leading()
    if lc == 1:
        return 1.0 + 0j, p
    return lc, p * (1.0 / lc)


class RatExpr:
    """Immutable rational function of z, w, zb, wb with complex coefficients."""

    __slots__ = ("poly", "factors", "_hash")

    def __init__(self, poly: Poly, factors: Iterable[tuple[Poly, int]] = ()):
        # trusted constructor; use _build for normalization
        self.poly = poly
        self.factors = tuple(sorted(factors, key=lambda fk: fk[0].sort_key()))
        self._hash = None

    # -- structure ----------------------------------------------------------

    @property
    def num(self) -> Poly:
        return self.poly * poly_product((f, k) for f, k in self.factors if k > 0)

    @property
    def den(self) -> Poly:
        return poly_product((f, -k) for f, k in self.factors if k < 0)

    def numerator_factors(self) -> list[Poly]:
        """Distinct non-constant polynomials whose product has the numerator's zero set."""
        out = [f for f, k in self.factors if k > 0]
        if not self.poly.is_constant():
            out.append(self.poly)
        return out

    def denominator_factors(self) -> list[Poly]:
        return [f for f, k in self.factors if k < 0]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.is_constant() and not self.factors

    def is_polynomial(self) -> bool:
        return all(k > 0 for _, k in self.factors)

    def scale(self) -> float:
        """Coefficient scale: max |coeff| of the numerator over that of the denominator."""
        s = self.poly.scale()
        for f, k in self.factors:
            s *= f.scale() ** k
        return s

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatExpr):
            if isinstance(other, (int, float, complex, Poly)):
                return self == as_expr(other)
            return NotImplemented
        return self.poly == other.poly and self.factors == other.factors

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.poly, self.factors))
        return self._hash

    def __repr__(self) -> str:
        return f"RatExpr({format_expr(self)!r})"

    __str__ = lambda self: format_expr(self)

    # -- operators ----------------------------------------------------------

    def __add__(self, other):
        return arith(self, as_expr(other), "add")

    def __radd__(self, other):
        return arith(as_expr(other), self, "add")

    def __sub__(self, other):
        return arith(self, as_expr(other), "sub")

    def __rsub__(self, other):
        return arith(as_expr(other), self, "sub")

    def __mul__(self, other):
        return arith(self, as_expr(other), "mul")

    def __rmul__(self, other):
        return arith(as_expr(other), self, "mul")

    def __truediv__(self, other):
        return arith(self, as_expr(other), "div")

    def __rtruediv__(self, other):
        return arith(as_expr(other), self, "div")

    def __neg__(self):
        return RatExpr(-self.poly, self.factors)

    def __pow__(self, k: int):
        return power(self, k)

    def __call__(self, z, w):
        return evaluate(self, z, w)


ZERO = RatExpr(Poly())
ONE = RatExpr(Poly.const(1.0))


def as_expr(x) -> RatExpr:
    if isinstance(x, RatExpr):
        return x
    if isinstance(x, Poly):
        return _build(x, ())
    if isinstance(x, str):
        from .parsing import parse_expr

        return parse_expr(x)
    return RatExpr(Poly.const(x)) if x != 0 else ZERO


def var(name: str) -> RatExpr:
    return RatExpr(Poly.const(1.0), [(Poly.var(name), 1)])


def _merge(into: dict, factors: Iterable[tuple[Poly, int]], sign: int = 1) -> None:
    for f, k in factors:
        into[f] = into.get(f, 0) + sign * k


def _build(poly: Poly, factors: Iterable[tuple[Poly, int]]) -> RatExpr:
    """Normalize ``poly * prod(factors)``."""
    if poly.is_zero():
        return ZERO
    fac: dict = {}
    _merge(fac, factors)
    content = poly.monomial_content()
    if any(content):
        poly = poly.shift(content, -1)
        for mono, k in zip(_MONO_VARS, content):
            if k:
                fac[mono] = fac.get(mono, 0) + k
    # trial division against denominator factors
    if not poly.is_constant():
        for f in sorted(fac, key=lambda p: p.sort_key()):
            while fac[f] < 0 and f not in _MONO_SET:
                q = poly.divide_exact(f)
                if q is None:
                    break
                poly = q
                fac[f] += 1
    return RatExpr(poly, [(f, k) for f, k in fac.items() if k != 0])


def _promote(e: RatExpr) -> RatExpr:
    """Turn a non-constant untracked polynomial into a tracked monic factor."""
    if e.poly.is_constant():
        return e
    lc, f = _monic(e.poly)
    fac: dict = {}
    _merge(fac, e.factors)
    fac[f] = fac.get(f, 0) + 1
    return RatExpr(Poly.const(lc), [(p, k) for p, k in fac.items() if k != 0])


def power(e: RatExpr, k: int) -> RatExpr:
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError("exponent must be a non-negative integer")
    k = int(k)
    if k == 0:
        return ONE
    if e.is_zero():
        return ZERO
    e = _promote(e)
    return RatExpr(e.poly**k, [(f, m * k) for f, m in e.factors])


def reciprocal(e: RatExpr) -> RatExpr:
    if e.is_zero():
        raise ZeroDivisionError("division by the zero expression")
    e = _promote(e)
    c = e.poly.constant_value()
    return RatExpr(Poly.const(1.0 / c), [(f, -k) for f, k in e.factors])


def _add(a: RatExpr, b: RatExpr) -> RatExpr:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ka = dict(a.factors)
    kb = dict(b.factors)
    common = {f: min(ka.get(f, 0), kb.get(f, 0)) for f in set(ka) | set(kb)}
    pa = a.poly * poly_product((f, k - common[f]) for f, k in ka.items())
    pa = pa * poly_product((f, -common[f]) for f in kb if f not in ka)
    pb = b.poly * poly_product((f, k - common[f]) for f, k in kb.items())
    pb = pb * poly_product((f, -common[f]) for f in ka if f not in kb)
    return _build(pa + pb, [(f, k) for f, k in common.items() if k])


def arith(a: RatExpr, b: RatExpr, op: str) -> RatExpr:
    """Exact rational arithmetic, ``op`` one of add | sub | mul | div."""
    a, b = as_expr(a), as_expr(b)
    if op == "add":
        return _add(a, b)
    if op == "sub":
        return _add(a, -b)
    if op == "mul":
        if a.is_zero() or b.is_zero():
            return ZERO
        return _build(a.poly * b.poly, list(a.factors) + list(b.factors))
    if op == "div":
        return arith(a, reciprocal(b), "mul")
    raise ValueError(f"unknown operation {op!r}")


def conjugate(e: RatExpr) -> RatExpr:
    """Swap z<->zb, w<->wb and conjugate coefficients."""
    poly = e.poly.conj()
    factors = []
    for f, k in e.factors:
        lc, g = _monic(f.conj())
        poly = poly * lc**k
        factors.append((g, k))
    return RatExpr(poly, factors)


def wirtinger(e: RatExpr, v: str) -> RatExpr:
    """Formal partial derivative in one of z, w, zb, wb."""
    k = VAR_INDEX[v]
    moving = [(f, m, f.diff(k)) for f, m in e.factors if not f.diff(k).is_zero()]
    still = [(f, m) for f, m in e.factors if f.diff(k).is_zero()]
    d_poly = e.poly.diff(k)
    if not moving:
        return _build(d_poly, still)
    # d(R prod F^m) = prod F^(m-1) * (R' prod F + R sum m F' prod_{other} F)
    full = poly_product((f, 1) for f, _, _ in moving)
    s = d_poly * full
    for i, (f, m, df) in enumerate(moving):
        others = poly_product((g, 1) for j, (g, _, _) in enumerate(moving) if j != i)
        s = s + e.poly * (df * others * m)
    return _build(s, still + [(f, m - 1) for f, m, _ in moving])


def _check_poles(e: RatExpr, vals: dict, tau: float) -> None:
    for f, k in e.factors:
        if k < 0:
            bad = np.abs(vals[f]) <= tau * f.scale()
            if np.any(bad):
                raise PoleProximity("point lies on a denominator zero")


def evaluate(e: RatExpr, z, w, tau_den: float = TAU_DEN):
    """Value of ``e`` at ``(z, w)`` (scalars or arrays)."""
    e = as_expr(e)
    vals = {f: f(z, w) for f, _ in e.factors}
    _check_poles(e, vals, tau_den)
    out = e.poly(z, w)
    for f, k in e.factors:
        out = out * vals[f] ** k
    return out


def _conj_groups(e: RatExpr) -> list[tuple[Poly, int]]:
    """Merge each factor with its conjugate partner: |F| == |conj F| pointwise."""
    exps = dict(e.factors)
    seen = set()
    groups = []
    for f, k in e.factors:
        if f in seen:
            continue
        seen.add(f)
        _, g = _monic(f.conj())
        if g != f and g in exps:
            seen.add(g)
            k += exps[g]
        groups.append((f, k))
    return groups


def modulus(e: RatExpr, z, w, tau_den: float = TAU_DEN, strict: bool = True):
    """``|e(z, w)|`` using ``|F| = |conj F|`` to combine conjugate factor pairs.

    Where a group with negative net power vanishes the result is NaN
    (``strict=False``) or :class:`PoleProximity` is raised.
    """
    e = as_expr(e)
    out = np.abs(e.poly(z, w))
    bad = np.zeros(np.shape(out), dtype=bool)
    for f, k in _conj_groups(e):
        if k == 0:
            continue
        a = np.abs(f(z, w))
        if k < 0:
            bad |= a <= tau_den * f.scale()
            with np.errstate(divide="ignore", invalid="ignore"):
                out = out * np.where(bad, 1.0, a) ** k
        else:
            out = out * a**k
    if np.any(bad):
        if strict:
            raise PoleProximity("point lies on an uncancelled denominator zero")
        out = np.where(bad, np.nan, out)
    return out if np.ndim(out) else float(out)


def format_expr(e: RatExpr) -> str:
    """Canonical string that :func:`parse_expr` maps back to ``e``."""
    if e.is_zero():
        return "0"

    def product(items):
        parts = []
        for f, k in items:
            if f in _MONO_SET:
                name = format_poly(f)
                parts.append(name if k == 1 else f"{name}^{k}")
            else:
                parts.append(f"({format_poly(f)})^{k}")
        return parts

    order = sorted(e.factors, key=lambda fk: (fk[0] not in _MONO_SET, _MONO_VARS.index(fk[0]) if fk[0] in _MONO_SET else 0))
    num = product([(f, k) for f, k in order if k > 0])
    den = product([(f, -k) for f, k in order if k < 0])
    p = e.poly
    if p.is_constant():
        c = p.constant_value()
        if not num:
            head = format_number(c)
        elif c == 1:
            head = "*".join(num)
        elif c == -1 and "^" not in num[0]:
            head = "-" + "*".join(num)
        else:
            head = format_number(c) + "*" + "*".join(num)
    else:
        body = format_poly(p)
        head = "*".join([f"({body})" if (num or den) and len(p.terms) > 1 else body] + num)
    if not den:
        return head
    return f"({head})/({'*'.join(den)})"
