"""Tangential Cauchy-Riemann operators on S^3 and the Bishop invariant.

``L = z d/dwb - w d/dzb`` is tangent to the sphere and kills holomorphic
functions. For a graph over S^3 the complex tangents are the zeros of
``L f``; at such a point the Bishop invariant is::

    gamma = 1/2 * |L(L f)| / |Lbar(L f)|

computed from the ambient expression and only then restricted to the
point. Both norms vanishing means the tangent is degenerate.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .expr import PoleProximity, RatExpr, arith, as_expr, conjugate, evaluate, modulus, var, wirtinger

TAU_ZERO = 1e-8
TAU_SPHERE = 1e-10
CLASS_BAND = 1e-6

Z, W, ZB, WB = var("z"), var("w"), var("zb"), var("wb")
RHO = Z * ZB + W * WB - 1


class NotATangent(ValueError):
    """The point is not a complex tangent of the embedding."""


class TangentClass(str, enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    HYPERBOLIC_INFINITY = "hyperbolic_infinity"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SpherePoint:
    z: complex
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "w", complex(self.w))

    @classmethod
    def checked(cls, z, w, tol: float = TAU_SPHERE) -> SpherePoint:
        p = cls(z, w)
        if abs(p.residual()) > tol:
            raise ValueError(f"({z}, {w}) is not on S^3 (residual {p.residual():.3g})")
        return p

    @classmethod
    def from_real(cls, x) -> SpherePoint:
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))

    def residual(self) -> float:
        return abs(self.z) ** 2 + abs(self.w) ** 2 - 1.0

    def as_real(self) -> np.ndarray:
        return np.array([self.z.real, self.z.imag, self.w.real, self.w.imag])


@dataclass(frozen=True)
class GammaResult:
    numerator_norm: float
    denominator_norm: float
    gamma: float  # nan when degenerate, inf when the denominator vanishes
    degenerate: bool


def apply_L(f) -> RatExpr:
    f = as_expr(f)
    return arith(Z * wirtinger(f, "wb"), W * wirtinger(f, "zb"), "sub")


def apply_Lbar(f) -> RatExpr:
    f = as_expr(f)
    return arith(ZB * wirtinger(f, "w"), WB * wirtinger(f, "z"), "sub")


def b_function(f) -> RatExpr:
    """Complex-tangent indicator ``B = conj(L f)``.

    This is the determinant of the defining-function Jacobian, see
    :func:`b_determinant`; its zeros on S^3 are the complex tangents.
    """
    return conjugate(apply_L(f))


def b_determinant(f, p: SpherePoint) -> complex:
    """``det d(R, conj R, rho)/d(z, w, zeta)`` evaluated numerically at ``p``."""
    f = as_expr(f)
    fb = conjugate(f)
    m = np.array(
        [
            [-evaluate(wirtinger(f, "z"), p.z, p.w), -evaluate(wirtinger(fb, "z"), p.z, p.w), np.conj(p.z)],
            [-evaluate(wirtinger(f, "w"), p.z, p.w), -evaluate(wirtinger(fb, "w"), p.z, p.w), np.conj(p.w)],
            [1.0, 0.0, 0.0],
        ],
        dtype=complex,
    )
    return complex(np.linalg.det(m))


def gamma_parts(f) -> tuple[RatExpr, RatExpr]:
    """(L(L f), Lbar(L f)), both differentiated from the ambient expression."""
    lf = apply_L(f)
    return apply_L(lf), apply_Lbar(lf)


def _relative_zero(e: RatExpr, value, tau: float):
    if e.is_zero():
        return np.ones(np.shape(value), dtype=bool)
    return np.asarray(value) <= tau * e.scale()


def gamma_from_norms(num_e: RatExpr, den_e: RatExpr, num, den, tau_zero: float = TAU_ZERO):
    """Vectorized gamma from evaluated norms; returns (gamma, degenerate) arrays."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    num_zero = _relative_zero(num_e, num, tau_zero)
    den_zero = _relative_zero(den_e, den, tau_zero)
    degenerate = num_zero & den_zero
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma = np.where(den_zero, np.inf, 0.5 * num / np.where(den_zero, 1.0, den))
    gamma = np.where(degenerate, np.nan, gamma)
    return gamma, degenerate


def _result(num_e, den_e, p, tau_zero) -> GammaResult:
    num = modulus(num_e, p.z, p.w)
    den = modulus(den_e, p.z, p.w)
    g, deg = gamma_from_norms(num_e, den_e, num, den, tau_zero)
    return GammaResult(float(num), float(den), float(g), bool(deg))


def is_tangent(b: RatExpr, p: SpherePoint, tau_zero: float = TAU_ZERO) -> bool:
    val = modulus(b, p.z, p.w)
    return bool(_relative_zero(b, val, tau_zero))


def gamma_at(f, p: SpherePoint, tau_zero: float = TAU_ZERO) -> GammaResult:
    """Bishop invariant of ``graph(f|S^3)`` at the complex tangent ``p``."""
    f = as_expr(f)
    if not is_tangent(b_function(f), p, tau_zero):
        raise NotATangent(f"({p.z}, {p.w}) is not a complex tangent")
    num_e, den_e = gamma_parts(f)
    return _result(num_e, den_e, p, tau_zero)


def gamma_from_B(b, p: SpherePoint, tau_zero: float = TAU_ZERO) -> GammaResult:
    """Bishop invariant from the indicator alone: ``1/2 |Lbar B| / |L B|``."""
    b = as_expr(b)
    if not is_tangent(b, p, tau_zero):
        raise NotATangent(f"B does not vanish at ({p.z}, {p.w})")
    return _result(apply_Lbar(b), apply_L(b), p, tau_zero)


def classify(g: GammaResult, band: float = CLASS_BAND) -> TangentClass:
    if g.degenerate:
        return TangentClass.DEGENERATE
    if math.isinf(g.gamma):
        return TangentClass.HYPERBOLIC_INFINITY
    if abs(g.gamma - 0.5) <= band:
        return TangentClass.PARABOLIC
    if g.gamma < 0.5:
        return TangentClass.ELLIPTIC
    return TangentClass.HYPERBOLIC


def classify_values(gammas, degenerate, band: float = CLASS_BAND) -> list[TangentClass]:
    return [
        classify(GammaResult(0.0, 0.0, float(g), bool(d)), band) for g, d in zip(np.asarray(gammas), np.asarray(degenerate))
    ]


__all__ = [
    "CLASS_BAND",
    "GammaResult",
    "NotATangent",
    "PoleProximity",
    "RHO",
    "SpherePoint",
    "TAU_SPHERE",
    "TAU_ZERO",
    "TangentClass",
    "apply_L",
    "apply_Lbar",
    "b_determinant",
    "b_function",
    "classify",
    "gamma_at",
    "gamma_from_B",
    "gamma_parts",
]
