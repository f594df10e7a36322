"""Embedding families with a pole factor at (0, 1), and before/after comparison.

The pole-factor maps are::

    f = (a - w)^(n + r) / (a - wb)^n * p(z, w),   a = 1 + eps

At ``eps = 0`` their tangents are degenerate at (0, 1) whenever ``r > 2``;
shifting ``a`` off the sphere is the perturbation studied here.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .croper import SpherePoint
from .expr import RatExpr, as_expr, power
from .locus import LocusKind
from .poly import Poly
from .report import AnalysisReport

W, WB = as_expr("w"), as_expr("wb")


class NotCoprime(ValueError):
    """Torus knot parameters must be coprime positive integers."""


@dataclass(frozen=True)
class PoleFamilySpec:
    p: RatExpr | str
    n: int
    r: int
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", as_expr(self.p))
        if not self.p.is_polynomial():
            raise ValueError("p must be a polynomial")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.r <= 2:
            raise ValueError("r must exceed 2 for the invariant to be defined at (0, 1)")
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise ValueError("epsilon must be finite and non-negative")


def build_pole_family(spec: PoleFamilySpec) -> RatExpr:
    a = 1.0 + spec.epsilon
    top = power(a - W, spec.n + spec.r)
    bottom = power(a - WB, spec.n)
    return top / bottom * spec.p


def build_torus_knot_map(p: int, q: int) -> RatExpr:
    """Map whose tangents form the (p, q) torus knot ``{z^p = w^q}``."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise NotCoprime(f"({p}, {q}) are not coprime positive integers")
    z, w, zb, wb = (as_expr(v) for v in ("z", "w", "zb", "wb"))
    return power(z, p - 1) * wb + power(w, q - 1) * zb


def jitter(f, rel: float = 1e-3, seed: int = 0) -> RatExpr:
    """Multiply every coefficient by ``1 + rel * u`` with ``u`` uniform in the unit square.

    Tracked factors are jittered separately, stay monic and keep their
    powers, so the pole structure survives.
    """
    f = as_expr(f)
    rng = np.random.default_rng(seed)

    def shake(p: Poly, keep_leading: bool = False) -> Poly:
        terms = {}
        for i, (e, c) in enumerate(p.terms):
            u = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            terms[e] = c if keep_leading and i == 0 else c * (1 + rel * u)
        return Poly(terms)

    out = as_expr(shake(f.poly))
    for g, k in f.factors:
        if g.is_monomial():
            base = as_expr(g)
        else:
            base = as_expr(shake(g, keep_leading=True))
        out = out * power(base, k) if k > 0 else out / power(base, -k)
    return out


@dataclass
class DiffReport:
    base_components: dict
    perturbed_components: dict
    degeneracy_removed: bool
    locus_unchanged: bool
    hausdorff_distance: float
    tol_match: float

    def to_dict(self) -> dict:
        d = asdict(self)
        if math.isinf(d["hausdorff_distance"]):
            d["hausdorff_distance"] = "inf"
        return d


def _all_points(r: AnalysisReport) -> np.ndarray:
    pts = [c.as_array() for c in r.components if c.points]
    return np.vstack(pts) if pts else np.zeros((0, 4))


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    if not len(a) and not len(b):
        return 0.0
    if not len(a) or not len(b):
        return math.inf
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def compare_analyses(base: AnalysisReport, pert: AnalysisReport, tol_match: float | None = None) -> DiffReport:
    if tol_match is None:
        tol_match = 2.0 * base.params.cluster_radius
    d = hausdorff(_all_points(base), _all_points(pert))
    return DiffReport(
        base_components=base.counts(),
        perturbed_components=pert.counts(),
        degeneracy_removed=bool(base.degenerate_points) and not pert.degenerate_points,
        locus_unchanged=d <= tol_match,
        hausdorff_distance=float(d),
        tol_match=float(tol_match),
    )


@dataclass
class IsolatedDegeneracyCheck:
    """Isolated tangents of a report and whether each is degenerate."""

    isolated: list[SpherePoint]
    degenerate: list[bool]

    @property
    def holds(self) -> bool:
        return all(self.degenerate)


def check_isolated_degenerate(report: AnalysisReport) -> IsolatedDegeneracyCheck:
    """Every isolated tangent should have a degenerate invariant; report the evidence."""
    iso, deg = [], []
    for c in report.components:
        if c.kind is LocusKind.POINT:
            iso.append(c.points[0])
            deg.append(bool(c.gammas and c.gammas[0].degenerate))
    return IsolatedDegeneracyCheck(iso, deg)


__all__ = [
    "IsolatedDegeneracyCheck",
    "DiffReport",
    "NotCoprime",
    "PoleFamilySpec",
    "build_pole_family",
    "build_torus_knot_map",
    "check_isolated_degenerate",
    "compare_analyses",
    "hausdorff",
    "jitter",
]
