"""Locating and tracing the complex-tangent locus {B = 0} on S^3.

Points are handled in real coordinates ``x = (Re z, Im z, Re w, Im w)``.
Refinement solves ``(Re g, Im g, rho) = 0`` by Gauss-Newton with a
pseudo-inverse step, once for every distinct numerator factor ``g`` of B.
Working factor by factor keeps the equations reduced where a factor of B
appears with a power, and lets an isolated zero of one factor (such as a
pole-factor point) be found separately from the curves of another.

Several of the built-in examples meet the sphere tangentially: ``B = zb - z*wb``
vanishes only cubically in one direction transverse to ``{z = 0}``. Plain
Gauss-Newton converges linearly there, so successive steps are watched and
the step is stretched by the estimated multiplicity when they line up.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .croper import (
    TAU_SPHERE,
    TAU_ZERO,
    GammaResult,
    SpherePoint,
    TangentClass,
    b_function,
    classify_values,
    gamma_from_norms,
    gamma_parts,
)
from .expr import TAU_DEN, RatExpr, _conj_groups, _monic, as_expr, modulus
from .poly import Poly

# relative cutoff for singular values in the refinement step; far below
# rank_tol so that tangential (rank-deficient) zeros still converge
PINV_RCOND = 1e-14
MAX_STEP = 0.25
N_PROBES = 16


class LocusKind(str, enum.Enum):
    POINT = "Point0D"
    CURVE = "Curve1D"
    SURFACE = "Surface2D"


_KIND_ORDER = {LocusKind.POINT: 0, LocusKind.CURVE: 1, LocusKind.SURFACE: 2}


class StepCollapse(RuntimeError):
    """Curve tracing could not continue with a step above the minimum."""


@dataclass(frozen=True)
class LocusParams:
    sample_count: int = 20000
    rng_seed: int = 0
    newton_tol: float = 1e-11
    newton_max_iter: int = 50
    trace_step: float = 0.01
    closure_tol: float | None = None
    cluster_radius: float = 0.02
    rank_tol: float = 1e-5
    tau_zero: float = TAU_ZERO
    max_cloud: int = 2000

    def __post_init__(self):
        if self.closure_tol is None:
            object.__setattr__(self, "closure_tol", 3.0 * self.trace_step)
        for name in ("sample_count", "newton_tol", "newton_max_iter", "trace_step", "closure_tol",
                     "cluster_radius", "rank_tol", "tau_zero", "max_cloud"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be non-negative")


@dataclass
class LocusComponent:
    id: int
    kind: LocusKind
    points: list[SpherePoint]
    closed: bool = False
    gammas: list[GammaResult] = field(default_factory=list)
    classes: list[TangentClass] = field(default_factory=list)
    degenerate_points: list[SpherePoint] = field(default_factory=list)
    partial: bool = False
    # refined points of other factors that landed on this component
    candidates: list[SpherePoint] = field(default_factory=list, repr=False, compare=False)

    def as_array(self) -> np.ndarray:
        return _to_real(self.points)


def _to_real(points) -> np.ndarray:
    if not len(points):
        return np.zeros((0, 4))
    return np.array([[p.z.real, p.z.imag, p.w.real, p.w.imag] for p in points])


def _to_points(x: np.ndarray) -> list[SpherePoint]:
    x = np.atleast_2d(x)
    return [SpherePoint(complex(a, b), complex(c, d)) for a, b, c, d in x]


def _normalize(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def sample_sphere(n: int, seed: int = 0) -> list[SpherePoint]:
    """Deterministic low-discrepancy points on S^3 in Hopf coordinates."""
    return _to_points(_sample_real(n, seed))


def _sample_real(n: int, seed: int) -> np.ndarray:
    if n <= 0:
        raise ValueError("n must be positive")
    u = qmc.Halton(d=3, scramble=True, seed=seed).random(n)
    # cos^2(eta) uniform gives the uniform measure on S^3
    c = np.sqrt(u[:, 0])
    s = np.sqrt(1.0 - u[:, 0])
    t1 = 2 * np.pi * u[:, 1]
    t2 = 2 * np.pi * u[:, 2]
    x = np.stack([c * np.cos(t1), c * np.sin(t1), s * np.cos(t2), s * np.sin(t2)], axis=1)
    return _normalize(x)


class _System:
    """The equations ``(Re g, Im g, rho)`` for one polynomial factor ``g``."""

    def __init__(self, g: Poly):
        self.g = g
        self.scale = g.scale()
        self.d = [g.diff(k) for k in range(4)]

    def value(self, x: np.ndarray) -> np.ndarray:
        z = x[..., 0] + 1j * x[..., 1]
        w = x[..., 2] + 1j * x[..., 3]
        return self.g(z, w) / self.scale

    def residual_jac(self, x: np.ndarray):
        z = x[:, 0] + 1j * x[:, 1]
        w = x[:, 2] + 1j * x[:, 3]
        g = self.g(z, w) / self.scale
        dz, dw, dzb, dwb = (d(z, w) / self.scale for d in self.d)
        grad = np.stack([dz + dzb, 1j * (dz - dzb), dw + dwb, 1j * (dw - dwb)], axis=1)
        rho = np.sum(x * x, axis=1) - 1.0
        F = np.stack([g.real, g.imag, rho], axis=1)
        J = np.stack([grad.real, grad.imag, 2.0 * x], axis=1)
        return F, J


def _gauss_newton(sys: _System, x0: np.ndarray, params: LocusParams):
    """Batched refinement; returns (points, success mask)."""
    x = _normalize(np.array(x0, dtype=float, ndmin=2))
    n = len(x)
    active = np.ones(n, dtype=bool)
    prev = np.zeros_like(x)
    for _ in range(params.newton_max_iter):
        idx = np.nonzero(active)[0]
        if not idx.size:
            break
        xa = x[idx]
        F, J = sys.residual_jac(xa)
        ok = np.all(np.isfinite(F), axis=1) & np.all(np.isfinite(J), axis=(1, 2))
        if not np.all(ok):
            active[idx[~ok]] = False
            idx, xa, F, J = idx[ok], xa[ok], F[ok], J[ok]
            if not idx.size:
                break
        raw = -np.einsum("mij,mj->mi", np.linalg.pinv(J, rcond=PINV_RCOND), F)
        step = raw.copy()
        ns = np.linalg.norm(raw, axis=1)
        pn = np.linalg.norm(prev[idx], axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            cos = np.sum(raw * prev[idx], axis=1) / (ns * pn)
            q = ns / pn
        # steps shrinking geometrically along a fixed line: multiple zero
        acc = (pn > 0) & (cos > 0.98) & (q >= 0.3) & (q <= 0.97)
        step[acc] *= (1.0 / (1.0 - q[acc]))[:, None]
        sn = np.linalg.norm(step, axis=1)
        big = sn > MAX_STEP
        step[big] *= (MAX_STEP / sn[big])[:, None]
        x[idx] = _normalize(xa + step)
        prev[idx] = raw
        active[idx[ns < params.newton_tol]] = False
    g = np.abs(sys.value(x))
    rho = np.abs(np.sum(x * x, axis=1) - 1.0)
    success = np.isfinite(g) & (g <= params.tau_zero) & (rho <= TAU_SPHERE)
    return x, success


def _locus_factors(B: RatExpr) -> list[Poly]:
    """Distinct numerator factors whose zeros are zeros of B.

    A factor whose conjugate partner sits in the denominator with at least
    the same power contributes no zeros (the quotient has modulus >= 1 or
    is a pole), so it is skipped. A factor and its conjugate share a zero
    set, so only one of them is kept.
    """
    net = dict(_conj_groups(B))
    cands = []
    for f, k in B.factors:
        if k <= 0:
            continue
        if f in net:
            if net[f] <= 0:
                continue
        else:
            _, g = _monic(f.conj())
            if net.get(g, 1) <= 0:
                continue
        cands.append(f)
    if not B.poly.is_constant():
        cands.append(_monic(B.poly)[1])
    out: list[Poly] = []
    for f in cands:
        conj = _monic(f.conj())[1]
        if f in out or conj in out:
            continue
        out.append(f)
    return out


def _systems(B: RatExpr) -> list[_System]:
    return [_System(g) for g in _locus_factors(B)]


def _b_ok(B: RatExpr, x: np.ndarray, tau_zero: float) -> tuple[np.ndarray, np.ndarray]:
    """(zero mask, indeterminate mask) of the full B at real points ``x``."""
    z = x[:, 0] + 1j * x[:, 1]
    w = x[:, 2] + 1j * x[:, 3]
    m = modulus(B, z, w, TAU_DEN, strict=False)
    m = np.atleast_1d(m)
    bad = np.isnan(m)
    return (~bad) & (m <= tau_zero * B.scale()), bad


def refine_to_locus(B, start: SpherePoint, params: LocusParams | None = None) -> SpherePoint | None:
    """Nearest refined zero of B from ``start``, or None if nothing converges."""
    params = params or LocusParams()
    B = as_expr(B)
    x0 = np.array([start.as_real()])
    best = None
    for sys in _systems(B):
        x, ok = _gauss_newton(sys, x0, params)
        if ok[0]:
            d = np.linalg.norm(x[0] - x0[0])
            if best is None or d < best[0]:
                best = (d, x[0])
    if best is None:
        return None
    return _to_points(best[1])[0]


def _tangent_basis(x: np.ndarray) -> np.ndarray:
    """Orthonormal basis (3, 4) of the tangent space of S^3 at ``x``."""
    _, _, vt = np.linalg.svd(x[None, :])
    return vt[1:]


def _probe_directions() -> np.ndarray:
    # Fibonacci points on S^2, a fixed quasi-uniform set of directions
    k = np.arange(N_PROBES) + 0.5
    phi = np.arccos(1 - 2 * k / N_PROBES)
    theta = np.pi * (1 + 5**0.5) * k
    return np.stack([np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)], axis=1)


_PROBES = _probe_directions()


def _pick_system(systems: list[_System], x: np.ndarray) -> _System:
    vals = [abs(s.value(x[None, :])[0]) for s in systems]
    return systems[int(np.argmin(vals))]


def _probe(sys: _System, x: np.ndarray, params: LocusParams) -> np.ndarray:
    """Displacements to locus points found by refining from offsets around ``x``."""
    h = params.trace_step
    starts = _normalize(x + h * (_PROBES @ _tangent_basis(x)))
    y, ok = _gauss_newton(sys, starts, params)
    d = y[ok] - x
    dn = np.linalg.norm(d, axis=1)
    return d[(dn > 0.2 * h) & (dn <= 5 * h)]


def _kind_detail(sys: _System, x: np.ndarray, params: LocusParams):
    """(kind, tangent direction or None)."""
    _, J = sys.residual_jac(x[None, :])
    _, s, vt = np.linalg.svd(J[0])
    if s[0] > 0 and s[2] / s[0] > params.rank_tol:
        return LocusKind.CURVE, vt[3]
    disp = _probe(sys, x, params)
    if not len(disp):
        return LocusKind.POINT, None
    _, sd, vd = np.linalg.svd(disp)
    rank = int(np.sum(sd / sd[0] > 0.3))
    if rank >= 2:
        return LocusKind.SURFACE, None
    return LocusKind.CURVE, vd[0]


def local_rank(B, p: SpherePoint, params: LocusParams | None = None) -> LocusKind:
    """Local dimension of the locus at ``p``.

    A full-rank Jacobian of ``(Re g, Im g, rho)`` means a curve. Otherwise the
    neighbourhood is probed in a fixed set of tangent directions: no nearby
    locus point means an isolated point, and the span of the displacements
    separates curves from surfaces.
    """
    params = params or LocusParams()
    B = as_expr(B)
    systems = _systems(B)
    if not systems:
        raise ValueError("B has no zeros")
    x = p.as_real()
    return _kind_detail(_pick_system(systems, x), x, params)[0]


def _march(sys: _System, x0: np.ndarray, t0: np.ndarray, params: LocusParams, max_steps: int):
    """Follow the curve from x0 along t0; returns (points, closed, collapsed)."""
    H = params.trace_step
    h = H
    pts = [x0]
    x, t = x0, t0
    arc = 0.0
    while len(pts) < max_steps:
        pred = _normalize(x + h * t)
        y, ok = _gauss_newton(sys, pred[None, :], params)
        y = y[0]
        d = np.linalg.norm(y - x)
        if not ok[0] or d > 2 * H or d < 0.2 * min(h, H) or np.dot(y - x, t) <= 0:
            h *= 0.5
            if h < 1e-6:
                return np.array(pts), False, True
            continue
        # new tangent: Jacobian null vector when available, else the secant
        _, J = sys.residual_jac(y[None, :])
        _, s, vt = np.linalg.svd(J[0])
        sec = (y - x) / d
        if s[0] > 0 and s[2] / s[0] > params.rank_tol:
            tn = vt[3] if np.dot(vt[3], sec) >= 0 else -vt[3]
        else:
            tn = sec
        arc += d
        pts.append(y)
        x, t = y, tn
        h = min(H, 1.5 * h)
        gap = np.linalg.norm(y - x0)
        if arc > 3 * params.closure_tol and gap <= min(params.closure_tol, 1.5 * H):
            if gap < 0.2 * H:
                pts.pop()
            return np.array(pts), True, False
    return np.array(pts), False, False


def _trace(sys: _System, x0: np.ndarray, t0: np.ndarray, params: LocusParams):
    max_steps = int(200.0 / params.trace_step)
    fwd, closed, col1 = _march(sys, x0, t0, params, max_steps)
    if closed:
        return fwd, True, False
    back, _, col2 = _march(sys, x0, -t0, params, max_steps)
    pts = np.concatenate([back[::-1], fwd[1:]])
    return pts, False, col1 or col2


def _canonical_polyline(pts: np.ndarray, closed: bool) -> np.ndarray:
    if not closed or len(pts) < 2:
        return pts
    keys = np.round(pts, 9)
    i = min(range(len(pts)), key=lambda k: tuple(keys[k]))
    return np.roll(pts, -i, axis=0)


def trace_component(B, seed_pt: SpherePoint, params: LocusParams | None = None, f=None) -> LocusComponent:
    """Trace the curve of tangents through ``seed_pt``.

    Raises :class:`StepCollapse` if the step had to shrink below 1e-6; the
    pipeline keeps such curves and marks them partial instead.
    """
    params = params or LocusParams()
    B = as_expr(B)
    systems = _systems(B)
    x0 = seed_pt.as_real()
    sys = _pick_system(systems, x0)
    kind, t0 = _kind_detail(sys, x0, params)
    if kind is not LocusKind.CURVE:
        raise ValueError(f"seed point is not on a curve of tangents ({kind.value})")
    pts, closed, collapsed = _trace(sys, x0, t0, params)
    if collapsed:
        raise StepCollapse("trace step fell below 1e-6")
    comp = LocusComponent(0, LocusKind.CURVE, _to_points(_canonical_polyline(pts, closed)), closed)
    if f is not None:
        _fill_gammas(as_expr(f), comp, params)
    return comp


def _fill_gammas(f: RatExpr, comp: LocusComponent, params: LocusParams, parts=None) -> None:
    num_e, den_e = parts or gamma_parts(f)
    x = comp.as_array()
    if not len(x):
        return
    z = x[:, 0] + 1j * x[:, 1]
    w = x[:, 2] + 1j * x[:, 3]
    num = np.atleast_1d(modulus(num_e, z, w, TAU_DEN, strict=False))
    den = np.atleast_1d(modulus(den_e, z, w, TAU_DEN, strict=False))
    g, deg = gamma_from_norms(num_e, den_e, num, den, params.tau_zero)
    g, deg = np.atleast_1d(g), np.atleast_1d(deg)
    comp.gammas = [GammaResult(float(a), float(b), float(c), bool(d)) for a, b, c, d in zip(num, den, g, deg)]
    comp.classes = classify_values(g, deg)


def _cluster_reps(x: np.ndarray, radius: float) -> list[np.ndarray]:
    """Group points into connected clusters at ``radius``; sorted, deterministic."""
    if not len(x):
        return []
    tree = cKDTree(x)
    graph = tree.sparse_distance_matrix(tree, radius, output_type="coo_matrix")
    n, labels = connected_components(graph, directed=False)
    groups = [x[labels == k] for k in range(n)]
    return sorted(groups, key=lambda g: tuple(np.round(g.min(axis=0), 9)))


def _subsample(x: np.ndarray, m: int) -> np.ndarray:
    order = np.lexsort(np.round(x, 9).T[::-1])
    x = x[order]
    if len(x) <= m:
        return x
    idx = np.round(np.linspace(0, len(x) - 1, m)).astype(int)
    return x[idx]


def _sort_key(c: LocusComponent):
    x = c.as_array()
    return (_KIND_ORDER[c.kind], tuple(np.round(x.min(axis=0), 6)) if len(x) else ())


def find_components(f, params: LocusParams | None = None, indeterminate: list | None = None) -> list[LocusComponent]:
    """Full locus pipeline for the embedding ``graph(f|S^3)``.

    Sample, refine against every factor of B, then take unassigned refined
    points in a fixed order as seeds: curves are traced, surfaces grown
    from the refined cloud, isolated points collected last. Points where B
    is a 0/0 that the factor rule cannot resolve are appended to
    ``indeterminate`` when a list is given.
    """
    params = params or LocusParams()
    f = as_expr(f)
    B = b_function(f)
    if B.num.scale() == 0:
        raise ValueError("B vanishes identically on the sphere; every point is a complex tangent")
    systems = _systems(B)
    if not systems:
        return []
    x0 = _sample_real(params.sample_count, params.rng_seed)
    if np.all(np.abs(B.num(x0[:, 0] + 1j * x0[:, 1], x0[:, 2] + 1j * x0[:, 3])) <= params.tau_zero * B.num.scale()):
        raise ValueError("B vanishes identically on the sphere; every point is a complex tangent")

    pool, owner = [], []
    for k, sys in enumerate(systems):
        y, ok = _gauss_newton(sys, x0, params)
        pool.append(y[ok])
        owner.append(np.full(int(ok.sum()), k))
    P = np.concatenate(pool) if pool else np.zeros((0, 4))
    O = np.concatenate(owner) if owner else np.zeros(0, int)
    zero, bad = _b_ok(B, P, params.tau_zero) if len(P) else (np.zeros(0, bool), np.zeros(0, bool))
    if indeterminate is not None:
        indeterminate.extend(_to_points(np.array([g.mean(axis=0) for g in _cluster_reps(P[bad], params.cluster_radius)]).reshape(-1, 4)))
    P, O = P[zero], O[zero]
    order = np.lexsort(np.round(P, 9).T[::-1])
    P, O = P[order], O[order]

    tree = cKDTree(P) if len(P) else None
    free = np.ones(len(P), dtype=bool)
    radius = max(params.cluster_radius, 2 * params.trace_step)
    comps: list[LocusComponent] = []
    point_seeds = []
    graphs = {}

    for i in range(len(P)):
        if not free[i]:
            continue
        sys = systems[O[i]]
        kind, t0 = _kind_detail(sys, P[i], params)
        if kind is LocusKind.CURVE:
            pts, closed, collapsed = _trace(sys, P[i], t0, params)
            pts = _canonical_polyline(pts, closed)
            near = cKDTree(pts).query(P, distance_upper_bound=radius)[0] < np.inf
            hits = near & free & (O != O[i])
            free[near] = False
            free[i] = False
            comp = LocusComponent(0, LocusKind.CURVE, _to_points(pts), closed, partial=collapsed)
            comp.candidates = _to_points(P[hits]) if hits.any() else []
            comps.append(comp)
        elif kind is LocusKind.SURFACE:
            same = np.nonzero(O == O[i])[0]
            if O[i] not in graphs:
                sub = P[same]
                st = cKDTree(sub)
                nn = st.query(sub, k=2)[0][:, 1]
                r = max(params.cluster_radius, 3.0 * float(np.median(nn)))
                graphs[O[i]] = connected_components(st.sparse_distance_matrix(st, r, output_type="coo_matrix"), directed=False)[1]
            labels = graphs[O[i]]
            lab = labels[np.searchsorted(same, i)]
            members = same[labels == lab]
            members = members[free[members]]
            free[members] = False
            free[i] = False
            cloud = _subsample(P[members], params.max_cloud)
            comps.append(LocusComponent(0, LocusKind.SURFACE, _to_points(cloud), False))
        else:
            near = tree.query_ball_point(P[i], params.cluster_radius)
            free[near] = False
            free[i] = False
            point_seeds.append(i)

    # isolated candidates: absorbed by components they lie on, else Point0D
    extended = [c for c in comps]
    trees = [cKDTree(c.as_array()) for c in extended]
    for i in point_seeds:
        host = None
        for c, t in zip(extended, trees):
            if t.query(P[i])[0] <= radius:
                host = c
                break
        if host is not None:
            host.candidates.append(_to_points(P[i])[0])
            continue
        comps.append(LocusComponent(0, LocusKind.POINT, _to_points(P[i]), False))

    comps.sort(key=_sort_key)
    parts = gamma_parts(f)
    for k, c in enumerate(comps):
        c.id = k
        _fill_gammas(f, c, params, parts)
    for c in comps:
        c.degenerate_points = _degenerate_in(f, c, params, parts)
    return comps


def _gamma_norms(parts, x: np.ndarray):
    num_e, den_e = parts
    z = x[..., 0] + 1j * x[..., 1]
    w = x[..., 2] + 1j * x[..., 3]
    num = modulus(num_e, z, w, TAU_DEN, strict=False)
    den = modulus(den_e, z, w, TAU_DEN, strict=False)
    sn = max(num_e.scale(), 1e-300)
    sd = max(den_e.scale(), 1e-300)
    return np.maximum(np.nan_to_num(num / sn, nan=np.inf), np.nan_to_num(den / sd, nan=np.inf))


def _is_degenerate(parts, x: np.ndarray, tau_zero: float) -> bool:
    num_e, den_e = parts
    z = complex(x[0], x[1])
    w = complex(x[2], x[3])
    num = modulus(num_e, z, w, TAU_DEN, strict=False)
    den = modulus(den_e, z, w, TAU_DEN, strict=False)
    if np.isnan(num) or np.isnan(den):
        return False
    return bool(gamma_from_norms(num_e, den_e, num, den, tau_zero)[1])


def _golden_on_polyline(parts, sys, pts: np.ndarray, i: int, params: LocusParams) -> np.ndarray:
    """Minimize the larger gamma norm over segment neighbourhood of vertex i."""
    n = len(pts)

    def at(s: float) -> np.ndarray:
        k = int(np.floor(s))
        a = s - k
        p = (1 - a) * pts[k % n] + a * pts[(k + 1) % n]
        y, ok = _gauss_newton(sys, _normalize(p)[None, :], params)
        return y[0]

    def cost(s: float) -> float:
        return float(_gamma_norms(parts, at(s)))

    lo, hi = i - 1.0, i + 1.0
    r = (5**0.5 - 1) / 2
    c, d = hi - r * (hi - lo), lo + r * (hi - lo)
    fc, fd = cost(c), cost(d)
    for _ in range(60):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - r * (hi - lo)
            fc = cost(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + r * (hi - lo)
            fd = cost(d)
        if hi - lo < 1e-12:
            break
    return at(0.5 * (lo + hi))


def _degenerate_in(f: RatExpr, comp: LocusComponent, params: LocusParams, parts) -> list[SpherePoint]:
    out = []
    for p, g in zip(comp.points, comp.gammas):
        if g.degenerate:
            out.append(p)
    for p in comp.candidates:
        if _is_degenerate(parts, p.as_real(), params.tau_zero):
            out.append(p)
    if comp.kind is LocusKind.CURVE and len(comp.points) >= 3:
        x = comp.as_array()
        D = _gamma_norms(parts, x)
        n = len(x)
        B = b_function(f)
        systems = _systems(B)
        # only dips well below the typical level; flat profiles have noise minima
        level = 0.5 * float(np.median(D))
        for i in range(n):
            if not comp.closed and (i == 0 or i == n - 1):
                continue
            a, b = D[(i - 1) % n], D[(i + 1) % n]
            if D[i] <= a and D[i] < b and D[i] < min(1e-2, level):
                sys = _pick_system(systems, x[i])
                y = _golden_on_polyline(parts, sys, x, i, params)
                if _is_degenerate(parts, y, params.tau_zero):
                    out.append(_to_points(y)[0])
    # merge duplicates
    if not out:
        return []
    reps = _cluster_reps(_to_real(out), params.cluster_radius)
    return [_to_points(_best(parts, g))[0] for g in reps]


def _best(parts, g: np.ndarray) -> np.ndarray:
    return g[int(np.argmin(_gamma_norms(parts, g)))]


def detect_degenerate(f, comps: list[LocusComponent], params: LocusParams | None = None) -> list[SpherePoint]:
    """All degenerate tangents among ``comps``; Point0D components are always checked."""
    params = params or LocusParams()
    f = as_expr(f)
    parts = gamma_parts(f)
    out = []
    for c in comps:
        if not c.gammas and c.points:
            _fill_gammas(f, c, params, parts)
        out.extend(_degenerate_in(f, c, params, parts))
    return out


__all__ = [
    "LocusComponent",
    "LocusKind",
    "LocusParams",
    "StepCollapse",
    "detect_degenerate",
    "find_components",
    "local_rank",
    "refine_to_locus",
    "sample_sphere",
    "trace_component",
]
