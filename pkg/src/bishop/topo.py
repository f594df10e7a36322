"""Stereographic export of tangent components and Gauss linking numbers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .croper import SpherePoint
from .locus import LocusComponent

DELTA_POLE = 1e-3
MIN_SEGMENTS = 2000
MAX_SEGMENTS = 4000
N_POLE_CANDIDATES = 64


class PoleTooClose(ValueError):
    """The point to project is within the exclusion radius of the pole."""


class NoPoleFound(RuntimeError):
    """Every candidate pole lies too close to some component."""


class CurvesTooClose(ValueError):
    """The curves come closer than the linking-number resolution allows."""


class NotClosed(ValueError):
    """Linking numbers are defined for closed curves only."""


@dataclass(frozen=True)
class R3Point:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass
class ProjectedComponent:
    source_id: int
    points: list[R3Point]
    closed: bool

    @classmethod
    def from_array(cls, source_id: int, xyz, closed: bool = True) -> ProjectedComponent:
        return cls(source_id, [R3Point(*map(float, r)) for r in np.asarray(xyz)], closed)

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y, p.z] for p in self.points]).reshape(-1, 3)


def _rotation(pole: SpherePoint) -> np.ndarray:
    """A rotation in SO(4) taking ``pole`` to (0, 0, 0, 1)."""
    p = pole.as_real()
    p = p / np.linalg.norm(p)
    e4 = np.array([0.0, 0.0, 0.0, 1.0])
    v = p - e4
    vv = float(v @ v)
    if vv < 1e-30:
        return np.eye(4)
    house = np.eye(4) - 2.0 * np.outer(v, v) / vv
    # the reflection has det -1; flipping the first axis (which fixes e4) restores det +1
    return np.diag([-1.0, 1.0, 1.0, 1.0]) @ house


def project_points(x: np.ndarray, pole: SpherePoint) -> np.ndarray:
    R = _rotation(pole)
    y = np.atleast_2d(x) @ R.T
    d = np.linalg.norm(np.atleast_2d(x) - pole.as_real(), axis=1)
    if np.any(d < DELTA_POLE):
        raise PoleTooClose(f"point within {DELTA_POLE} of the pole")
    return y[:, :3] / (1.0 - y[:, 3:4])


def stereographic_project(p: SpherePoint, pole: SpherePoint) -> R3Point:
    """Stereographic image in R^3 of ``p``, projecting from ``pole``."""
    return R3Point(*map(float, project_points(p.as_real(), pole)[0]))


def _unproject_real(q: np.ndarray, pole: SpherePoint) -> np.ndarray:
    q = np.atleast_2d(q)
    s = np.sum(q * q, axis=1, keepdims=True)
    y = np.hstack([2.0 * q, s - 1.0]) / (s + 1.0)
    return y @ _rotation(pole)


def unproject(q: R3Point, pole: SpherePoint) -> SpherePoint:
    x = _unproject_real(q.as_array(), pole)[0]
    x = x / np.linalg.norm(x)
    return SpherePoint(complex(x[0], x[1]), complex(x[2], x[3]))


def pole_candidates(n: int = N_POLE_CANDIDATES) -> list[SpherePoint]:
    fixed = [(0, 1), (0, -1), (1, 0), (-1, 0), (0, 1j), (0, -1j), (1j, 0), (-1j, 0)]
    out = [SpherePoint(z, w) for z, w in fixed]
    if n > len(fixed):
        # deterministic filler: unscrambled Halton points in Hopf coordinates
        u = qmc.Halton(d=3, scramble=False).random(n - len(fixed) + 1)[1:]
        c, s = np.sqrt(u[:, 0]), np.sqrt(1 - u[:, 0])
        for ci, si, t1, t2 in zip(c, s, 2 * np.pi * u[:, 1], 2 * np.pi * u[:, 2]):
            out.append(SpherePoint(ci * np.exp(1j * t1), si * np.exp(1j * t2)))
    return out[:n]


def select_pole(comps: list[LocusComponent], clearance: float = 10 * DELTA_POLE) -> SpherePoint:
    """First candidate pole at distance >= ``clearance`` from every component point."""
    pts = [c.as_array() for c in comps if c.points]
    tree = cKDTree(np.vstack(pts)) if pts else None
    for cand in pole_candidates():
        if tree is None or tree.query(cand.as_real())[0] >= clearance:
            return cand
    raise NoPoleFound("all candidate poles are too close to the locus")


def project_component(comp: LocusComponent, pole: SpherePoint) -> ProjectedComponent:
    xyz = project_points(comp.as_array(), pole)
    return ProjectedComponent.from_array(comp.id, xyz, comp.closed)


def resample_closed(xyz: np.ndarray, n: int) -> np.ndarray:
    """``n`` points at uniform arc length along the closed polyline ``xyz``."""
    loop = np.vstack([xyz, xyz[:1]])
    seg = np.linalg.norm(np.diff(loop, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    t = np.linspace(0.0, s[-1], n, endpoint=False)
    return np.stack([np.interp(t, s, loop[:, k]) for k in range(3)], axis=1)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _unit(v):
    n = np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    n = np.where(n > 0, n, np.inf)
    return (v[0] / n, v[1] / n, v[2] / n)


def _solid_angles(p1, p2, p3, p4) -> np.ndarray:
    """Signed solid angle of every segment pair (p1->p2, p3->p4), exact for straight segments.

    Arguments are coordinate triples of broadcastable arrays.
    """
    sub = lambda a, b: (a[0] - b[0], a[1] - b[1], a[2] - b[2])
    r13, r14, r23, r24 = sub(p3, p1), sub(p4, p1), sub(p3, p2), sub(p4, p2)
    n = [_unit(_cross(r13, r14)), _unit(_cross(r14, r24)), _unit(_cross(r24, r23)), _unit(_cross(r23, r13))]
    total = 0.0
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 0)):
        d = n[a][0] * n[b][0] + n[a][1] * n[b][1] + n[a][2] * n[b][2]
        total = total + np.arcsin(np.clip(d, -1.0, 1.0))
    c = _cross(sub(p4, p3), sub(p2, p1))
    orient = c[0] * r13[0] + c[1] * r13[1] + c[2] * r13[2]
    return total * np.sign(orient)


def linking_number(a: ProjectedComponent, b: ProjectedComponent, chunk: int = 256) -> float:
    """Gauss linking number of two closed polylines in R^3."""
    if not (a.closed and b.closed):
        raise NotClosed("linking number needs two closed curves")
    xa, xb = a.as_array(), b.as_array()
    na = int(np.clip(len(xa), MIN_SEGMENTS, MAX_SEGMENTS))
    nb = int(np.clip(len(xb), MIN_SEGMENTS, MAX_SEGMENTS))
    xa, xb = resample_closed(xa, na), resample_closed(xb, nb)
    if cKDTree(xb).query(xa)[0].min() < DELTA_POLE:
        raise CurvesTooClose("curves closer than 1e-3")
    a2 = np.roll(xa, -1, axis=0)
    b1 = tuple(xb[None, :, k] for k in range(3))
    b2 = tuple(np.roll(xb, -1, axis=0)[None, :, k] for k in range(3))
    partial = []
    for i in range(0, na, chunk):
        p1 = tuple(xa[i : i + chunk, k, None] for k in range(3))
        p2 = tuple(a2[i : i + chunk, k, None] for k in range(3))
        partial.append(np.sum(_solid_angles(p1, p2, b1, b2)))
    return float(np.sum(partial) / (4 * np.pi))


__all__ = [
    "CurvesTooClose",
    "DELTA_POLE",
    "NoPoleFound",
    "NotClosed",
    "PoleTooClose",
    "ProjectedComponent",
    "R3Point",
    "linking_number",
    "pole_candidates",
    "project_component",
    "project_points",
    "resample_closed",
    "select_pole",
    "stereographic_project",
    "unproject",
]
