import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bishop.croper import SpherePoint
from bishop.locus import LocusComponent, LocusKind
from bishop.topo import (
    DELTA_POLE,
    CurvesTooClose,
    NoPoleFound,
    NotClosed,
    PoleTooClose,
    ProjectedComponent,
    R3Point,
    linking_number,
    pole_candidates,
    project_component,
    project_points,
    resample_closed,
    select_pole,
    stereographic_project,
    unproject,
)

from oracles import gauss_linking_midpoint, stereo_from

N_PT = SpherePoint(0, 1)


def circle_component(fn, n=400, cid=0):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    pts = [SpherePoint(*fn(s)) for s in t]
    return LocusComponent(id=cid, kind=LocusKind.CURVE, points=pts, closed=True)


def hopf_pair():
    a = circle_component(lambda t: (np.exp(1j * t), 0), cid=0)
    b = circle_component(lambda t: (0, np.exp(1j * t)), cid=1)
    return a, b


def fiber(phase, n=400, cid=0):
    s = math.sqrt(0.5)
    return circle_component(lambda t: (s * np.exp(1j * t), s * np.exp(1j * (t + phase))), n, cid)


def random_sphere(rng, n):
    x = rng.normal(size=(n, 4))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


# -- projection -------------------------------------------------------------------------


def test_antipode_goes_to_origin():
    q = stereographic_project(SpherePoint(0, -1), N_PT)
    assert max(abs(q.x), abs(q.y), abs(q.z)) < 1e-15


@pytest.mark.parametrize("pole", [N_PT, SpherePoint(1, 0), SpherePoint(0.6, 0.8j), SpherePoint(0, -1)])
def test_antipode_origin_any_pole(pole):
    q = stereographic_project(SpherePoint(-pole.z, -pole.w), pole)
    assert np.linalg.norm(q.as_array()) < 1e-14


def test_round_trip_thousand_points():
    rng = np.random.default_rng(1)
    pole = SpherePoint(0.6, 0.8j)
    qs = rng.normal(size=(1000, 3)) * 3
    for q in qs:
        p = unproject(R3Point(*q), pole)
        back = stereographic_project(p, pole).as_array()
        assert np.linalg.norm(back - q) <= 1e-12 * max(1.0, np.linalg.norm(q) ** 2)


def test_project_then_unproject():
    rng = np.random.default_rng(2)
    x = random_sphere(rng, 500)
    x = x[np.linalg.norm(x - N_PT.as_real(), axis=1) > 0.05]
    for row in x:
        p = SpherePoint(complex(row[0], row[1]), complex(row[2], row[3]))
        back = unproject(stereographic_project(p, N_PT), N_PT)
        assert abs(back.z - p.z) + abs(back.w - p.w) < 1e-12


def test_large_point_lands_near_pole():
    p = unproject(R3Point(1e6, 0, 0), N_PT)
    assert np.linalg.norm(p.as_real() - N_PT.as_real()) < 1e-5


def test_pole_too_close():
    with pytest.raises(PoleTooClose):
        stereographic_project(N_PT, N_PT)
    near = np.array([0, 0, math.sqrt(1 - 1e-8), 1e-4])
    with pytest.raises(PoleTooClose):
        project_points(near, N_PT)


def test_projection_from_e4_matches_plain_formula():
    rng = np.random.default_rng(3)
    x = random_sphere(rng, 200)
    pole = SpherePoint(0, 1j)
    ours = project_points(x, pole)
    plain = stereo_from(x, 3)
    # the rotation fixes e4, so the images differ by an orthogonal map of R^3
    assert np.allclose(np.linalg.norm(ours, axis=1), np.linalg.norm(plain, axis=1), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(0.05, 0.95), st.floats(0, 2 * np.pi))
def test_projection_preserves_distance_ratios_property(t1, r, t2):
    # stereographic projection is conformal: it maps the antipodal great 2-sphere
    # through the origin to the unit sphere of R^3
    pole = SpherePoint(math.sqrt(r) * np.exp(1j * t1), math.sqrt(1 - r) * np.exp(1j * t2))
    rng = np.random.default_rng(0)
    x = random_sphere(rng, 50)
    x = x - np.outer(x @ pole.as_real(), pole.as_real())
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    assert np.allclose(np.linalg.norm(project_points(x, pole), axis=1), 1.0, atol=1e-12)


# -- pole selection -------------------------------------------------------------------


def test_select_pole_empty():
    assert select_pole([]) == N_PT


def test_select_pole_ex5(example):
    assert select_pole(example("ex5").components) == N_PT


def test_select_pole_ex1(example):
    p = select_pole(example("ex1").components)
    assert p == SpherePoint(1, 0)


def test_select_pole_clears_components(example):
    rep = example("ex3")
    p = select_pole(rep.components)
    for c in rep.components:
        assert np.linalg.norm(c.as_array() - p.as_real(), axis=1).min() >= 10 * DELTA_POLE


def test_select_pole_failure():
    comps = [LocusComponent(0, LocusKind.POINT, pole_candidates()[:])]
    with pytest.raises(NoPoleFound):
        select_pole(comps)


def test_pole_candidates_deterministic():
    a, b = pole_candidates(), pole_candidates()
    assert a == b and a[0] == N_PT
    assert all(abs(p.residual()) < 1e-12 for p in a)


# -- linking numbers --------------------------------------------------------------------------


def test_hopf_circles_link_once():
    a, b = hopf_pair()
    pole = SpherePoint(0.6, 0.8 * np.exp(0.7j))
    pa, pb = project_component(a, pole), project_component(b, pole)
    lk = linking_number(pa, pb)
    assert abs(abs(lk) - 1) < 1e-3
    assert abs(lk - gauss_linking_midpoint(resample_closed(pa.as_array(), 3000), resample_closed(pb.as_array(), 3000))) < 1e-2


def test_hopf_fibers_link_once():
    pole = SpherePoint(0.3, 0.9 * np.exp(0.4j))
    pole = SpherePoint(pole.z / math.hypot(abs(pole.z), abs(pole.w)), pole.w / math.hypot(abs(pole.z), abs(pole.w)))
    lk = linking_number(project_component(fiber(0.0), pole), project_component(fiber(np.pi, cid=1), pole))
    assert abs(abs(lk) - 1) < 1e-3


def test_linking_symmetric_and_reversal():
    a, b = hopf_pair()
    pole = SpherePoint(0.6, 0.8j)
    pa, pb = project_component(a, pole), project_component(b, pole)
    lab, lba = linking_number(pa, pb), linking_number(pb, pa)
    assert abs(lab - lba) < 1e-6
    rev = ProjectedComponent(pb.source_id, pb.points[::-1], True)
    assert abs(linking_number(pa, rev) + lab) < 1e-6


def test_unlinked_circles():
    # two disjoint round circles in R^3 far apart
    t = np.linspace(0, 2 * np.pi, 300, endpoint=False)
    c1 = np.stack([np.cos(t), np.sin(t), 0 * t], 1)
    c2 = c1 + [5.0, 0, 0]
    lk = linking_number(ProjectedComponent.from_array(0, c1), ProjectedComponent.from_array(1, c2))
    assert abs(lk) < 1e-3


def test_ex5_linking_two(example):
    rep = example("ex5")
    a, b = rep.components
    lk = linking_number(project_component(a, N_PT), project_component(b, N_PT))
    assert abs(abs(lk) - 2) < 1e-3


def test_ex5_linking_pole_invariant(example):
    rep = example("ex5")
    a, b = rep.components
    base = linking_number(project_component(a, N_PT), project_component(b, N_PT))
    for pole in (SpherePoint(0, -1j), SpherePoint(0.1, math.sqrt(0.99) * np.exp(2j))):
        lk = linking_number(project_component(a, pole), project_component(b, pole))
        assert abs(lk - base) < 1e-3


def test_ex5_against_midpoint_oracle(example):
    rep = example("ex5")
    a, b = (project_component(c, N_PT).as_array() for c in rep.components)
    ours = linking_number(ProjectedComponent.from_array(0, a), ProjectedComponent.from_array(1, b))
    oracle = gauss_linking_midpoint(resample_closed(a, 3000), resample_closed(b, 3000))
    assert abs(ours - oracle) < 1e-2


def test_ex8_curves_unlinked(example):
    rep = example("ex8", eps=0.1)
    pole = select_pole(rep.components)
    a, b = rep.components
    assert abs(linking_number(project_component(a, pole), project_component(b, pole))) < 1e-3


def test_ex2_pair_linking(example):
    rep = example("ex2", alpha=2.0)
    pole = select_pole(rep.components)
    a, b = (project_component(c, pole) for c in rep.components)
    lk = linking_number(a, b)
    oracle = gauss_linking_midpoint(resample_closed(a.as_array(), 3000), resample_closed(b.as_array(), 3000))
    # both curves are Hopf-type circles |w| = const, which link once
    assert abs(abs(lk) - 1) < 1e-3
    assert abs(lk - oracle) < 1e-2


def test_not_closed():
    a, b = hopf_pair()
    pa, pb = project_component(a, SpherePoint(0.6, 0.8j)), project_component(b, SpherePoint(0.6, 0.8j))
    pa.closed = False
    with pytest.raises(NotClosed):
        linking_number(pa, pb)


def test_curves_too_close():
    t = np.linspace(0, 2 * np.pi, 300, endpoint=False)
    c1 = np.stack([np.cos(t), np.sin(t), 0 * t], 1)
    c2 = c1 * (1 + 1e-4)
    with pytest.raises(CurvesTooClose):
        linking_number(ProjectedComponent.from_array(0, c1), ProjectedComponent.from_array(1, c2))


def test_resample_uniform_spacing():
    t = 2 * np.pi * np.linspace(0, 1, 37, endpoint=False) ** 1.3
    c = np.stack([np.cos(t), np.sin(t), 0 * t], 1)
    r = resample_closed(c, 500)
    assert len(r) == 500
    d = np.linalg.norm(np.diff(np.vstack([r, r[:1]]), axis=0), axis=1)
    assert d.max() / d.min() < 1.05
