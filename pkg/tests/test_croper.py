import math

import numpy as np
import pytest

from bishop.croper import (
    RHO,
    GammaResult,
    NotATangent,
    SpherePoint,
    TangentClass,
    apply_L,
    apply_Lbar,
    b_determinant,
    b_function,
    classify,
    gamma_at,
    gamma_from_B,
    gamma_parts,
)
from bishop.expr import arith, conjugate, evaluate
from bishop.parsing import parse_expr

from oracles import fd_gamma

S = math.sqrt(0.5)


def same_up_to_sign(a, b):
    return a == b or a == -b


def test_sphere_point_checked():
    SpherePoint.checked(S, S)
    with pytest.raises(ValueError):
        SpherePoint.checked(1, 1)


def test_apply_L_examples():
    assert apply_L(parse_expr("0.5*zb^2 + wb")) == parse_expr("z - w*zb")
    assert apply_L(parse_expr("z^3 - w^2 + 4*z*w")).is_zero()
    assert apply_L(parse_expr("zb*wb")) == parse_expr("z*zb - w*wb")


def test_apply_Lbar_examples():
    assert apply_Lbar(parse_expr("z - w*zb")) == parse_expr("-1*zb^2 - wb")
    assert apply_Lbar(RHO).is_zero()
    assert apply_L(RHO).is_zero()
    e = parse_expr("z*wb^2 + 3*i*zb - w")
    assert apply_Lbar(conjugate(e)) == conjugate(apply_L(e))


def test_b_function_examples():
    # B = conj(L f); sign relative to the printed convention is immaterial for zeros and norms
    assert same_up_to_sign(b_function(parse_expr("zb*wb")), parse_expr("w*wb - z*zb"))
    assert b_function(parse_expr("z^2 + w")).is_zero()
    assert same_up_to_sign(b_function(parse_expr("0.5*zb^2 + wb")), parse_expr("wb*z - zb"))


def test_b_determinant_examples():
    f = parse_expr("0.5*zb^2 + wb")
    p = SpherePoint(0, 1j)
    assert abs(b_determinant(f, p) - evaluate(b_function(f), p.z, p.w)) < 1e-10
    assert abs(b_determinant(parse_expr("z^2*w + 3*w"), SpherePoint(0.6, 0.8j))) < 1e-12
    assert abs(b_determinant(parse_expr("zb*wb"), SpherePoint(S, S))) < 1e-10


def test_b_determinant_matches_b_function_off_locus():
    f = parse_expr("z*wb^2 + zb*wb - 2*i*zb^3")
    rng = np.random.default_rng(2)
    for _ in range(50):
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        p = SpherePoint(complex(v[0], v[1]), complex(v[2], v[3]))
        assert abs(b_determinant(f, p) - evaluate(b_function(f), p.z, p.w)) < 1e-12


def test_gamma_parts_examples():
    a, b = gamma_parts(parse_expr("0.5*zb^2 + wb"))
    assert same_up_to_sign(a, parse_expr("w^2")) and same_up_to_sign(b, parse_expr("-1*zb^2 - wb"))
    a, b = gamma_parts(parse_expr("3*zb^2 + wb"))
    assert same_up_to_sign(a, parse_expr("6*w^2")) and same_up_to_sign(b, parse_expr("-6*zb^2 - wb"))
    a, b = gamma_parts(parse_expr("zb^2*w + wb^2*z"))
    assert same_up_to_sign(a, parse_expr("2*z^3 + 2*w^3"))
    assert same_up_to_sign(b, parse_expr("-4*w*zb^2 - 4*z*wb^2"))


@pytest.mark.parametrize("theta", [0.0, 1.0, 2.5, -2.0])
def test_gamma_ex1(theta):
    g = gamma_at(parse_expr("0.5*zb^2 + wb"), SpherePoint(0, np.exp(1j * theta)))
    assert abs(g.gamma - 0.5) < 1e-12
    assert classify(g) is TangentClass.PARABOLIC


def test_gamma_ex3_diagonal():
    g = gamma_at(parse_expr("zb^2*w + wb^2*z"), SpherePoint(S, S))
    assert abs(g.gamma - 0.25) < 1e-12
    assert classify(g) is TangentClass.ELLIPTIC


def test_gamma_ex4_torus_knot():
    f = parse_expr("z*wb + w^2*zb")
    # z^2 = w^3 with |z|^2 + |w|^2 = 1: |w| = r solves r^2 + r^3 = 1
    r = float(np.roots([1, 1, 0, -1])[np.isreal(np.roots([1, 1, 0, -1]))].real[0])
    for t in np.linspace(0, 2 * np.pi, 7):
        p = SpherePoint(r**1.5 * np.exp(3j * t), r * np.exp(2j * t))
        g = gamma_at(f, p)
        assert g.gamma == 0.0
        assert classify(g) is TangentClass.ELLIPTIC


def test_gamma_ex6_degenerate():
    q = parse_expr("i*zb*(1-w)^3/(wb-1)")
    g = gamma_at(q, SpherePoint(0, 1))
    assert g.degenerate and math.isnan(g.gamma)
    assert classify(g) is TangentClass.DEGENERATE


def test_gamma_at_rejects_non_tangent():
    with pytest.raises(NotATangent):
        gamma_at(parse_expr("0.5*zb^2 + wb"), SpherePoint(1, 0))


def test_gamma_infinite_on_ex2_tail():
    g = gamma_at(parse_expr("wb^2"), SpherePoint(1, 0))
    assert math.isinf(g.gamma) and not g.degenerate
    assert classify(g) is TangentClass.HYPERBOLIC_INFINITY


def test_gamma_from_B_torus_is_parabolic():
    B = parse_expr("z*zb - w*wb")
    for t in np.linspace(0, 6, 5):
        g = gamma_from_B(B, SpherePoint(S * np.exp(1j * t), S * np.exp(-2j * t)))
        assert abs(g.gamma - 0.5) < 1e-12


def test_gamma_from_B_agrees_with_gamma_at():
    f = parse_expr("z*wb^2 + zb*wb")
    x = 0.2695944364054446
    p = SpherePoint(math.sqrt(x), (1 - 2 * x) / (2 * x))
    a, b = gamma_at(f, p), gamma_from_B(b_function(f), p)
    assert abs(a.gamma - b.gamma) < 1e-10 * a.gamma


def test_gamma_matches_fd_oracle_ex2():
    f = parse_expr("2*zb^2 + wb")
    p = SpherePoint(math.sqrt(15) / 4, 0.25)
    want = fd_gamma(f, p)[0]
    assert abs(gamma_at(f, p).gamma - want) < 1e-6
    assert abs(want - 1 / 32) < 1e-6


def test_classify_examples():
    mk = lambda g, d=False: GammaResult(1.0, 1.0, g, d)
    assert classify(mk(0.5)) is TangentClass.PARABOLIC
    assert classify(mk(0.5 + 5e-7)) is TangentClass.PARABOLIC
    assert classify(mk(0.0)) is TangentClass.ELLIPTIC
    assert classify(mk(math.inf)) is TangentClass.HYPERBOLIC_INFINITY
    assert classify(mk(0.7)) is TangentClass.HYPERBOLIC
    assert classify(mk(math.nan, True)) is TangentClass.DEGENERATE


def test_representative_independence_mod_sphere():
    rng = np.random.default_rng(5)
    g = parse_expr("z*wb^2 - 2*i*zb*w + wb^3")
    e = apply_L(arith(RHO, g, "mul"))
    e_bar = apply_Lbar(arith(RHO, g, "mul"))
    for _ in range(100):
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        z, w = complex(v[0], v[1]), complex(v[2], v[3])
        assert abs(evaluate(e, z, w)) < 1e-10
        assert abs(evaluate(e_bar, z, w)) < 1e-10


def test_real_factor_gives_parabolic():
    # B = r * g with r real-valued: gamma = 1/2 wherever r = 0 and dr != 0 on the sphere
    r = parse_expr("z*zb - 0.3 + 0.2*(w + wb)")
    g = parse_expr("2 + z*wb")
    B = arith(r, g, "mul")
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(40):
        t1, t2 = rng.uniform(0, 2 * np.pi, 2)
        # solve |z|^2 = 0.3 - 0.4 Re w with |w| = s on the sphere: 1 - s^2 = 0.3 - 0.4 s cos t2
        roots = np.roots([1, -0.4 * np.cos(t2), -0.7])
        for s in roots[(np.abs(roots.imag) < 1e-14) & (roots.real > 0) & (roots.real < 1)].real:
            p = SpherePoint(math.sqrt(1 - s * s) * np.exp(1j * t1), s * np.exp(1j * t2))
            assert abs(gamma_from_B(B, p).gamma - 0.5) < 1e-9
            checked += 1
    assert checked > 10
