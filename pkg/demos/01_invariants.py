"""Complex tangents and their Bishop invariant, computed symbolically.

Run: python3 demos/01_invariants.py
"""
import math

from bishop import SpherePoint, apply_L, b_function, classify, format_expr, gamma_at, parse_expr

# the graph of f over the unit sphere in C^2 is a real 3-fold in C^3;
# its complex tangents are the zeros of B = conj(L f)
f = parse_expr("0.5*zb^2 + wb")
print("f     =", format_expr(f))
print("L f   =", format_expr(apply_L(f)))
print("B     =", format_expr(b_function(f)))

# B vanishes on the great circle z = 0; the invariant is 1/2 there (parabolic)
for t in (0.0, 1.0, 2.5):
    p = SpherePoint(0, complex(math.cos(t), math.sin(t)))
    g = gamma_at(f, p)
    print(f"w = e^({t}i): gamma = {g.gamma:.12f}  ({classify(g).value})")

# a coefficient in front of zb^2 moves the invariant on the z = 0 circle
for alpha in (0.25, 1.0, 2.0):
    fa = parse_expr(f"{alpha}*zb^2 + wb")
    print(f"alpha = {alpha}: gamma on z = 0 is {gamma_at(fa, SpherePoint(0, 1)).gamma:g}")

# the second Ex2 circle |w| = 1/(2 alpha): the invariant there is 1/(8 alpha^2)
fa = parse_expr("2*zb^2 + wb")
p = SpherePoint(math.sqrt(1 - 1 / 16), 0.25)
print("alpha = 2, |w| = 1/4: gamma =", gamma_at(fa, p).gamma)

# a rational map whose only tangent is degenerate
q = parse_expr("i*zb*(1 - w)^3/(wb - 1)")
g = gamma_at(q, SpherePoint(0, 1))
print("pole map at (0, 1):", classify(g).value, "norms", g.numerator_norm, g.denominator_norm)
