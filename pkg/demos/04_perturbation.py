"""Removing a degenerate tangent by moving a pole factor off the sphere.

Run: python3 demos/04_perturbation.py
"""
import math

from bishop.shell import run_example, run_perturb

# ex6b: an isolated degenerate point at eps = 0 opens into a small circle w = 1/(1 + eps)
for d in run_perturb("ex6b", [0.2, 0.1, 0.05]):
    print(d.to_dict())

# ex7: the tangent circle stays put, only the degeneracy disappears
(d,) = run_perturb("ex7", [0.1])
print("ex7:", "degeneracy removed" if d.degeneracy_removed else "still degenerate",
      "| locus unchanged" if d.locus_unchanged else "| locus moved")

# ex8: a curve plus a degenerate point become two circles at the roots of 2a t^2 - t - a = 0
eps = 0.1
a = 1 + eps
print("expected w:", [(1 + s * math.sqrt(8 * a * a + 1)) / (4 * a) for s in (1, -1)])
rep = run_example("ex8", eps=eps)
for c in rep.components:
    print(f"found curve at w = {c.points[0].w.real:.6f}, degenerate points: {len(c.degenerate_points)}")
