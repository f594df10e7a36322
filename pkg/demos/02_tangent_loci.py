"""Finding and tracing the whole tangent locus of a map.

Run: python3 demos/02_tangent_loci.py
"""
from collections import Counter

import numpy as np

from bishop.shell import run_analyze, run_example

# five great circles: two on the axes (gamma = inf), three diagonal ones (gamma = 1/4)
rep = run_example("ex3")
for c in rep.components:
    x = c.as_array()
    g = np.array([r.gamma for r in c.gammas])
    print(f"component {c.id}: {c.kind.value}, {len(x)} points, closed={c.closed}, "
          f"gamma in [{g.min():.4g}, {g.max():.4g}], classes {dict(Counter(k.value for k in c.classes))}")

# two linked circles on the tori |z|^2 = x with 4x^3 - 4x + 1 = 0
rep = run_example("ex5")
for c in rep.components:
    z = c.as_array()[:, :2]
    print(f"ex5 curve on |z|^2 = {np.mean(np.sum(z * z, axis=1)):.6f}, class {c.classes[0].value}")
for note in rep.notes:
    print("note:", note)

# a real factor of B gives a whole surface of parabolic tangents
rep = run_analyze("zb*wb")
(c,) = rep.components
print(f"zb*wb: {c.kind.value} with {len(c.points)} cloud points, gamma = {c.gammas[0].gamma}")

# an isolated, degenerate tangent
rep = run_example("ex6")
print("ex6:", rep.components[0].kind.value, "at", rep.degenerate_points)
