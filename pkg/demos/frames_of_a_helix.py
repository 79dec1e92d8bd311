"""Frenet and modified frames along a circular helix.

The helix (sin(s/sqrt2), s/sqrt2, cos(s/sqrt2)) is unit speed with
curvature and torsion both 1/2. The modified frame keeps T but scales the
normal and binormal by the curvature, so |N| = |B| = 1/2 here.
"""

import numpy as np

from moframe import catalog, frenet_frame, modified_frame
from moframe.frames import frame_ode_residual

helix = catalog.get("circular_helix").spec
np.set_printoptions(precision=6, suppress=True)

for s in (-2.0, 0.0, 2.0):
    f = frenet_frame(helix, s)
    m = modified_frame(helix, s)
    print(f"s = {s:+.1f}  kappa = {m.kappa:.12f}  tau = {m.tau:.12f}")
    print("  t =", f.t, " n =", f.n, " b =", f.b)
    print("  T =", m.T, " N =", m.N, " B =", m.B)
    print("  frame ODE defects:", ["%.1e" % r for r in frame_ode_residual(helix, s)])

# The modified frame survives where the Frenet frame does not: a straight line.
line = catalog.get("line").spec
m = modified_frame(line, 1.0)
print("\nline: T =", m.T, " N =", m.N, " B =", m.B, " kappa =", m.kappa)
