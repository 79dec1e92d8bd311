"""Bertrand mates: normal offsets whose principal normals stay parallel.

A left-handed helix with kappa = sqrt2 and tau = -sqrt2 and its offset by
1/sqrt2 along the normal meet at a right angle. The circular helix offset by
1/2 gives a helix of curvature 0.4 and torsion 0.8 with cot(theta) = 3.
"""

import math

import numpy as np

from moframe import bertrand_mate, catalog, verify_bertrand_pair
from moframe.curve import SampleGrid, position

phi = catalog.get("bertrand_phi").spec
psi = catalog.get("bertrand_psi").spec
grid = SampleGrid.for_curve(phi, 50)

mate = bertrand_mate(phi, 1 / math.sqrt(2))
gap = max(np.abs(position(mate, s) - position(psi, s)).max() for s in grid)
print(f"constructed mate vs stored partner: max coordinate gap {gap:.1e}")

r = verify_bertrand_pair(phi, psi, grid)
print(f"theta = {r.theta:.12f} (pi/2 = {math.pi / 2:.12f}), c = {r.c_offset:.12f}, verdict {r.verdict}")
print(f"tau_phi * tau_psi = {r.tau_a[0] * r.tau_b[0]:.12f}, (sin theta / c)^2 = "
      f"{(math.sin(r.theta) / r.c_offset) ** 2:.12f}")

helix = catalog.get("circular_helix").spec
r = verify_bertrand_pair(helix, bertrand_mate(helix, 0.5), SampleGrid.for_curve(helix, 50))
print(f"\ncircular helix, c = 1/2: a = {r.a:.12f}, kappa_mate = {r.kappa_b[0]:.12f}, "
      f"tau_mate = {r.tau_b[0]:.12f}")
for key, value in r.residuals().items():
    print(f"  {key:28s} {value:.1e}")

translate = helix.translated((0.3, 0.0, 0.4))
r = verify_bertrand_pair(helix, translate, SampleGrid.for_curve(helix, 50))
print(f"\ntranslate: normals parallel to {r.residual_normal_parallelism:.1e}, "
      f"but offset off the normal by {r.residual_offset_parallelism:.2f}; verdict {r.verdict}")
