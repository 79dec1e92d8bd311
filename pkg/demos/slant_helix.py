"""A Salkowski curve: constant curvature, varying torsion, and a fixed axis
making a constant angle with the principal normal.

The slant function tau'/(kappa^2 + tau^2)^(3/2) is constant (equal to -m for
the parameter m of the family), and the axis built from that constant does
not move along the curve.
"""

import numpy as np

from moframe import catalog
from moframe.curve import SampleGrid
from moframe.helix import slant_axis, slant_function_constant_kappa, slant_function_general

for m in (0.3, 0.5, 0.8):
    curve = catalog.get("salkowski", m=m).spec
    grid = SampleGrid.for_curve(curve, 50)
    sf = slant_function_constant_kappa(curve, grid, kappa_threshold=1e-6)
    general = slant_function_general(curve, grid)
    axes = [slant_axis(curve, s, 1.0, sf.mean) for s in grid]
    drift = max(d for _, d in axes)
    axis = axes[0][0] / np.linalg.norm(axes[0][0])
    print(f"m = {m}: slant constant {sf.mean:.12f} (general form {general.mean:.12f}), "
          f"axis {np.round(axis, 9)}, max |U'| {drift:.1e}")

helix = catalog.get("circular_helix").spec
r = slant_function_constant_kappa(helix, SampleGrid.for_curve(helix, 20))
print(f"circular helix: verdict {r.verdict}, note: {r.note!r}")
