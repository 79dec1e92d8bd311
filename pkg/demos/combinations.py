"""Convex combinations h A + (1 - h) B of corresponding points.

Combining a helix with a translated copy gives a congruent helix, so its
curvature and torsion satisfy (h/kappa_A) kappa + ((1-h)/tau_B) tau = 1.
With closest-point correspondence the pairing changes and the relation no
longer holds exactly.
"""

from moframe import catalog, combination_relation_residual, combine_curves, correspondence_parallelism
from moframe.bertrand import CLOSEST, linear_relation_fit
from moframe.curve import SampleGrid

helix = catalog.get("circular_helix").spec
shifted = helix.translated((0.3, 0.0, 0.4))
grid = SampleGrid.for_curve(helix, 40, -4, 4)

for mode in ("tangent-tangent", "binormal-binormal", "tangent-binormal"):
    print(f"{mode:18s} max sine {correspondence_parallelism(helix, shifted, grid, mode):.2e}")

for h in (0.0, 0.25, 0.5, 0.75, 1.0):
    combined = combine_curves(helix, shifted, h)
    res = combination_relation_residual(helix, shifted, combined, h, grid)
    fit = linear_relation_fit(combined, grid)
    print(f"h = {h:.2f}: relation residual {res:.1e}, fitted (c, ac) = ({fit.c:.6f}, {fit.ac:.6f})")

combined = combine_curves(helix, shifted, 0.5, CLOSEST)
res = combination_relation_residual(helix, shifted, combined, 0.5, grid, CLOSEST)
print(f"closest-point pairing, h = 0.5: relation residual {res:.2e}")
