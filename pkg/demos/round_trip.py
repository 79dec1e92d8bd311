"""Offset a curve along its normal and ask whether the result is a Bertrand mate.

Only curves obeying a linear relation c kappa + a c tau = 1 have mates. The
general helix with kappa = tau = 1/sqrt(8(1 - s^2)) is a helix but its
curvature varies, so no constant c satisfies the relation and the normal
offsets fail the check. Offsetting the unit-radius circular helix by c = 1
lands on its axis, a straight line, which has no principal normal at all.
"""

import math

from moframe import bertrand_mate, catalog, linear_relation_fit, verify_bertrand_pair
from moframe.curve import SampleGrid
from moframe.errors import CurvatureVanishes

ranges = {"general_helix_ex32": (-0.9, 0.9)}
for name in ("circular_helix", "general_helix_ex32", "bertrand_phi", "salkowski"):
    curve = catalog.get(name).spec
    lo, hi = ranges.get(name, curve.domain)
    grid = SampleGrid.uniform(lo, hi, 50)
    fit = linear_relation_fit(curve, grid)
    print(f"{name}: fit c = {fit.c:.6g}, ac = {fit.ac:.6g}, residual {fit.residual:.1e}"
          f"{' (degenerate)' if fit.degenerate else ''}")
    for c in (0.25, 1 / math.sqrt(2), 1.0):
        try:
            r = verify_bertrand_pair(curve, bertrand_mate(curve, c), grid)
        except CurvatureVanishes as exc:
            print(f"   c = {c:.4f}: mate has no normal ({exc})")
            continue
        worst = max((v, k) for k, v in r.residuals().items() if not math.isnan(v))
        print(f"   c = {c:.4f}: verdict {str(r.verdict):5s}  theta {r.theta:.6f}  worst {worst[1]} {worst[0]:.1e}")
