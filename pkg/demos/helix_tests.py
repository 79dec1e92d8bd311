"""Three equivalent general-helix tests, and where a textbook identity breaks.

For every curve the triple product det(T', T'', T''') of the modified frame
equals kappa^5 (tau/kappa)'. A frequently quoted variant with 3 kappa^3 in
place of kappa^5 only agrees on helices, where both sides vanish. Both
residuals are printed for a helix, the twisted cubic and a Salkowski curve.
"""

from moframe import catalog
from moframe.curve import SampleGrid
from moframe.helix import classify

for name in ("circular_helix", "general_helix_ex32", "twisted_cubic", "salkowski"):
    curve = catalog.get(name).spec
    result = classify(curve, SampleGrid.for_curve(curve, 60))
    det = result.det_test
    print(f"{name}")
    print(f"  tau/kappa constant: {result.lancret.verdict}  (mean {result.lancret.mean:.6g}, "
          f"rel. variation {result.lancret.rel_variation:.1e})")
    print(f"  det test:           {det.verdict}  (max |det| {det.max_abs_det:.2e})")
    print(f"  operator test:      {result.operator_verdict}  "
          f"(max residual {max(r.residual for r in result.operator):.2e})")
    print(f"  |det - kappa^5 (tau/kappa)'|   = {det.kappa5_identity_residual:.2e}")
    print(f"  |det - 3 kappa^3 (tau/kappa)'| = {det.identity_residual:.2e}")
