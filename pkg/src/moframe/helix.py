"""General-helix and slant-helix tests with residual evidence.

General helix (Lancret): ``tau/kappa`` is constant. Two equivalent tests are
provided alongside it: the triple product ``det(T', T'', T''')`` of the
modified frame vanishes, and the third derivative of ``T`` satisfies

    T''' = mu N + 3 (kappa'/kappa) N',
    mu = kappa''/kappa - kappa^2 - tau^2 - 3 (kappa'/kappa)^2.

For any unit-speed curve ``det(T', T'', T''') = kappa^5 (tau/kappa)'``
(``T'``, ``T''``, ``T'''`` expressed in the modified frame, whose own triple
product is ``kappa^2``). The often quoted form ``3 kappa^3 (tau/kappa)'``
agrees with it only where both vanish, i.e. on helices; both residuals are
reported by :func:`helix_det_test`.

Slant helix: ``kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2)`` is constant;
for constant curvature the test is usually written
``tau' / (kappa^2 + tau^2)^(3/2)``. General helices are degenerate slant
helices (the function is identically zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import vecjet as vj
from ._parallel import grid_map
from .curve import SampleGrid
from .errors import CurvatureVanishes, NonConstantCurvature
from .frames import FrameJets, frame_jets

__all__ = [
    "ConstancyReport", "DetTestResult", "OperatorResidual", "HelixClassification",
    "constancy_report", "lancret_ratio", "helix_det_test", "helix_operator_residual",
    "slant_function_constant_kappa", "slant_function_general", "slant_axis",
    "classify", "DEFAULT_THRESHOLD",
]

DEFAULT_THRESHOLD = 1e-8
REL_FLOOR = 1e-6  # absolute zero band: floor * threshold = 1e-14
DEGENERATE_TOL = 1e-12
MIN_SURVIVAL = 0.9
EQUIVALENCE_BASE_TOL = 1e-7


@dataclass(frozen=True)
class ConstancyReport:
    """Grid statistics of a scalar function; ``verdict`` means "constant"."""

    label: str
    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    mean: float
    max_abs_dev: float
    rel_variation: float
    verdict: bool
    threshold: float
    skipped: tuple = ()
    note: str = ""


def constancy_report(label, grid, values, threshold=DEFAULT_THRESHOLD, skipped=(), note=""):
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    # sequential reduction keeps reported statistics reproducible
    mean = math.fsum(values) / len(values)
    dev = float(np.max(np.abs(values - mean)))
    rel = dev / max(abs(mean), REL_FLOOR)
    return ConstancyReport(label, grid, values, mean, dev, rel, bool(rel <= threshold),
                           threshold, tuple(skipped), note)


def _survivors(curve, grid: SampleGrid, fn):
    """Evaluate ``fn(frame_jets)`` on the grid, skipping zero-curvature points.

    At most 10% of the grid may be skipped; beyond that the first failure is
    re-raised.
    """
    def one(t):
        try:
            return fn(frame_jets(curve, t).require_curvature())
        except CurvatureVanishes as exc:
            return exc

    results = grid_map(one, list(grid))
    kept_t, kept_v, skipped = [], [], []
    first = None
    for t, r in zip(grid, results):
        if isinstance(r, CurvatureVanishes):
            skipped.append(t)
            first = first or r
        else:
            kept_t.append(t)
            kept_v.append(r)
    if len(kept_t) < MIN_SURVIVAL * len(grid) or not kept_t:
        raise first
    return kept_t, kept_v, skipped


def lancret_ratio(curve, grid: SampleGrid, threshold: float = DEFAULT_THRESHOLD) -> ConstancyReport:
    """Constancy of ``tau/kappa``; constant exactly for general helices."""
    ts, vals, skipped = _survivors(curve, grid, lambda fj: fj.tau_jet.value / fj.kappa_jet.value)
    return constancy_report("tau/kappa", ts, vals, threshold, skipped)


def _ratio_derivative(fj: FrameJets) -> float:
    return (fj.tau_jet / fj.kappa_jet)[1]


@dataclass(frozen=True)
class DetTestResult:
    grid: np.ndarray = field(repr=False)
    det_values: np.ndarray = field(repr=False)
    max_abs_det: float
    identity_residual: float          # max |det - 3 kappa^3 (tau/kappa)'|
    kappa5_identity_residual: float   # max |det - kappa^5 (tau/kappa)'|
    tolerance: float                  # base tolerance scaled by max(1, max |3 kappa^3|)
    skipped: tuple = ()

    @property
    def verdict(self) -> bool:
        return self.max_abs_det <= self.tolerance


def _det_point(fj: FrameJets):
    T = fj.T
    det = float(np.linalg.det(np.column_stack([vj.nth(T, 1), vj.nth(T, 2), vj.nth(T, 3)])))
    k = fj.kappa_jet.value
    dr = _ratio_derivative(fj)
    return det, 3.0 * k**3 * dr, k**5 * dr, 3.0 * k**3


def helix_det_test(curve, grid: SampleGrid, base_tol: float = EQUIVALENCE_BASE_TOL) -> DetTestResult:
    """Triple product ``det(T', T'', T''')`` over the grid with both closed forms."""
    ts, rows, skipped = _survivors(curve, grid, _det_point)
    rows = np.array(rows)
    det = rows[:, 0]
    return DetTestResult(
        np.array(ts), det,
        float(np.max(np.abs(det))),
        float(np.max(np.abs(det - rows[:, 1]))),
        float(np.max(np.abs(det - rows[:, 2]))),
        base_tol * max(1.0, float(np.max(np.abs(rows[:, 3])))),
        tuple(skipped),
    )


@dataclass(frozen=True)
class OperatorResidual:
    s: float
    residual: float
    mu: float
    # components of T''' along (T, N, B): -3 k k', k''/k - k^2 - tau^2, 2 (k'/k) tau + tau'
    expansion: tuple
    expansion_residual: float


def helix_operator_residual(curve, s: float) -> OperatorResidual:
    """``|T''' - (mu N + 3 (kappa'/kappa) N')|`` from arc-length jets."""
    fj = frame_jets(curve, s).require_curvature()
    kj, tj = fj.kappa_jet, fj.tau_jet
    k, k1, k2 = kj[0], kj[1], kj[2]
    tau, tau1 = tj[0], tj[1]
    ratio = k1 / k
    mu = k2 / k - k * k - tau * tau - 3.0 * ratio * ratio
    T3 = vj.nth(fj.T, 3)
    N, dN = vj.value(fj.N), vj.nth(fj.N, 1)
    residual = float(np.linalg.norm(T3 - (mu * N + 3.0 * ratio * dN)))
    coeffs = (-3.0 * k * k1, k2 / k - k * k - tau * tau, 2.0 * ratio * tau + tau1)
    T, B = vj.value(fj.T), vj.value(fj.B)
    general = coeffs[0] * T + coeffs[1] * N + coeffs[2] * B
    return OperatorResidual(float(s), residual, float(mu), coeffs,
                            float(np.linalg.norm(T3 - general)))


def slant_function_constant_kappa(curve, grid: SampleGrid, threshold: float = DEFAULT_THRESHOLD,
                                  kappa_threshold: float | None = None) -> ConstancyReport:
    """Constancy of ``tau' / (kappa^2 + tau^2)^(3/2)`` on a constant-curvature curve.

    Raises :class:`NonConstantCurvature` unless the curvature itself passes
    a constancy check at ``kappa_threshold`` (defaults to ``threshold``).
    """
    kappa_threshold = threshold if kappa_threshold is None else kappa_threshold
    ts, rows, skipped = _survivors(
        curve, grid, lambda fj: (fj.kappa_jet.value, fj.tau_jet.value, fj.tau_jet[1]))
    rows = np.array(rows)
    kappa_report = constancy_report("kappa", ts, rows[:, 0], kappa_threshold)
    if not kappa_report.verdict:
        raise NonConstantCurvature(
            f"curvature varies by {kappa_report.rel_variation:.3e} (relative) on the grid")
    k, tau, tau1 = rows[:, 0], rows[:, 1], rows[:, 2]
    values = tau1 / (k**2 + tau**2) ** 1.5
    notes = []
    if np.max(np.abs(tau1)) <= DEGENERATE_TOL * max(1.0, float(np.max(np.abs(tau)))):
        notes.append("slant (degenerate: tau'=0)")
    return constancy_report("tau'/(kappa^2+tau^2)^(3/2)", ts, values, threshold, skipped,
                            "; ".join(notes))


def slant_function_general(curve, grid: SampleGrid, threshold: float = DEFAULT_THRESHOLD) -> ConstancyReport:
    """Constancy of ``kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2)``."""
    def fn(fj):
        k, tau = fj.kappa_jet.value, fj.tau_jet.value
        return k * k * _ratio_derivative(fj) / (k * k + tau * tau) ** 1.5

    ts, vals, skipped = _survivors(curve, grid, fn)
    return constancy_report("kappa^2 (tau/kappa)'/(kappa^2+tau^2)^(3/2)", ts, vals, threshold, skipped)


def slant_axis(curve, s: float, m: float, c: float):
    """Candidate axis ``U = m tau/w T + m/w B + c N`` with ``w = sqrt(kappa^2 + tau^2)``.

    Returns ``(U, |U'|)``. On a slant helix with constant curvature the axis
    is constant, ``|U'| = 0``, when ``c = m * tau'/w^3``.
    """
    fj = frame_jets(curve, s).require_curvature()
    kj, tj = fj.kappa_jet, fj.tau_jet
    w = (kj * kj + tj * tj) ** 0.5
    U = vj.add(vj.add(vj.scale(fj.T, tj * m / w), vj.scale(fj.B, m / w)), vj.scale(fj.N, c))
    return vj.value(U), float(np.linalg.norm(vj.nth(U, 1)))


@dataclass(frozen=True)
class HelixClassification:
    lancret: ConstancyReport
    det_test: DetTestResult
    operator: tuple
    operator_tolerance: float
    slant_general: ConstancyReport
    slant_constant_kappa: ConstancyReport | None
    slant_constant_kappa_error: str | None

    @property
    def general_helix(self) -> bool:
        return self.lancret.verdict

    @property
    def operator_verdict(self) -> bool:
        return all(r.residual <= self.operator_tolerance for r in self.operator)

    @property
    def criteria_agree(self) -> bool:
        return self.lancret.verdict == self.det_test.verdict == self.operator_verdict

    @property
    def slant_helix(self) -> bool:
        return self.slant_general.verdict


def classify(curve, grid: SampleGrid, threshold: float = DEFAULT_THRESHOLD,
             operator_points: int = 10, base_tol: float = EQUIVALENCE_BASE_TOL) -> HelixClassification:
    """Run every helix and slant-helix test on one grid."""
    lancret = lancret_ratio(curve, grid, threshold)
    det = helix_det_test(curve, grid, base_tol)
    idx = np.unique(np.linspace(0, len(lancret.grid) - 1, min(operator_points, len(lancret.grid))).round().astype(int))
    operator = tuple(helix_operator_residual(curve, float(lancret.grid[i])) for i in idx)
    general = slant_function_general(curve, grid, threshold)
    try:
        constant_kappa = slant_function_constant_kappa(curve, grid, threshold)
        err = None
    except NonConstantCurvature as exc:
        constant_kappa, err = None, str(exc)
    return HelixClassification(lancret, det, operator, det.tolerance, general, constant_kappa, err)
