"""Frenet apparatus and the modified orthogonal frame.

The modified frame of a unit-speed curve is ``T = x'``, ``N = T'`` and
``B = T x N``. Where the curvature is positive, ``T = t``, ``N = kappa n``
and ``B = kappa b`` in terms of the Frenet frame. Where it vanishes, ``N``
and ``B`` are zero vectors, which is why the modified frame stays defined at
inflection points while the Frenet frame does not.

All functions take a curve and a point given in the curve's *native*
parameter. Derivatives are always arc-length derivatives: general curves are
reparametrized locally and exactly by :func:`moframe.curve.arclength_jets`.
Frame vectors, curvature and torsion do not depend on the choice of
parametrization, so a native-parameter point identifies them uniquely.

Sign conventions: ``b = t x n`` (right-handed) and
``tau = det(x', x'', x''') / kappa^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import vecjet as vj
from .curve import arclength_jets
from .errors import CurvatureVanishes
from .jet import DEFAULT_ORDER, Jet, sqrt

__all__ = [
    "FrenetData", "ModifiedFrameData", "FrameJets", "KAPPA_TOL",
    "frame_jets", "curvature_jet", "torsion_jet", "frenet_frame", "modified_frame",
    "frame_ode_residual", "metric_residual", "ode_torsion",
]

KAPPA_TOL = 1e-12


@dataclass(frozen=True)
class FrenetData:
    s: float
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float
    kappa_jet: Jet
    tau_jet: Jet


@dataclass(frozen=True)
class ModifiedFrameData:
    """Modified frame at one point.

    ``kappa_jet``, ``tau_jet``, ``tau`` and ``kappa_ratio`` (kappa'/kappa) are
    ``None``/NaN when the curvature is below :data:`KAPPA_TOL`.
    """

    s: float
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    kappa_jet: Jet | None
    tau_jet: Jet | None
    kappa_ratio: float


@dataclass(frozen=True)
class FrameJets:
    """Arc-length jets of the position and the modified frame at one point."""

    s: float
    X: tuple
    T: tuple
    N: tuple
    B: tuple
    kappa: float
    kappa_jet: Jet | None
    tau_jet: Jet | None

    def require_curvature(self):
        if self.kappa_jet is None:
            raise CurvatureVanishes(self.s, self.kappa)
        return self

    @property
    def tau(self) -> float:
        return self.tau_jet.value if self.tau_jet is not None else math.nan


def frame_jets(curve, s: float, order: int = DEFAULT_ORDER) -> FrameJets:
    """Position, T, N, B jets (orders K, K-1, K-2, K-2) with kappa and tau jets."""
    X = arclength_jets(curve, s, order)
    T = vj.deriv(X)
    N = vj.deriv(T)
    B = vj.cross(T, N)
    kappa2 = vj.dot(N, N)
    kappa = math.sqrt(max(kappa2.value, 0.0))
    kappa_jet = tau_jet = None
    if kappa > KAPPA_TOL:
        kappa_jet = sqrt(kappa2)
        tau_jet = vj.det3(T, N, vj.deriv(N)) / kappa2
    return FrameJets(float(s), X, T, N, B, kappa, kappa_jet, tau_jet)


def curvature_jet(jets, unit_speed: bool = True) -> Jet:
    """Jet of the curvature from component jets.

    With ``unit_speed`` the jets must be arc-length jets and
    ``kappa = |x''|``; otherwise ``kappa = |x' x x''| / |x'|^3`` and the
    returned derivatives are with respect to the native parameter.
    """
    d1 = vj.deriv(jets)
    d2 = vj.deriv(d1)
    if unit_speed:
        k2 = vj.dot(d2, d2)
        if math.sqrt(max(k2.value, 0.0)) <= KAPPA_TOL:
            raise CurvatureVanishes(jets[0].basepoint, math.sqrt(max(k2.value, 0.0)))
        return sqrt(k2)
    c = vj.cross(d1, d2)
    c2 = vj.dot(c, c)
    v = vj.norm(d1)
    kappa = math.sqrt(max(c2.value, 0.0)) / v.value ** 3
    if kappa <= KAPPA_TOL:
        raise CurvatureVanishes(jets[0].basepoint, kappa)
    return sqrt(c2) / (v * v * v)


def torsion_jet(jets, kappa_jet: Jet) -> Jet:
    """Jet of ``det(x', x'', x''') / kappa^2`` for arc-length jets."""
    if kappa_jet.value <= KAPPA_TOL:
        raise CurvatureVanishes(jets[0].basepoint, kappa_jet.value)
    d1 = vj.deriv(jets)
    d2 = vj.deriv(d1)
    d3 = vj.deriv(d2)
    return vj.det3(d1, d2, d3) / (kappa_jet * kappa_jet)


def frenet_frame(curve, s: float) -> FrenetData:
    fj = frame_jets(curve, s)
    if fj.kappa <= KAPPA_TOL * (1.0 + fj.kappa) or fj.kappa_jet is None:
        raise CurvatureVanishes(s, fj.kappa)
    t = vj.value(fj.T)
    n = vj.value(fj.N) / fj.kappa
    b = np.cross(t, n)
    return FrenetData(float(s), t, n, b, fj.kappa, fj.tau, fj.kappa_jet, fj.tau_jet)


def modified_frame(curve, s: float) -> ModifiedFrameData:
    """Modified frame; succeeds at zero curvature (N = B = 0 there)."""
    return _modified_from_jets(frame_jets(curve, s))


def _modified_from_jets(fj: FrameJets) -> ModifiedFrameData:
    if fj.kappa_jet is not None:
        ratio = fj.kappa_jet[1] / fj.kappa_jet.value
        tau = fj.tau_jet.value
    else:
        ratio = tau = math.nan
    return ModifiedFrameData(fj.s, vj.value(fj.T), vj.value(fj.N), vj.value(fj.B),
                             fj.kappa, tau, fj.kappa_jet, fj.tau_jet, ratio)


def frame_ode_residual(curve, s: float) -> tuple[float, float, float]:
    """Defects of the modified-frame equations at ``s``.

    ``T' = N``, ``N' = -kappa^2 T + (kappa'/kappa) N + tau B`` and
    ``B' = -tau N + (kappa'/kappa) B``; each entry is the Euclidean norm of
    the difference.
    """
    fj = frame_jets(curve, s).require_curvature()
    T, N, B = vj.value(fj.T), vj.value(fj.N), vj.value(fj.B)
    dT, dN, dB = vj.nth(fj.T, 1), vj.nth(fj.N, 1), vj.nth(fj.B, 1)
    kappa = fj.kappa_jet.value
    ratio = fj.kappa_jet[1] / kappa
    tau = fj.tau_jet.value
    r1 = np.linalg.norm(dT - N)
    r2 = np.linalg.norm(dN - (-kappa**2 * T + ratio * N + tau * B))
    r3 = np.linalg.norm(dB - (-tau * N + ratio * B))
    return float(r1), float(r2), float(r3)


def metric_residual(frame: ModifiedFrameData) -> tuple[float, ...]:
    """``|<T,T>-1|, |<N,N>-k^2|, |<B,B>-k^2|, |<T,N>|, |<T,B>|, |<N,B>|``."""
    T, N, B, k2 = frame.T, frame.N, frame.B, frame.kappa**2
    return (
        abs(T @ T - 1.0),
        abs(N @ N - k2),
        abs(B @ B - k2),
        abs(T @ N),
        abs(T @ B),
        abs(N @ B),
    )


def ode_torsion(curve, s: float) -> float:
    """Torsion recovered from ``B' = -tau N + (kappa'/kappa) B`` by least squares."""
    fj = frame_jets(curve, s).require_curvature()
    N, B, dB = vj.value(fj.N), vj.value(fj.B), vj.nth(fj.B, 1)
    ratio = fj.kappa_jet[1] / fj.kappa_jet.value
    rhs = dB - ratio * B
    return float(-(rhs @ N) / (N @ N))
