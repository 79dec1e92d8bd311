"""Bertrand mates, pair verification and convex-combination constructions.

A Bertrand mate of a unit-speed curve ``x`` is the normal offset
``y(s) = x(s) + c n(s)`` (equivalently ``x + (c/kappa) N`` in the modified
frame). For a genuine Bertrand curve the principal normals of ``x`` and ``y``
are parallel, the distance ``|c|`` and the tangent angle ``theta`` are
constant, and ``c kappa + a c tau = 1`` with ``a = cot(theta)``.

Pair verification measures normal parallelism between *unit* normals and,
separately, whether the offset ``y - x`` lies along ``n_x``; the latter is
what excludes mere translates, which have parallel normals too.

``theta`` is reported in ``[0, pi]`` after orienting the mate's tangent,
point by point, so that its binormal component ``<t_y, b_x>`` is
non-negative. Reversing a
curve maps ``theta`` to ``theta + pi`` and leaves ``cot(theta)`` unchanged,
so this is the orientation in which ``a = cot(theta)`` satisfies the linear
relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import vecjet as vj
from ._parallel import grid_map
from .curve import DerivedCurve, SampleGrid, position
from .errors import CorrespondenceFailure, CurvatureVanishes
from .frames import KAPPA_TOL, frame_jets
from .helix import DEFAULT_THRESHOLD, REL_FLOOR
from .jet import Jet, jet_compose

__all__ = [
    "BertrandPairReport", "LinearFit", "MateIdentities", "bertrand_mate", "verify_bertrand_pair",
    "mate_identities", "linear_relation_fit", "combine_curves", "correspondence_parallelism",
    "combination_relation_residual", "corresponding_parameter", "SHARED", "CLOSEST",
]

SHARED = "shared-parameter"
CLOSEST = "closest-point"
TRIVIAL_OFFSET = 1e-12
SIN_TOL = 1e-9


def _unit_normal_jets(J):
    """Unit tangent, normal and binormal jets (native parameter) from position jets."""
    d1 = vj.deriv(J)
    d2 = vj.deriv(d1)
    cr = vj.cross(d1, d2)
    crn = vj.norm(cr) if vj.dot(cr, cr).value > 0 else None
    v = vj.norm(d1)
    if crn is None or crn.value / v.value**3 <= KAPPA_TOL:
        kappa = 0.0 if crn is None else crn.value / v.value**3
        raise CurvatureVanishes(J[0].basepoint, kappa)
    t = vj.scale(d1, 1.0 / v)
    b = vj.scale(cr, 1.0 / crn)
    return t, vj.cross(b, t), b


def bertrand_mate(curve, c: float) -> DerivedCurve:
    """Offset curve ``curve + c n`` sharing the parent's parameter.

    The offset uses the unit principal normal, so it is the same curve as
    ``curve + (c/kappa) N``. The mate is generally not unit speed.
    """
    c = float(c)
    name = getattr(curve, "name", "curve")

    def evaluator(t, order):
        if c == 0.0:
            return curve.jets(t, order)
        J = curve.jets(t, order + 2)
        _, n, _ = _unit_normal_jets(J)
        return vj.truncate(vj.add(J, vj.scale(n, c)), order)

    return DerivedCurve(evaluator, curve.domain, f"Bertrand mate of {name} with c={c!r}",
                        unit_speed=curve.unit_speed and c == 0.0, name=f"{name}_mate")


def corresponding_parameter(curve_a, curve_b, t: float, seed: float | None = None,
                            tol: float = 1e-13, max_iter: int = 60) -> float:
    """Parameter ``u`` of the point on ``curve_b`` closest to ``curve_a(t)``.

    Newton on ``<B(u) - A(t), B'(u)> = 0``; without a seed the start is the
    best of 201 uniform samples of ``curve_b``'s domain.
    """
    target = position(curve_a, t)
    lo, hi = curve_b.domain
    if seed is None:
        us = np.linspace(lo, hi, 201)
        seed = float(us[np.argmin([np.linalg.norm(position(curve_b, u) - target) for u in us])])
    u = float(seed)
    for _ in range(max_iter):
        J = curve_b.jets(u, 2)
        p, d1, d2 = vj.value(J), vj.nth(J, 1), vj.nth(J, 2)
        diff = p - target
        g = diff @ d1
        dg = d1 @ d1 + diff @ d2
        if dg <= 0:
            raise CorrespondenceFailure(f"closest-point Newton lost convexity at u={u}")
        step = g / dg
        u_new = min(max(u - step, lo), hi)
        if abs(u_new - u) <= tol * max(1.0, abs(u)):
            return u_new
        u = u_new
    raise CorrespondenceFailure(f"closest-point search did not converge for t={t}")


def _corresponding_grid(curve_a, curve_b, grid, correspondence):
    if correspondence == SHARED:
        return [float(t) for t in grid]
    if correspondence != CLOSEST:
        raise ValueError(f"unknown correspondence {correspondence!r}")
    out, seed = [], None
    for t in grid:
        seed = corresponding_parameter(curve_a, curve_b, t, seed)
        out.append(seed)
    return out


def _closest_jet(curve_a, curve_b, t, u0, order):
    """Jet (in t) of the closest-point parameter on ``curve_b``, by Newton on jets."""
    A = curve_a.jets(t, order)
    Bj = curve_b.jets(u0, order + 2)
    dB = vj.deriv(Bj)
    ddB = vj.deriv(dB)
    u = Jet([u0, 1.0] + [0.0] * (order - 1), t)
    for _ in range(order + 1):
        Bu = tuple(jet_compose(c, u) for c in Bj)
        dBu = tuple(jet_compose(c, u) for c in dB)
        ddBu = tuple(jet_compose(c, u) for c in ddB)
        diff = vj.sub(Bu, A)
        g = vj.dot(diff, dBu)
        dg = vj.dot(dBu, dBu) + vj.dot(diff, ddBu)
        step = g / dg
        u = Jet((u0,) + tuple(a - b for a, b in zip(u.derivs[1:], step.derivs[1:])), t)
    return tuple(jet_compose(c, u) for c in Bj)


def combine_curves(curve_a, curve_b, h: float, correspondence: str = SHARED) -> DerivedCurve:
    """Curve through the points dividing corresponding segments: ``h A + (1-h) B``.

    The result is generally not unit speed; frame computations reparametrize it.
    """
    h = float(h)
    if not 0.0 <= h <= 1.0:
        raise ValueError("h must lie in [0, 1]")
    if correspondence not in (SHARED, CLOSEST):
        raise ValueError(f"unknown correspondence {correspondence!r}")

    def evaluator(t, order):
        A = curve_a.jets(t, order)
        if correspondence == SHARED:
            B = curve_b.jets(t, order)
        else:
            B = _closest_jet(curve_a, curve_b, t, corresponding_parameter(curve_a, curve_b, t), order)
        return vj.add(vj.scale(A, h), vj.scale(B, 1.0 - h))

    unit = h == 1.0 and curve_a.unit_speed
    return DerivedCurve(evaluator, curve_a.domain,
                        f"combination {h!r}*{curve_a.name} + {1.0 - h!r}*{curve_b.name} ({correspondence})",
                        unit_speed=unit, name=f"combine({curve_a.name},{curve_b.name},{h!r})")


@dataclass(frozen=True)
class _PointFrame:
    p: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float


def _unit_frame(curve, s) -> _PointFrame:
    fj = frame_jets(curve, s).require_curvature()
    k = fj.kappa
    return _PointFrame(vj.value(fj.X), vj.value(fj.T), vj.value(fj.N) / k, vj.value(fj.B) / k,
                       k, fj.tau)


def _sine(u, v):
    return float(np.linalg.norm(np.cross(u, v)))


def correspondence_parallelism(curve_a, curve_b, grid: SampleGrid, mode: str,
                               correspondence: str = SHARED) -> float:
    """Max sine of the angle between paired unit directions.

    ``mode`` is ``tangent-tangent``, ``binormal-binormal`` or ``tangent-binormal``
    (tangent of A against binormal of B). Antiparallel counts as parallel.
    """
    pick = {
        "tangent-tangent": ("t", "t"),
        "binormal-binormal": ("b", "b"),
        "tangent-binormal": ("t", "b"),
    }
    if mode not in pick:
        raise ValueError(f"unknown mode {mode!r}")
    fa, fb = pick[mode]
    us = _corresponding_grid(curve_a, curve_b, grid, correspondence)
    sines = grid_map(lambda tu: _sine(getattr(_unit_frame(curve_a, tu[0]), fa),
                                      getattr(_unit_frame(curve_b, tu[1]), fb)),
                     list(zip(grid, us)))
    return max(sines)


@dataclass(frozen=True)
class MateIdentities:
    kappa_residual: float        # max |k_x - (c k_y + sin^2 th) / (c (1 + c k_y))|
    torsion_residual: float      # max |tau_x tau_y - (sin th / c)^2|
    torsion_product_positive: bool
    signed_kappa_residual: float  # max |cos^2 th - (1 - c k_x)(1 + e c k_y)|, e = <n_x, n_y>


def mate_identities(kappa_phi, kappa_psi, tau_phi, tau_psi, c: float, theta: float,
                    normal_sign=1.0) -> MateIdentities:
    """Curvature/torsion identities between a curve and its Bertrand mate.

    ``kappa_residual`` uses the quotient form, which presumes the two unit
    normals point the same way. ``signed_kappa_residual`` is the
    denominator-free form with the actual normal orientation
    ``normal_sign = <n_x, n_y>`` and stays finite where the quotient is 0/0.
    """
    if c == 0:
        raise ValueError("identities need a non-zero offset")
    kx, ky = np.asarray(kappa_phi, float), np.asarray(kappa_psi, float)
    tx, ty = np.asarray(tau_phi, float), np.asarray(tau_psi, float)
    e = np.sign(np.asarray(normal_sign, float))
    sin2 = math.sin(theta) ** 2
    cos2 = math.cos(theta) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = (c * ky + sin2) / (c * (1.0 + c * ky))
    r1 = float(np.max(np.abs(kx - quotient)))
    product = tx * ty
    r2 = float(np.max(np.abs(product - (math.sin(theta) / c) ** 2)))
    r3 = float(np.max(np.abs(cos2 - (1.0 - c * kx) * (1.0 + e * c * ky))))
    return MateIdentities(r1, r2, bool(np.all(product > 0)), r3)


@dataclass(frozen=True)
class BertrandPairReport:
    correspondence: str
    c_offset: float
    theta: float
    residual_normal_parallelism: float
    residual_offset_parallelism: float
    residual_distance: float
    residual_offset_constancy: float
    residual_angle: float
    residual_linear_relation: float   # NaN when not applicable (trivial pair or theta = 0)
    identity_residuals: tuple         # (curvature identity, torsion identity); NaN when trivial
    signed_identity_residual: float
    torsion_product_positive: bool
    trivial: bool
    linear_relation_defined: bool
    threshold: float
    verdict: bool
    grid: np.ndarray = field(repr=False)
    partner_grid: np.ndarray = field(repr=False)
    kappa_a: np.ndarray = field(repr=False)
    tau_a: np.ndarray = field(repr=False)
    kappa_b: np.ndarray = field(repr=False)
    tau_b: np.ndarray = field(repr=False)
    normal_sign: np.ndarray = field(repr=False)

    @property
    def a(self) -> float:
        """``cot(theta)``; infinite when ``theta`` is 0."""
        s = math.sin(self.theta)
        return math.cos(self.theta) / s if s > SIN_TOL else math.inf

    def residuals(self) -> dict:
        return {
            "normal_parallelism": self.residual_normal_parallelism,
            "offset_parallelism": self.residual_offset_parallelism,
            "distance": self.residual_distance,
            "offset_constancy": self.residual_offset_constancy,
            "angle": self.residual_angle,
            "linear_relation": self.residual_linear_relation,
            "identity_curvature": self.identity_residuals[0],
            "identity_torsion": self.identity_residuals[1],
            "identity_curvature_signed": self.signed_identity_residual,
        }


def verify_bertrand_pair(curve_a, curve_b, grid: SampleGrid, correspondence: str = SHARED,
                         threshold: float = DEFAULT_THRESHOLD) -> BertrandPairReport:
    """Check the Bertrand-pair properties of ``(curve_a, curve_b)`` on a grid.

    The verdict requires normal parallelism, offset along ``n_a``, constant
    distance, constant tangent angle, the linear curvature-torsion relation
    (where defined) and the mate identities (signed curvature form and torsion
    form) all within ``threshold``.
    """
    us = _corresponding_grid(curve_a, curve_b, grid, correspondence)
    pairs = grid_map(lambda tu: (_unit_frame(curve_a, tu[0]), _unit_frame(curve_b, tu[1])),
                     list(zip(grid, us)))
    fa = [p[0] for p in pairs]
    fb = [p[1] for p in pairs]
    d = np.array([b.p - a.p for a, b in pairs])
    nA = np.array([a.n for a in fa])
    nB = np.array([b.n for b in fb])
    tA = np.array([a.t for a in fa])
    bA = np.array([a.b for a in fa])
    tB = np.array([b.t for b in fb])

    normal_par = float(np.max(np.linalg.norm(np.cross(nA, nB), axis=1)))
    c_i = np.einsum("ij,ij->i", d, nA)
    offset_par = float(np.max(np.linalg.norm(d - c_i[:, None] * nA, axis=1)))
    c = math.fsum(c_i) / len(c_i)
    c_dev = float(np.max(np.abs(c_i - c)))
    distance = float(np.max(np.abs(np.linalg.norm(d, axis=1) - abs(c))))

    cos_i = np.einsum("ij,ij->i", tA, tB)
    sin_i = np.einsum("ij,ij->i", tB, bA)
    # orient each mate tangent so that <t_b, b_a> >= 0; a mate whose speed
    # vanishes somewhere reverses its arc-length direction there
    orient = np.where(sin_i < -SIN_TOL, -1.0, 1.0)
    cos_i = orient * cos_i
    sin_i = np.abs(sin_i)
    # atan2 keeps theta accurate near 0 and pi, where acos loses half the digits
    theta = math.atan2(math.fsum(sin_i) / len(sin_i), math.fsum(cos_i) / len(cos_i))
    angle = float(np.max(np.abs(cos_i - math.cos(theta))))

    kA = np.array([a.kappa for a in fa])
    tauA = np.array([a.tau for a in fa])
    kB = np.array([b.kappa for b in fb])
    tauB = np.array([b.tau for b in fb])
    sign = np.sign(np.einsum("ij,ij->i", nA, nB))

    trivial = abs(c) <= TRIVIAL_OFFSET
    sin_t = math.sin(theta)
    relation_defined = not trivial and sin_t > SIN_TOL
    if relation_defined:
        a = math.cos(theta) / sin_t
        linear = float(np.max(np.abs(c * kA + a * c * tauA - 1.0)))
    else:
        linear = math.nan
    if trivial:
        ids = (math.nan, math.nan)
        signed = math.nan
        positive = False
    else:
        mi = mate_identities(kA, kB, tauA, tauB, c, theta, sign)
        ids = (mi.kappa_residual, mi.torsion_residual)
        signed = mi.signed_kappa_residual
        positive = mi.torsion_product_positive

    checks = [normal_par, offset_par, distance, c_dev, angle]
    if relation_defined:
        checks.append(linear)
    if not trivial:
        checks += [signed, ids[1]]
    verdict = all(r <= threshold for r in checks)
    return BertrandPairReport(
        correspondence, c, theta, normal_par, offset_par, distance, c_dev, angle, linear,
        ids, signed, positive, trivial, relation_defined, threshold, verdict,
        np.array(list(grid)), np.array(us), kA, tauA, kB, tauB, sign,
    )


@dataclass(frozen=True)
class LinearFit:
    c: float
    ac: float
    residual: float
    degenerate: bool

    @property
    def a(self) -> float:
        return self.ac / self.c if self.c else math.inf


def linear_relation_fit(curve, grid: SampleGrid, threshold: float = DEFAULT_THRESHOLD) -> LinearFit:
    """Least-squares ``x kappa + y tau = 1`` over the grid; ``(x, y) = (c, a c)``.

    When curvature and torsion are both constant the solutions form a line;
    the minimal-norm one is returned and ``degenerate`` is set.
    """
    rows = grid_map(lambda t: _unit_frame(curve, t), list(grid))
    k = np.array([r.kappa for r in rows])
    tau = np.array([r.tau for r in rows])

    def const(v):
        m = math.fsum(v) / len(v)
        return float(np.max(np.abs(v - m))) / max(abs(m), REL_FLOOR) <= threshold, m

    ck, mk = const(k)
    ct, mt = const(tau)
    if ck and ct:
        v = np.array([mk, mt])
        x, y = v / (v @ v)
        degenerate = True
    else:
        sol, *_ = np.linalg.lstsq(np.column_stack([k, tau]), np.ones_like(k), rcond=None)
        x, y = sol
        degenerate = False
    residual = float(np.max(np.abs(x * k + y * tau - 1.0)))
    return LinearFit(float(x), float(y), residual, degenerate)


def combination_relation_residual(curve_a, curve_b, combined, h: float, grid: SampleGrid,
                                  correspondence: str = SHARED) -> float:
    """Max ``|(h/kappa_a) kappa + ((1-h)/tau_b) tau - 1|`` along the combined curve.

    ``kappa_a`` is taken from ``curve_a`` and ``tau_b`` from ``curve_b`` at
    corresponding points; ``kappa``, ``tau`` belong to ``combined``.
    """
    us = _corresponding_grid(curve_a, curve_b, grid, correspondence)

    def one(tu):
        t, u = tu
        ka = _unit_frame(curve_a, t).kappa
        tb = _unit_frame(curve_b, u).tau
        fc = _unit_frame(combined, t)
        return abs(h / ka * fc.kappa + (1.0 - h) / tb * fc.tau - 1.0)

    return max(grid_map(one, list(zip(grid, us))))
