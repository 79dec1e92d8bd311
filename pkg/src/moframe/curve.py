"""Analytic space curves: evaluation, arc length and unit-speed reparametrization.

Two curve kinds share one interface (``jets(t, order)``, ``domain``,
``unit_speed``):

* :class:`CurveSpec` wraps three parsed component formulas;
* :class:`DerivedCurve` wraps an arbitrary jet evaluator (Bertrand mates,
  convex combinations).

Arc length is signed and measured from the curve's ``arc_origin``: the
parameter 0 when it lies in the domain, else the lower domain end. For a
declared unit-speed curve this makes arc length and parameter coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import vecjet as vj
from .errors import DomainError, QuadratureFailure, RootFindFailure
from .expr import Binary, Constant, Expression, parse, to_text
from .jet import DEFAULT_ORDER, Jet, jet_apply, jet_compose, jet_invert, jet_parameter

__all__ = [
    "CurveSpec", "DerivedCurve", "SampleGrid", "eval_jets", "position", "speed",
    "arc_length", "param_of_arclength", "unitspeed_jets", "arclength_jets",
    "check_unit_speed", "adaptive_simpson",
]

QUADRATURE_BUDGET = 1_000_000


def _check_domain(domain):
    lo, hi = float(domain[0]), float(domain[1])
    if not lo < hi:
        raise ValueError(f"empty domain [{lo}, {hi}]")
    return lo, hi


class _CurveBase:
    domain: tuple[float, float]
    unit_speed: bool
    name: str

    @property
    def arc_origin(self) -> float:
        lo, hi = self.domain
        return 0.0 if lo <= 0.0 <= hi else lo

    def contains(self, t: float) -> bool:
        lo, hi = self.domain
        return lo < t < hi

    def _require_inside(self, t):
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise DomainError(self.name, t, f"parameter outside domain {self.domain}")


@dataclass(frozen=True, eq=False)
class CurveSpec(_CurveBase):
    """Space curve given by three component formulas in the parameter ``s``."""

    components: tuple
    domain: tuple
    unit_speed: bool = False
    name: str = "curve"

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("a space curve needs exactly three components")
        object.__setattr__(self, "domain", _check_domain(self.domain))

    @classmethod
    def from_text(cls, x: str, y: str, z: str, domain, unit_speed=False, name="curve"):
        return cls((parse(x), parse(y), parse(z)), domain, unit_speed, name)

    def jets(self, t: float, order: int = DEFAULT_ORDER):
        self._require_inside(t)
        p = jet_parameter(t, order)
        return tuple(jet_apply(c, p) for c in self.components)

    def translated(self, offset: Sequence[float], name: str | None = None) -> "CurveSpec":
        comps = tuple(Binary("add", c, Constant(float(o))) for c, o in zip(self.components, offset))
        return CurveSpec(comps, self.domain, self.unit_speed, name or f"{self.name}+{tuple(offset)}")

    def formulas(self) -> tuple[str, str, str]:
        return tuple(to_text(c) for c in self.components)


@dataclass(frozen=True, eq=False)
class DerivedCurve(_CurveBase):
    """Curve defined procedurally by ``evaluator(t, order) -> (Jet, Jet, Jet)``."""

    evaluator: Callable
    domain: tuple
    note: str = ""
    unit_speed: bool = False
    name: str = "derived"

    def __post_init__(self):
        object.__setattr__(self, "domain", _check_domain(self.domain))

    def jets(self, t: float, order: int = DEFAULT_ORDER):
        self._require_inside(t)
        return tuple(self.evaluator(t, order))


@dataclass(frozen=True)
class SampleGrid:
    """Strictly increasing parameter samples."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 3:
            raise ValueError("a sample grid needs at least 3 points")
        if not np.all(np.diff(v) > 0):
            raise ValueError("grid values must be strictly increasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def uniform(cls, lo: float, hi: float, n: int, inset: float = 1e-6) -> "SampleGrid":
        """``n`` uniform points on ``[lo, hi]`` with both ends pulled in by ``inset*(hi-lo)``."""
        pad = inset * (hi - lo)
        return cls(np.linspace(lo + pad, hi - pad, int(n)))

    @classmethod
    def for_curve(cls, curve, n: int, lo=None, hi=None) -> "SampleGrid":
        dlo, dhi = curve.domain
        return cls.uniform(dlo if lo is None else lo, dhi if hi is None else hi, n)

    def __len__(self):
        return int(self.values.size)

    def __iter__(self):
        return iter(float(v) for v in self.values)

    def inside(self, domain) -> bool:
        return bool(self.values[0] > domain[0] and self.values[-1] < domain[1])


def eval_jets(curve, t: float, order: int = DEFAULT_ORDER):
    """Jets of the three components at native parameter ``t``."""
    return curve.jets(float(t), order)


def position(curve, t: float) -> np.ndarray:
    return vj.value(curve.jets(float(t), 1))


def speed(curve, t: float) -> float:
    return float(np.linalg.norm(vj.nth(curve.jets(float(t), 1), 1)))


def adaptive_simpson(f, a: float, b: float, tol: float, budget: int = QUADRATURE_BUDGET) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute error ``tol``.

    Interval halving with the classic ``|S2 - S1| <= 15 tol`` acceptance test
    and Richardson correction. Raises :class:`QuadratureFailure` once more
    than ``budget`` function evaluations would be needed.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, budget)
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    total = 0.0
    # explicit stack keeps deep refinement off the Python call stack
    stack = [(a, b, fa, fm, fb, whole, tol)]
    while stack:
        lo, hi, flo, fmid, fhi, s_whole, eps = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        evals += 2
        if evals > budget:
            raise QuadratureFailure(f"refinement budget of {budget} evaluations exhausted on [{a}, {b}]")
        h = hi - lo
        left = h / 12.0 * (flo + 4.0 * flm + fmid)
        right = h / 12.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - s_whole
        if abs(delta) <= 15.0 * eps or mid in (lo, hi):
            total += left + right + delta / 15.0
        else:
            stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps))
            stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps))
    return total


def arc_length(curve, a: float, b: float, tol: float = 1e-10) -> float:
    """Signed arc length from ``a`` to ``b`` (absolute error ``tol``)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if curve.unit_speed:
        return float(b - a)
    return adaptive_simpson(lambda t: speed(curve, t), float(a), float(b), tol)


def param_of_arclength(curve, s_target: float, tol: float = 1e-10, max_iter: int = 100) -> float:
    """Parameter ``t`` whose signed arc length from ``curve.arc_origin`` equals ``s_target``.

    Newton iteration on ``L(t) - s_target`` (derivative = speed) inside a
    bisection bracket; steps leaving the bracket fall back to bisection.
    """
    origin = curve.arc_origin
    if curve.unit_speed:
        t = origin + s_target
        lo, hi = curve.domain
        if not lo <= t <= hi:
            raise RootFindFailure(f"arc length {s_target} outside curve range")
        return t
    qtol = tol / 20.0
    lo, hi = curve.domain
    f_lo = arc_length(curve, origin, lo, qtol) - s_target
    f_hi = arc_length(curve, origin, hi, qtol) - s_target
    if f_lo > tol or f_hi < -tol:
        raise RootFindFailure(f"arc length {s_target} outside [{f_lo + s_target}, {f_hi + s_target}]")
    # a few bisection steps to seed Newton well inside the bracket
    a, b, fa = lo, hi, f_lo
    t, ft = lo, f_lo
    for _ in range(6):
        m = 0.5 * (a + b)
        fm = fa + arc_length(curve, a, m, qtol)
        if fm > 0:
            b = m
        else:
            a, fa = m, fm
        t, ft = m, fm
    for _ in range(max_iter):
        if abs(ft) <= tol:
            return t
        if ft > 0:
            b = t
        else:
            a = t
        v = speed(curve, t) if curve.contains(t) else 0.0
        t_new = t - ft / v if v > 0 else 0.5 * (a + b)
        if not a < t_new < b:
            t_new = 0.5 * (a + b)
        ft = ft + arc_length(curve, t, t_new, qtol)
        t = t_new
    if abs(ft) <= tol:
        return t
    raise RootFindFailure(f"no convergence for arc length {s_target} (residual {ft:.3e})")


def arclength_jets(curve, t: float, order: int = DEFAULT_ORDER):
    """Jets of the curve as a function of arc length, based at native parameter ``t``.

    Exact local reparametrization: the arc-length jet ``sigma(t)`` is built
    from the speed jet, inverted, and composed with the component jets, so no
    quadrature is involved. Derivatives are taken with respect to arc length;
    the basepoint is kept as ``t`` for reporting.
    """
    jets = curve.jets(float(t), order)
    if curve.unit_speed:
        return jets
    v = vj.norm(vj.deriv(jets))
    sigma = Jet((0.0,) + v.derivs, t)
    inverse = jet_invert(sigma)  # t(sigma) at sigma = 0
    return tuple(Jet(jet_compose(c, inverse).derivs, t) for c in jets)


def unitspeed_jets(curve, s: float, order: int = DEFAULT_ORDER, tol: float = 1e-10):
    """Jets of the curve as a function of arc length ``s`` (measured from ``arc_origin``)."""
    t = param_of_arclength(curve, s, tol)
    return tuple(Jet(c.derivs, s) for c in arclength_jets(curve, t, order))


def check_unit_speed(curve, grid: SampleGrid, tol: float = 1e-8) -> tuple[bool, float]:
    """Whether ``|speed - 1| <= tol`` on every grid point, plus the max deviation."""
    dev = max(abs(speed(curve, t) - 1.0) for t in grid)
    return dev <= tol, dev
