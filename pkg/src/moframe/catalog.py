"""Built-in curves with known curvature, torsion and classification.

Declared curvature and torsion formulas are written in each curve's native
parameter and are checked against the frame engine when an entry is loaded,
so a transcription error fails loudly instead of skewing results.

Salkowski curves (constant curvature 1, torsion ``-tan(n t)``) follow the
parametrization of Monterde, "Salkowski curves revisited: A family of curves
with constant curvature and non-constant torsion", CAGD 26 (2009), with
``n = m / sqrt(1 + m^2)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

from .curve import CurveSpec, SampleGrid, check_unit_speed
from .errors import UnknownCurve
from .expr import Expression, evaluate, parse
from .frames import frame_jets

__all__ = ["CatalogEntry", "get", "names", "CatalogValidationError"]

VALIDATION_POINTS = 50


class CatalogValidationError(AssertionError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: CurveSpec
    kappa: Expression | None = None
    tau: Expression | None = None
    known_classes: frozenset = field(default_factory=frozenset)
    provenance: str = ""
    tolerance: float = 1e-9
    params: tuple = ()

    @property
    def degenerate(self) -> bool:
        return "degenerate" in self.known_classes

    def declared_kappa(self, t: float) -> float:
        return evaluate(self.kappa, t)

    def declared_tau(self, t: float) -> float:
        return evaluate(self.tau, t)


def _entry(name, x, y, z, domain, unit_speed, kappa, tau, classes, provenance, **kw):
    spec = CurveSpec.from_text(x, y, z, domain, unit_speed, name)
    return CatalogEntry(
        name, spec,
        parse(kappa) if kappa else None,
        parse(tau) if tau else None,
        frozenset(classes), provenance, **kw,
    )


def _circular_helix():
    return _entry(
        "circular_helix", "sin(s/sqrt(2))", "s/sqrt(2)", "cos(s/sqrt(2))", (-5, 5), True,
        "1/2", "1/2", {"general-helix", "slant-helix", "bertrand-member"},
        "circular helix of radius 1 and unit pitch, kappa = tau = 1/2",
    )


def _general_helix_ex32():
    return _entry(
        "general_helix_ex32", "(1+s)^(3/2)/3", "(1-s)^(3/2)/3", "s/sqrt(2)", (-0.95, 0.95), True,
        "1/sqrt(8*(1-s^2))", "1/sqrt(8*(1-s^2))", {"general-helix", "slant-helix"},
        "general helix with kappa = tau = 1/sqrt(8(1-s^2)); singular at s = +-1",
    )


def _bertrand_phi():
    return _entry(
        "bertrand_phi", "sin(2*s)/(2*sqrt(2))", "cos(2*s)/(2*sqrt(2))", "s/sqrt(2)", (-5, 5), True,
        "sqrt(2)", "-sqrt(2)", {"general-helix", "bertrand-member"},
        "left-handed circular helix, kappa = sqrt(2), tau = -sqrt(2)",
    )


def _bertrand_psi():
    return _entry(
        "bertrand_psi", "-sin(2*s)/(2*sqrt(2))", "-cos(2*s)/(2*sqrt(2))", "s/sqrt(2)", (-5, 5), True,
        "sqrt(2)", "-sqrt(2)", {"general-helix", "bertrand-member"},
        "Bertrand mate of bertrand_phi at offset c = 1/sqrt(2), stored independently",
    )


def _planar_circle():
    return _entry(
        "planar_circle", "cos(s)", "sin(s)", "0", (-5, 5), True,
        "1", "0", {"planar"}, "unit circle in the xy-plane",
    )


def _line():
    return _entry(
        "line", "s", "0", "0", (-5, 5), True, None, None, {"degenerate", "planar"},
        "straight line; curvature identically zero",
    )


def _twisted_cubic():
    return _entry(
        "twisted_cubic", "s", "s^2", "s^3", (0, 2), False,
        "sqrt(36*s^4 + 36*s^2 + 4)/(1 + 4*s^2 + 9*s^4)^(3/2)", "3/(9*s^4 + 9*s^2 + 1)",
        set(), "twisted cubic (t, t^2, t^3); neither helix nor Bertrand curve",
    )


def _salkowski(m=0.5):
    m = float(m)
    if m == 0.0 or abs(m) >= 1.0 or abs(abs(m) - 1.0 / math.sqrt(3.0)) < 1e-9:
        raise ValueError("salkowski needs 0 < |m| < 1 and |m| != 1/sqrt(3)")
    n = m / math.sqrt(1.0 + m * m)
    w = 1.0 / math.sqrt(1.0 + m * m)
    p, q = 1.0 + 2.0 * n, 1.0 - 2.0 * n
    a = (1.0 - n) / (4.0 * p)
    b = (1.0 + n) / (4.0 * q)
    x = f"{w!r}*(-{a!r}*sin({p!r}*s) - {b!r}*sin({q!r}*s) - 0.5*sin(s))"
    y = f"{w!r}*({a!r}*cos({p!r}*s) + {b!r}*cos({q!r}*s) + 0.5*cos(s))"
    z = f"{w!r}*cos({2.0 * n!r}*s)/(4*{m!r})"
    # speed is w cos(n t); stay clear of its zeros at |t| = pi/(2n)
    half = 0.9 * math.pi / (2.0 * abs(n))
    return _entry(
        "salkowski", x, y, z, (-half, half), False,
        "1", f"-sin({n!r}*s)/cos({n!r}*s)", {"slant-helix"},
        f"Salkowski curve with m={m!r} (Monterde 2009); slant function equals -m",
        tolerance=1e-6, params=(("m", m),),
    )


_BUILDERS = {
    "circular_helix": _circular_helix,
    "general_helix_ex32": _general_helix_ex32,
    "bertrand_phi": _bertrand_phi,
    "bertrand_psi": _bertrand_psi,
    "planar_circle": _planar_circle,
    "line": _line,
    "twisted_cubic": _twisted_cubic,
    "salkowski": _salkowski,
}


def names() -> list[str]:
    return list(_BUILDERS)


def get(name: str, **params) -> CatalogEntry:
    """Catalog entry by name, validated on first load.

    >>> get("circular_helix").declared_kappa(0.0)
    0.5
    """
    if name not in _BUILDERS:
        raise UnknownCurve(f"unknown curve {name!r}; known: {', '.join(_BUILDERS)}")
    return _load(name, tuple(sorted((k, float(v)) for k, v in params.items())))


@functools.lru_cache(maxsize=None)
def _load(name, params):
    entry = _BUILDERS[name](**dict(params))
    validate(entry)
    return entry


def validate(entry: CatalogEntry, points: int = VALIDATION_POINTS) -> None:
    """Check declared unit speed, curvature and torsion on a uniform grid."""
    grid = SampleGrid.for_curve(entry.spec, points)
    if entry.spec.unit_speed:
        ok, dev = check_unit_speed(entry.spec, grid, 1e-8)
        if not ok:
            raise CatalogValidationError(f"{entry.name}: declared unit speed off by {dev:.3e}")
    if entry.kappa is None:
        return
    for t in grid:
        fj = frame_jets(entry.spec, t)
        dk = abs(fj.kappa - entry.declared_kappa(t))
        dt = abs(fj.tau - entry.declared_tau(t))
        scale = max(1.0, abs(entry.declared_tau(t)))
        if dk > entry.tolerance or dt > entry.tolerance * scale:
            raise CatalogValidationError(
                f"{entry.name}: declared curvature/torsion disagree at {t} "
                f"(|dkappa|={dk:.3e}, |dtau|={dt:.3e})")
