import math

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from moframe import catalog
from moframe import vecjet as vj
from moframe.curve import (CurveSpec, DerivedCurve, SampleGrid, adaptive_simpson, arc_length, arclength_jets,
                           check_unit_speed, param_of_arclength, position, speed, unitspeed_jets)
from moframe.errors import DomainError, QuadratureFailure, RootFindFailure


def cubic():
    return CurveSpec.from_text("s", "s^2", "s^3", (0, 2), name="cubic")


def test_grid_validation():
    with pytest.raises(ValueError):
        SampleGrid([0.0, 1.0])
    with pytest.raises(ValueError):
        SampleGrid([0.0, 1.0, 1.0])
    g = SampleGrid.uniform(0, 1, 5)
    assert len(g) == 5 and g.inside((0, 1))
    assert g.values[0] > 0 and g.values[-1] < 1


def test_grid_immutable():
    g = SampleGrid.uniform(0, 1, 5)
    with pytest.raises(ValueError):
        g.values[0] = 3.0


def test_domain_checks():
    c = cubic()
    with pytest.raises(DomainError):
        c.jets(2.5, 2)
    with pytest.raises(ValueError):
        CurveSpec.from_text("s", "s", "s", (1, 1))
    with pytest.raises(ValueError):
        CurveSpec((), (0, 1))


def test_position_and_speed():
    c = cubic()
    np.testing.assert_allclose(position(c, 1.5), [1.5, 2.25, 3.375])
    assert speed(c, 1.0) == pytest.approx(math.sqrt(14.0))


def test_arc_length_cubic_against_mpmath():
    want = float(mpmath.quad(lambda t: mpmath.sqrt(1 + 4 * t**2 + 9 * t**4), [0, 1]))
    assert arc_length(cubic(), 0.0, 1.0) == pytest.approx(want, abs=1e-10)
    assert arc_length(cubic(), 1.0, 0.0) == pytest.approx(-want, abs=1e-10)


def test_arc_length_unit_speed_shortcut():
    h = catalog.get("circular_helix").spec
    assert arc_length(h, -1.0, 2.5) == 3.5


def test_param_of_arclength():
    c = cubic()
    t = param_of_arclength(c, 1.0)
    assert arc_length(c, 0.0, t) == pytest.approx(1.0, abs=1e-10)
    line = CurveSpec.from_text("2*s", "0", "0", (-5, 5))
    assert param_of_arclength(line, 4.0) == pytest.approx(2.0, abs=1e-10)
    assert param_of_arclength(catalog.get("circular_helix").spec, 3.0) == 3.0


def test_param_of_arclength_out_of_range():
    with pytest.raises(RootFindFailure):
        param_of_arclength(cubic(), 100.0)


def test_adaptive_simpson_budget():
    with pytest.raises(QuadratureFailure):
        adaptive_simpson(lambda x: math.sin(1.0 / x) if x else 0.0, 0.0, 1.0, 1e-15, budget=200)


def test_adaptive_simpson_polynomial_exact():
    assert adaptive_simpson(lambda x: x**3, 0.0, 2.0, 1e-12) == pytest.approx(4.0, rel=1e-14)


def test_arclength_jets_against_sympy():
    t = sp.symbols("t")
    comps = [t, t**2, t**3]
    v = sp.sqrt(sum(sp.diff(c, t) ** 2 for c in comps))
    t0 = 0.7
    jets = arclength_jets(cubic(), t0, 4)
    for c, j in zip(comps, jets):
        expr = c
        for k in range(5):
            assert j[k] == pytest.approx(float(expr.subs(t, t0)), rel=1e-12, abs=1e-12)
            expr = sp.diff(expr, t) / v


def test_arclength_jets_unit_tangent():
    jets = arclength_jets(cubic(), 1.3, 3)
    assert np.linalg.norm(vj.nth(jets, 1)) == pytest.approx(1.0, abs=1e-14)


def test_unitspeed_jets_based_at_arclength():
    jets = unitspeed_jets(cubic(), 1.0, 3)
    assert jets[0].basepoint == 1.0
    np.testing.assert_allclose(vj.value(jets), position(cubic(), param_of_arclength(cubic(), 1.0)), atol=1e-12)


def test_check_unit_speed():
    h = catalog.get("circular_helix").spec
    ok, dev = check_unit_speed(h, SampleGrid.for_curve(h, 20))
    assert ok and dev < 1e-14
    ok, dev = check_unit_speed(cubic(), SampleGrid.for_curve(cubic(), 20))
    assert not ok and dev > 1


def test_translated_and_formulas():
    c = cubic().translated((1, 0, 0))
    np.testing.assert_allclose(position(c, 1.0), [2.0, 1.0, 1.0])
    assert cubic().formulas() == ("s", "s ^ 2.0", "s ^ 3.0")


def test_derived_curve():
    d = DerivedCurve(lambda t, k: cubic().jets(t, k), (0, 2), "copy")
    np.testing.assert_allclose(position(d, 1.0), [1, 1, 1])
    with pytest.raises(DomainError):
        d.jets(-1.0, 1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 1.9))
def test_arc_length_roundtrip_property(s):
    t = param_of_arclength(cubic(), s)
    assert arc_length(cubic(), 0.0, t) == pytest.approx(s, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(0.9, 1.8), st.floats(1.8, 2.0))
def test_arc_length_additive(a, b, c):
    total = arc_length(cubic(), a, c)
    assert arc_length(cubic(), a, b) + arc_length(cubic(), b, c) == pytest.approx(total, abs=3e-10)
