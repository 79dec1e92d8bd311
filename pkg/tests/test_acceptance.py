"""Acceptance criteria, one check per criterion (parametrized where a criterion
lists several curves). Every check records a PASS/FAIL line that is printed at
the end of the pytest run; ``python3 tests/test_acceptance.py`` prints the
same lines without pytest.
"""

from __future__ import annotations

import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import LINES  # noqa: E402
from oracles import mp_eval, random_expressions, richardson_derivative  # noqa: E402

from moframe import catalog, vecjet as vj  # noqa: E402
from moframe.bertrand import bertrand_mate, combination_relation_residual, combine_curves, \
    linear_relation_fit, verify_bertrand_pair  # noqa: E402
from moframe.curve import SampleGrid, position  # noqa: E402
from moframe.frames import frame_jets, frame_ode_residual, metric_residual, modified_frame  # noqa: E402
from moframe.helix import constancy_report, helix_det_test, helix_operator_residual, lancret_ratio, \
    slant_axis, slant_function_constant_kappa  # noqa: E402
from moframe.jet import jet_apply, jet_parameter  # noqa: E402

R2 = math.sqrt(2.0)


def curve(name):
    return catalog.get(name).spec


def record(key, title, ok, detail):
    LINES[key] = f"AC {key:<36} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    return ok


# ---------------------------------------------------------------- checks

def check_1():
    h = curve("circular_helix")
    err = 0.0
    for s in np.linspace(-5.0, 5.0, 101):
        fj = frame_jets(h, s)
        err = max(err, abs(fj.kappa - 0.5), abs(fj.tau - 0.5))
    return record("1", "circular helix kappa = tau = 1/2", err <= 1e-10, f"max abs error {err:.2e}")


def check_2():
    f = modified_frame(curve("circular_helix"), 0.0)
    want = {
        "T": (1 / R2, 1 / R2, 0.0),
        "N": (0.0, 0.0, -0.5),
        "B": (-1 / (2 * R2), 1 / (2 * R2), 0.0),
    }
    err = max(float(np.max(np.abs(getattr(f, k) - np.array(v)))) for k, v in want.items())
    return record("2", "helix frame at s=0", err <= 1e-12, f"max component error {err:.2e}")


def check_3():
    fj = frame_jets(curve("circular_helix"), 0.0)
    want = [(0.0, 0.0, -0.5), (-1 / (2 * R2), 0.0, 0.0), (0.0, 0.0, 0.25)]
    err = max(float(np.max(np.abs(vj.nth(fj.T, k + 1) - np.array(w)))) for k, w in enumerate(want))
    det = abs(float(np.linalg.det(np.column_stack([vj.nth(fj.T, k) for k in (1, 2, 3)]))))
    ok = err <= 1e-10 and det <= 1e-10
    return record("3", "helix T', T'', T''' and det at s=0", ok, f"max error {err:.2e}, |det| {det:.2e}")


def check_4():
    c = catalog.get("general_helix_ex32")
    grid = SampleGrid(np.linspace(-0.9, 0.9, 50))
    rel = 0.0
    for s in grid:
        fj = frame_jets(c.spec, s)
        want = 1.0 / math.sqrt(8.0 * (1.0 - s * s))
        rel = max(rel, abs(fj.kappa - want) / want, abs(fj.tau - want) / want)
    lancret = lancret_ratio(c.spec, grid)
    det = helix_det_test(c.spec, grid)
    ok = rel <= 1e-9 and lancret.verdict and det.max_abs_det <= 1e-8
    return record("4", "general helix example", ok,
                  f"rel error {rel:.2e}, Lancret {lancret.verdict}, max|det| {det.max_abs_det:.2e}")


DET_CURVES = ["circular_helix", "general_helix_ex32", "twisted_cubic", "salkowski"]


def check_5(name):
    c = curve(name)
    grid = SampleGrid.for_curve(c, 50)
    det = helix_det_test(c, grid)
    ok = det.identity_residual <= 1e-7
    return record(f"5.{DET_CURVES.index(name)} {name}", "det = 3 kappa^3 (tau/kappa)'", ok,
                  f"residual {det.identity_residual:.3e} (kappa^5 form {det.kappa5_identity_residual:.1e})")


def check_6():
    worst = 0.0
    for name, (lo, hi) in (("circular_helix", (-5, 5)), ("general_helix_ex32", (-0.9, 0.9))):
        for s in np.linspace(lo, hi, 10):
            worst = max(worst, helix_operator_residual(curve(name), s).residual)
    mu = helix_operator_residual(curve("circular_helix"), 0.0).mu
    ok = worst <= 1e-8 and abs(mu + 0.5) <= 1e-12
    return record("6", "T''' operator identity", ok, f"max residual {worst:.2e}, mu+1/2 = {mu + 0.5:.1e}")


def check_7():
    phi, psi = curve("bertrand_phi"), curve("bertrand_psi")
    c = 1 / R2
    mate = bertrand_mate(phi, c)
    grid = SampleGrid.for_curve(phi, 50)
    coord = max(float(np.max(np.abs(position(mate, s) - position(psi, s)))) for s in grid)
    r = verify_bertrand_pair(phi, psi, grid)
    kt = max(float(np.max(np.abs(r.kappa_b - R2))), float(np.max(np.abs(r.tau_b + R2))))
    ids = max(r.identity_residuals)
    ok = (coord <= 1e-12 and abs(r.theta - math.pi / 2) <= 1e-9 and r.residual_distance <= 1e-10
          and kt <= 1e-10 and ids <= 1e-10)
    return record("7", "Bertrand example pair", ok,
                  f"coords {coord:.1e}, theta-pi/2 {r.theta - math.pi / 2:.1e}, distance {r.residual_distance:.1e}, "
                  f"kappa/tau {kt:.1e}, identities {ids:.1e}")


ROUND_TRIP = [(n, c) for n in ("circular_helix", "general_helix_ex32", "bertrand_phi") for c in (0.25, 1 / R2)]
ROUND_TRIP_GRID = {"general_helix_ex32": (-0.9, 0.9)}


def check_8(name, c):
    parent = curve(name)
    lo, hi = ROUND_TRIP_GRID.get(name, parent.domain)
    grid = SampleGrid.uniform(lo, hi, 50)
    r = verify_bertrand_pair(parent, bertrand_mate(parent, c), grid)
    fit = linear_relation_fit(parent, grid)
    fit_ok = fit.residual <= 1e-7 or fit.degenerate
    ok = r.verdict and fit_ok
    worst = max(((v, k) for k, v in r.residuals().items() if not math.isnan(v)))
    return record(f"8.{ROUND_TRIP.index((name, c))} {name} c={c:.4g}", "mate round trip", ok,
                  f"verdict {r.verdict} (worst {worst[1]} {worst[0]:.2e}), fit residual {fit.residual:.1e}"
                  f"{' degenerate' if fit.degenerate else ''}")


def check_9():
    a = curve("circular_helix")
    b = a.translated((0.3, 0.0, 0.4))
    h = 0.5
    grid = SampleGrid.for_curve(a, 50)
    res = combination_relation_residual(a, b, combine_curves(a, b, h), h, grid)
    return record("9", "combination relation", res <= 1e-9, f"residual {res:.2e}")


def check_10():
    worst_ode = worst_metric = 0.0
    used = []
    for name in catalog.names():
        entry = catalog.get(name)
        grid = SampleGrid.for_curve(entry.spec, 50)
        if min(frame_jets(entry.spec, s).kappa for s in grid) < 1e-6:
            continue
        used.append(name)
        for s in grid:
            worst_ode = max(worst_ode, *frame_ode_residual(entry.spec, s))
            worst_metric = max(worst_metric, *metric_residual(modified_frame(entry.spec, s)))
    ok = worst_ode <= 1e-7 and worst_metric <= 1e-8
    return record("10", "frame ODE and metric", ok,
                  f"{len(used)} curves, ODE {worst_ode:.1e}, metric {worst_metric:.1e}")


def check_11():
    worst, where = 0.0, ""
    for text, tree, s0 in random_expressions(50):
        jet = jet_apply(tree, jet_parameter(s0, 3))
        for n in (1, 2, 3):
            ref = float(richardson_derivative(lambda x: mp_eval(tree, x), s0, n))
            rel = abs(jet[n] - ref) / max(abs(ref), 1e-12)
            if rel > worst:
                worst, where = rel, f"{text} d{n}"
    return record("11", "jets vs Richardson differences", worst <= 1e-5,
                  f"max relative error {worst:.1e} ({where[:40]})")


def check_12():
    sk = curve("salkowski")
    grid = SampleGrid.for_curve(sk, 50)
    kappa = constancy_report("kappa", list(grid), [frame_jets(sk, s).kappa for s in grid])
    slant = slant_function_constant_kappa(sk, grid, kappa_threshold=1e-6)
    axis = max(slant_axis(sk, s, 1.0, slant.mean)[1] for s in grid)
    ok = kappa.rel_variation <= 1e-6 and slant.rel_variation <= 1e-6 and axis <= 1e-6
    return record("12", "Salkowski slant suite", ok,
                  f"kappa var {kappa.rel_variation:.1e}, slant var {slant.rel_variation:.1e} "
                  f"(mean {slant.mean:.6f}), |U'| {axis:.1e}")


def check_13():
    cmd = [sys.executable, "-m", "moframe", "classify", "--curve", "circular_helix", "--samples", "101"]
    one = subprocess.run(cmd, capture_output=True, check=True).stdout
    two = subprocess.run(cmd, capture_output=True, check=True).stdout
    return record("13", "CLI determinism", one == two and len(one) > 0, f"{len(one)} bytes, identical={one == two}")


# ---------------------------------------------------------------- pytest wrappers

def test_ac01_helix_curvature_torsion():
    assert check_1()


def test_ac02_helix_frame():
    assert check_2()


def test_ac03_helix_higher_derivatives():
    assert check_3()


def test_ac04_general_helix():
    assert check_4()


@pytest.mark.parametrize("name", DET_CURVES)
def test_ac05_det_identity(name):
    assert check_5(name)


def test_ac06_operator():
    assert check_6()


def test_ac07_bertrand_example():
    assert check_7()


@pytest.mark.parametrize("name,c", ROUND_TRIP)
def test_ac08_round_trip(name, c):
    assert check_8(name, c)


def test_ac09_combination():
    assert check_9()


def test_ac10_frame_odes():
    assert check_10()


def test_ac11_jet_oracle():
    assert check_11()


def test_ac12_salkowski():
    assert check_12()


def test_ac13_cli_determinism():
    assert check_13()


def _all_checks():
    yield check_1
    yield check_2
    yield check_3
    yield check_4
    for n in DET_CURVES:
        yield lambda n=n: check_5(n)
    yield check_6
    yield check_7
    for n, c in ROUND_TRIP:
        yield lambda n=n, c=c: check_8(n, c)
    yield check_9
    yield check_10
    yield check_11
    yield check_12
    yield check_13


if __name__ == "__main__":
    failures = 0
    for fn in _all_checks():
        try:
            failures += not fn()
        except Exception as exc:  # report and keep going
            failures += 1
            print(f"error in {getattr(fn, '__name__', fn)}: {type(exc).__name__}: {exc}")
    for key in sorted(LINES, key=lambda k: (int(k.split(".")[0].split()[0]), k)):
        print(LINES[key])
    sys.exit(1 if failures else 0)
