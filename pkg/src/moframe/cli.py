"""Command-line front end.

Subcommands: ``frames``, ``classify``, ``bertrand mate``, ``bertrand verify``
and ``combine``. JSON reports carry ``"schema": "moframe/1"`` and the full run
configuration; floats are written with 17 significant digits and NaN or
infinity as ``null``, so identical arguments give byte-identical output.

Exit codes: 0 success, 1 a verdict demanded with ``--expect`` did not hold,
2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import catalog
from .bertrand import (CLOSEST, SHARED, bertrand_mate, combination_relation_residual,
                       combine_curves, linear_relation_fit, verify_bertrand_pair)
from .curve import CurveSpec, SampleGrid, position
from .errors import ExpressionSyntaxError, MoframeError, NonConstantCurvature, UnknownCurve
from .frames import frame_ode_residual, modified_frame
from .helix import (DEFAULT_THRESHOLD, helix_det_test, helix_operator_residual, lancret_ratio,
                    slant_function_constant_kappa, slant_function_general)

__all__ = ["RunConfig", "run", "main", "dumps"]

SCHEMA = "moframe/1"
EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_RESIDUAL = 1e-8


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    curve: dict
    samples: int
    grid_range: tuple | None
    constancy_threshold: float
    residual_threshold: float
    output_format: str
    output: str | None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.samples < 3:
            raise InputError("--samples must be at least 3")
        if not (self.constancy_threshold > 0 and self.residual_threshold > 0):
            raise InputError("thresholds must be positive")


# ---------------------------------------------------------------- formatting

def _num(x) -> str:
    x = float(x)
    return "null" if not math.isfinite(x) else "%.17g" % x


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON with ``%.17g`` floats and insertion-ordered keys."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("%.17g" % float(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- inputs

def _params(pairs):
    out = {}
    for item in pairs or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise InputError(f"parameter {key!r} is not a number: {val!r}") from None
    return out


def _catalog_curve(name, params):
    try:
        return catalog.get(name, **params).spec
    except TypeError as exc:
        raise InputError(f"bad parameters for {name!r}: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _curve_source(args):
    if args.curve and any(v is not None for v in (args.x, args.y, args.z)):
        raise InputError("give either --curve or --x/--y/--z, not both")
    if args.curve:
        params = _params(args.param)
        return {"catalog": args.curve, "params": params}, _catalog_curve(args.curve, params)
    if None in (args.x, args.y, args.z):
        raise InputError("a curve needs --curve NAME or all of --x, --y, --z")
    if args.domain is None:
        raise InputError("expression curves need --domain LO HI")
    try:
        spec = CurveSpec.from_text(args.x, args.y, args.z, tuple(args.domain), args.unit_speed, "expression")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    src = {"x": args.x, "y": args.y, "z": args.z, "domain": list(spec.domain), "unit_speed": args.unit_speed}
    return src, spec


def _other_curve(args, primary):
    if args.other is None and args.other_offset is None:
        raise InputError("--other NAME or --other-offset DX DY DZ is required")
    if args.other is not None:
        other = _catalog_curve(args.other, _params(args.other_param))
    else:
        other = primary
    if args.other_offset is not None:
        if not isinstance(other, CurveSpec):
            raise InputError("--other-offset needs a formula curve")
        other = other.translated(args.other_offset)
    return other


def _grid(args, curve):
    if args.range is not None:
        lo, hi = args.range
        if not curve.domain[0] <= lo < hi <= curve.domain[1]:
            raise InputError(f"--range {lo} {hi} must lie inside the curve domain {curve.domain}")
        try:
            return SampleGrid.uniform(lo, hi, args.samples)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return SampleGrid.for_curve(curve, args.samples)


# ---------------------------------------------------------------- reports

def _constancy(r):
    if r is None:
        return None
    return {
        "label": r.label, "mean": r.mean, "max_abs_dev": r.max_abs_dev,
        "rel_variation": r.rel_variation, "threshold": r.threshold, "verdict": r.verdict,
        "skipped": list(r.skipped), "note": r.note,
    }


def _curve_info(curve):
    info = {"name": curve.name, "domain": list(curve.domain), "unit_speed": curve.unit_speed}
    if isinstance(curve, CurveSpec):
        info["formulas"] = list(curve.formulas())
    else:
        info["note"] = curve.note
    return info


def _pair_report(r):
    return {
        "correspondence": r.correspondence,
        "c": r.c_offset,
        "theta": r.theta,
        "a": r.a,
        "trivial": r.trivial,
        "linear_relation_defined": r.linear_relation_defined,
        "torsion_product_positive": r.torsion_product_positive,
        "residuals": r.residuals(),
        "threshold": r.threshold,
        "verdict": r.verdict,
    }


def _classify(cfg, curve, grid):
    lancret = lancret_ratio(curve, grid, cfg.constancy_threshold)
    det = helix_det_test(curve, grid)
    mid = float(lancret.grid[len(lancret.grid) // 2])
    op = helix_operator_residual(curve, mid)
    general = slant_function_general(curve, grid, cfg.constancy_threshold)
    try:
        ck = slant_function_constant_kappa(curve, grid, cfg.constancy_threshold)
        ck_err = None
    except NonConstantCurvature as exc:
        ck, ck_err = None, str(exc)
    op_ok = op.residual <= det.tolerance
    verdicts = {
        "general_helix": lancret.verdict,
        "det_test": det.verdict,
        "operator": op_ok,
        "criteria_agree": lancret.verdict == det.verdict == op_ok,
        "slant_helix": general.verdict,
    }
    report = {
        "general_helix": {"verdict": lancret.verdict},
        "slant_helix": {"verdict": general.verdict},
        "lancret": _constancy(lancret),
        "det_test": {
            "max_abs_det": det.max_abs_det,
            "identity_residual": det.identity_residual,
            "kappa5_identity_residual": det.kappa5_identity_residual,
            "tolerance": det.tolerance,
            "verdict": det.verdict,
            "skipped": list(det.skipped),
        },
        "operator": {
            "s": op.s, "mu": op.mu, "residual": op.residual,
            "expansion": list(op.expansion), "expansion_residual": op.expansion_residual,
            "tolerance": det.tolerance, "verdict": op_ok,
        },
        "slant_general": _constancy(general),
        "slant_constant_kappa": _constancy(ck),
        "slant_constant_kappa_error": ck_err,
    }
    return report, verdicts, None


FRAME_HEADER = ["s", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz",
                "kappa", "tau", "ode_r1", "ode_r2", "ode_r3"]


def _frames(cfg, curve, grid):
    rows = []
    for t in grid:
        f = modified_frame(curve, t)
        res = frame_ode_residual(curve, t) if math.isfinite(f.tau) else (math.nan,) * 3
        rows.append([t, *position(curve, t), *f.T, *f.N, *f.B, f.kappa, f.tau, *res])
    report = {"columns": FRAME_HEADER, "rows": rows}
    return report, {}, (FRAME_HEADER, rows)


def _samples(curve, grid):
    return ["s", "x", "y", "z"], [[t, *position(curve, t)] for t in grid]


def _mate(cfg, curve, grid):
    c = cfg.options["c"]
    mate = bertrand_mate(curve, c)
    pair = verify_bertrand_pair(curve, mate, grid, SHARED, cfg.residual_threshold)
    report = {"mate": _curve_info(mate), "pair": _pair_report(pair)}
    return report, {"bertrand_pair": pair.verdict}, _samples(mate, grid)


def _verify(cfg, curve, grid, other):
    pair = verify_bertrand_pair(curve, other, grid, cfg.options["correspondence"], cfg.residual_threshold)
    report = {"other": _curve_info(other), "pair": _pair_report(pair),
              "theta": pair.theta, "c": pair.c_offset}
    return report, {"bertrand_pair": pair.verdict}, None


def _combine(cfg, curve, grid, other):
    h = cfg.options["h"]
    corr = cfg.options["correspondence"]
    combined = combine_curves(curve, other, h, corr)
    relation = combination_relation_residual(curve, other, combined, h, grid, corr)
    fit = linear_relation_fit(combined, grid, cfg.constancy_threshold)
    report = {
        "other": _curve_info(other),
        "combined": _curve_info(combined),
        "relation_residual": relation,
        "linear_fit": {"c": fit.c, "ac": fit.ac, "residual": fit.residual, "degenerate": fit.degenerate},
    }
    verdicts = {"relation": relation <= cfg.residual_threshold}
    return report, verdicts, _samples(combined, grid)


# ---------------------------------------------------------------- parser

def _add_common(p):
    src = p.add_argument_group("curve")
    src.add_argument("--curve", help="catalog curve name")
    src.add_argument("--param", action="append", metavar="KEY=VALUE", help="catalog curve parameter")
    src.add_argument("--x", help="x component formula in s")
    src.add_argument("--y", help="y component formula in s")
    src.add_argument("--z", help="z component formula in s")
    src.add_argument("--domain", nargs=2, type=float, metavar=("LO", "HI"))
    src.add_argument("--unit-speed", action="store_true", help="declare the formulas unit speed")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"), help="grid range (default: domain)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD, help="constancy threshold")
    p.add_argument("--residual-threshold", type=float, default=DEFAULT_RESIDUAL)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--output", "-o", help="output path (default: standard output)")
    p.add_argument("--csv", dest="csv_path", help="also write sampled curve CSV here")
    p.add_argument("--expect", action="append", metavar="VERDICT[=true|false]",
                   help="exit 1 unless the named verdict has the expected value")


def _add_other(p):
    p.add_argument("--other", help="catalog name of the second curve")
    p.add_argument("--other-param", action="append", metavar="KEY=VALUE")
    p.add_argument("--other-offset", nargs=3, type=float, metavar=("DX", "DY", "DZ"),
                   help="translate the second curve (or the first, without --other)")
    p.add_argument("--correspondence", choices=(SHARED, CLOSEST), default=SHARED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moframe", description="Frames, helices and Bertrand curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("frames", help="sample Frenet and modified frames (CSV)"))
    _add_common(sub.add_parser("classify", help="helix and slant-helix tests (JSON)"))
    bert = sub.add_parser("bertrand", help="Bertrand mates and pair verification")
    bsub = bert.add_subparsers(dest="action", required=True)
    mate = bsub.add_parser("mate", help="construct the normal offset mate")
    _add_common(mate)
    mate.add_argument("--c", type=float, required=True)
    verify = bsub.add_parser("verify", help="check a candidate Bertrand pair")
    _add_common(verify)
    _add_other(verify)
    comb = sub.add_parser("combine", help="convex combination of two curves")
    _add_common(comb)
    _add_other(comb)
    comb.add_argument("--h", type=float, required=True)
    return parser


def _expectations(items, verdicts):
    ok = True
    for item in items or ():
        name, _, want = item.partition("=")
        want = want.strip().lower() or "true"
        if want not in ("true", "false"):
            raise InputError(f"--expect value must be true or false, got {want!r}")
        if name not in verdicts:
            raise InputError(f"unknown verdict {name!r}; available: {', '.join(verdicts) or 'none'}")
        ok &= verdicts[name] == (want == "true")
    return ok


def _write(path, text, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _execute(args, stdout):
    command = args.command if args.command != "bertrand" else f"bertrand {args.action}"
    source, curve = _curve_source(args)
    options = {}
    if command == "bertrand mate":
        options["c"] = args.c
    if command in ("bertrand verify", "combine"):
        options.update(other=args.other, other_params=_params(args.other_param),
                       other_offset=args.other_offset, correspondence=args.correspondence)
    if command == "combine":
        if not 0.0 <= args.h <= 1.0:
            raise InputError("--h must lie in [0, 1]")
        options["h"] = args.h
    fmt = args.format or ("csv" if command == "frames" else "json")
    cfg = RunConfig(command, source, args.samples, tuple(args.range) if args.range else None,
                    args.threshold, args.residual_threshold, fmt, args.output, options)
    grid = _grid(args, curve)

    if command == "frames":
        report, verdicts, table = _frames(cfg, curve, grid)
    elif command == "classify":
        report, verdicts, table = _classify(cfg, curve, grid)
    elif command == "bertrand mate":
        report, verdicts, table = _mate(cfg, curve, grid)
    else:
        other = _other_curve(args, curve)
        if command == "bertrand verify":
            report, verdicts, table = _verify(cfg, curve, grid, other)
        else:
            report, verdicts, table = _combine(cfg, curve, grid, other)

    if fmt == "csv":
        if table is None:
            raise InputError(f"{command} has no CSV output; use --format json")
        _write(cfg.output, _csv(*table), stdout)
    else:
        doc = {"schema": SCHEMA, "command": command, "config": asdict(cfg),
               "curve": _curve_info(curve), "grid": {"count": len(grid),
                                                     "lo": float(grid.values[0]),
                                                     "hi": float(grid.values[-1])}}
        doc.update(report)
        doc["verdicts"] = verdicts
        _write(cfg.output, dumps(doc) + "\n", stdout)
    if args.csv_path and table is not None:
        _write(args.csv_path, _csv(*table), stdout)
    return EXIT_OK if _expectations(args.expect, verdicts) else EXIT_VERDICT


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run the CLI with ``argv`` (without program name); returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _execute(args, stdout)
    except (InputError, UnknownCurve, ExpressionSyntaxError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (MoframeError, ArithmeticError) as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
