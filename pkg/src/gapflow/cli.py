"""Command-line front end.

Subcommands mirror the suites (verify-fields, scaling-sweep, contact-sim,
param-gate, minimal-mass, all) plus field-eval for pointwise evaluation
of the velocity/pressure family.  Exit status is 0 only when every
verdict of the executed suite passes.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from gapflow import __version__, _kernels
from gapflow.config import ConfigError, load_config
from gapflow.fields import FieldParams, pressure, residual, velocity
from gapflow.geometry import Region, classify_point
from gapflow.report import SUITES, run_suite

_DYNAMICS_FLAGS = {
    "g": "g", "m": "m", "h0": "h0", "sigma": "sigma",
    "c_sharp": "c_sharp", "c_star": "c_star", "dt": "dt",
}


def _add_dynamics_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--g", type=float, help="gravity")
    sp.add_argument("--m", type=float, help="disk mass")
    sp.add_argument("--h0", type=float, help="initial gap")
    sp.add_argument("--sigma", type=float, help="iteration parameter in (0, 1/2)")
    sp.add_argument("--c-sharp", dest="c_sharp", type=float, help="drift constant")
    sp.add_argument("--c-star", dest="c_star", type=float, help="log-term constant")
    sp.add_argument("--dt", type=float, help="integrator step (0 = auto)")
    sp.add_argument("--adversarial", action="store_true", default=None,
                    help="clamp the envelope by the energy speed bound")


def _apply_dynamics_flags(cfg, args) -> None:
    for flag, key in _DYNAMICS_FLAGS.items():
        val = getattr(args, flag, None)
        if val is not None:
            cfg.values["dynamics"][key] = val
    if getattr(args, "adversarial", None):
        cfg.values["dynamics"]["adversarial"] = True


def _cmd_field_eval(args) -> int:
    cfg = load_config(args.config)
    if args.h is not None:
        cfg.values["geometry"]["h"] = args.h
    if args.mu1 is not None:
        cfg.values["field"]["mu1"] = args.mu1
    if args.mu2 is not None:
        cfg.values["field"]["mu2"] = args.mu2
    g = cfg.geometry()
    p = cfg.field_params()

    src = sys.stdin if args.points == "-" else open(args.points, "r")
    try:
        rows = []
        for lineno, line in enumerate(src, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if lineno == 1 and line.lower().replace(" ", "") in ("x1,x2",):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                print(f"bad point line {lineno}: {line!r}", file=sys.stderr)
                return 2
            rows.append((float(parts[0]), float(parts[1])))
    finally:
        if src is not sys.stdin:
            src.close()

    out = sys.stdout if args.out_file is None else open(args.out_file, "w")
    try:
        out.write("x1,x2,w1,w2,q,abs_residual\n")
        for x1, x2 in rows:
            w = velocity(p, g, (x1, x2))
            q = pressure(p, g, (x1, x2))
            region = classify_point(g, (x1, x2))
            if region in (Region.GAP_CORE, Region.GAP_HALF):
                res = float(np.hypot(*residual(p, g, (x1, x2))))
            else:
                res = 0.0
            out.write(f"{x1!r},{x2!r},{w[0]!r},{w[1]!r},{q!r},{res!r}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_suite(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _apply_dynamics_flags(cfg, args)
    out_dir = args.out or cfg["output"]["dir"]
    manifest = run_suite(cfg, args.suite, out_dir)
    for task in manifest.tasks:
        status = "pass" if task.passed else "FAIL"
        print(f"{task.task:<16s} {status}  ({task.wall_clock:.2f} s)")
    print(f"outputs in {out_dir}  (backend: {manifest.backend})")
    return 0 if manifest.all_passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gapflow",
        description="Verification suites for the shrinking-gap test-velocity "
                    "family and the finite-time contact dynamics.",
    )
    parser.add_argument("--version", action="version",
                        version=f"gapflow {__version__} ({_kernels.BACKEND})")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--out", help="output directory (default from config)")
    sub = parser.add_subparsers(dest="command", required=True)

    for suite in SUITES:
        sp = sub.add_parser(suite, help=f"run the {suite} suite")
        sp.set_defaults(func=_cmd_suite, suite=suite)
        if suite in ("contact-sim", "param-gate", "minimal-mass", "all"):
            _add_dynamics_flags(sp)

    fe = sub.add_parser("field-eval",
                        help="evaluate the velocity/pressure family at points")
    fe.add_argument("--h", type=float, help="gap height")
    fe.add_argument("--mu1", type=float, help="profile coefficient mu1")
    fe.add_argument("--mu2", type=float, help="profile coefficient mu2")
    fe.add_argument("--points", required=True,
                    help="CSV of x1,x2 points ('-' for stdin)")
    fe.add_argument("--out-file", help="write CSV here instead of stdout")
    fe.set_defaults(func=_cmd_field_eval)

    args = parser.parse_args(argv)
    # propagate --config/--out given after the subcommand too
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
