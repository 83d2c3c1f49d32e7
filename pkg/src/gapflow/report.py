"""Suite orchestration: runs the verification tasks, writes CSV data and
JSON summaries, and assembles a manifest with checksums.

All data outputs are deterministic for a fixed configuration and kernel
backend (fixed quadrature nodes, fixed seeds, fixed summation order).
The manifest additionally records wall-clock times, which naturally vary
between runs; consumers comparing runs byte for byte should skip
manifest.json (or mask its wall_clock fields).
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from gapflow import __version__, _kernels
from gapflow.config import RunConfig
from gapflow.dynamics import (
    DynamicsParams,
    contact_time_bound,
    integrate_envelope,
    parameter_gate,
    minimal_mass,
    speed_bound,
    time_sequence,
)
from gapflow.fields import FieldParams
from gapflow.geometry import GapGeometry, validate_geometry
from gapflow.quadrature import QuadratureSpec, l2_norms
from gapflow.verifier import (
    ScalingReport,
    korn_ratio,
    ladder_bundles,
    lambda_flux_identity,
    mu_sensitivity,
    scaling_reports,
)
from gapflow import fieldchecks

SUITES = ("verify-fields", "scaling-sweep", "contact-sim", "param-gate",
          "minimal-mass", "all")

__all__ = ["RunManifest", "TaskResult", "run_suite", "SUITES"]


@dataclass
class TaskResult:
    task: str
    passed: bool
    wall_clock: float
    files: tuple[str, ...]
    summary: dict


@dataclass
class RunManifest:
    config_hash: str
    version: str
    backend: str
    notes: tuple[str, ...]
    tasks: tuple[TaskResult, ...]
    checksums: dict[str, str]

    @property
    def all_passed(self) -> bool:
        return all(t.passed for t in self.tasks)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _config_hash(cfg: RunConfig) -> str:
    blob = json.dumps(cfg.values, sort_keys=True, default=_fmt).encode()
    return hashlib.sha256(blob).hexdigest()


def _report_payload(r: ScalingReport) -> dict:
    d = asdict(r)
    d["h_values"] = list(r.h_values)
    d["values"] = list(r.values)
    d["weighted_values"] = list(r.weighted_values)
    return d


def _task_verify_fields(cfg: RunConfig, out: Path) -> TaskResult:
    t0 = time.perf_counter()
    p = cfg.field_params()
    rows, checks = [], []
    for h in (1.0, 1e-1, 1e-3):
        g = cfg.geometry(h)
        for chk in fieldchecks.run_field_checks(p, g):
            rows.append((chk.check_id, h, chk.metric, chk.threshold,
                         int(chk.passed)))
            checks.append(chk)
    ok = all(c.passed for c in checks)
    _write_csv(out / "verify_fields.csv",
               ["check_id", "h", "metric", "threshold", "passed"], rows)
    summary = {
        "passed": ok,
        "n_checks": len(checks),
        "failed": [c.check_id for c in checks if not c.passed],
    }
    _write_json(out / "verify_fields_summary.json", summary)
    return TaskResult("verify-fields", ok, time.perf_counter() - t0,
                      ("verify_fields.csv", "verify_fields_summary.json"), summary)


def _task_scaling_sweep(cfg: RunConfig, out: Path) -> TaskResult:
    t0 = time.perf_counter()
    p = cfg.field_params()
    spec = cfg.quadrature_spec()
    geo = cfg["geometry"]
    sweep = cfg["sweep"]
    ladder = cfg.ladder()
    tol = sweep["slope_tol"]

    for h in ladder:
        val = validate_geometry(cfg.geometry(h))
        if not val.ok:
            raise ValueError(f"geometry invalid at h={h}: {val.failures[0]}")

    bundles = ladder_bundles(p, ladder, spec, L=geo["l"], Lp=geo["lp"],
                             delta=geo["delta"])
    reports = scaling_reports(ladder, bundles, tolerance=tol)
    reports.append(mu_sensitivity(sweep["mu1_alt"], sweep["mu2_alt"], ladder,
                                  chi_profile=p.chi_profile,
                                  phi_profile=p.phi_profile, L=geo["l"],
                                  Lp=geo["lp"], delta=geo["delta"],
                                  tolerance=tol))

    korn_vals = [korn_ratio(p, cfg.geometry(h), spec, bundle=b)
                 for h, b in zip(ladder, bundles)]
    korn_band = max(korn_vals) / min(korn_vals)
    korn_ok = korn_band <= 3.0 and min(korn_vals) >= 1.0

    flux_vals = {h: lambda_flux_identity(p, cfg.geometry(h), spec)
                 for h in (0.5, 0.1, 0.01)}
    flux_ok = all(abs(v - 1.0) <= 1e-6 for v in flux_vals.values())

    rows = []
    for r in reports:
        for h, v, wv in zip(r.h_values, r.values, r.weighted_values):
            rows.append((r.estimate_id, h, v, wv))
    for h, v in zip(ladder, korn_vals):
        rows.append(("korn_ratio", h, v, v))
    for h, v in sorted(flux_vals.items(), reverse=True):
        rows.append(("lambda_flux", h, v, v))
    _write_csv(out / "scaling_sweep.csv",
               ["estimate_id", "h", "value", "weighted_value"], rows)

    verdicts = {r.estimate_id: r.passed for r in reports if r.passed is not None}
    verdicts["korn_band"] = korn_ok
    verdicts["lambda_flux"] = flux_ok
    ok = all(verdicts.values())
    summary = {
        "passed": ok,
        "slopes": {r.estimate_id: r.slope for r in reports},
        "verdicts": verdicts,
        "korn_ratios": dict(zip(map(repr, ladder), korn_vals)),
        "korn_band": korn_band,
        "lambda_flux": {repr(k): v for k, v in flux_vals.items()},
        "reports": [_report_payload(r) for r in reports],
    }
    _write_json(out / "scaling_sweep_summary.json", summary)
    return TaskResult("scaling-sweep", ok, time.perf_counter() - t0,
                      ("scaling_sweep.csv", "scaling_sweep_summary.json"), summary)


def _task_contact_sim(cfg: RunConfig, out: Path) -> TaskResult:
    t0 = time.perf_counter()
    d = cfg.dynamics_params()
    dd = cfg["dynamics"]
    gate = parameter_gate(d, literal_max=dd["literal_max_gate"])
    dt = cfg.dt()
    traj = integrate_envelope(d, dt, h_floor=dd["h_floor"],
                              adversarial=dd["adversarial"],
                              force=not gate.passed)
    bound = contact_time_bound(d)
    records = time_sequence(d, traj, dd["n_iterations"]) if traj.contacted else []
    rec_ok = all(r.within_bounds for r in records)
    contact_ok = traj.contacted and (traj.contact_time <= bound)
    ok = bool(gate.passed and contact_ok and rec_ok and not traj.exceeded_unit_gap)

    stride = max(1, traj.t.size // 10000)
    rows = list(zip(traj.t[::stride], traj.h[::stride],
                    traj.log_integral[::stride]))
    if stride > 1 and (traj.t.size - 1) % stride:
        rows.append((traj.t[-1], traj.h[-1], traj.log_integral[-1]))
    _write_csv(out / "contact_sim.csv", ["t", "h", "I"], rows)

    summary = {
        "passed": ok,
        "gate": {"passed": gate.passed,
                 "clauses": [{"id": c, "ok": o, "detail": s}
                             for c, o, s in gate.clauses]},
        "dt": dt,
        "contacted": traj.contacted,
        "contact_time": traj.contact_time,
        "contact_time_bound": bound,
        "exceeded_unit_gap": traj.exceeded_unit_gap,
        "speed_bound": 2.0 * math.sqrt(d.g * d.h0),
        "iteration_records": [
            {"n": r.n, "t_n": r.t_n, "gap": r.gap, "lower": r.lower,
             "upper": r.upper, "within": r.within_bounds} for r in records
        ],
    }
    _write_json(out / "contact_sim_summary.json", summary)
    return TaskResult("contact-sim", ok, time.perf_counter() - t0,
                      ("contact_sim.csv", "contact_sim_summary.json"), summary)


def _task_param_gate(cfg: RunConfig, out: Path) -> TaskResult:
    t0 = time.perf_counter()
    d = cfg.dynamics_params()
    gate = parameter_gate(d, literal_max=cfg["dynamics"]["literal_max_gate"])
    summary = {
        "passed": gate.passed,
        "first_failed": gate.first_failed,
        "clauses": [{"id": c, "ok": o, "detail": s} for c, o, s in gate.clauses],
    }
    _write_json(out / "param_gate_summary.json", summary)
    return TaskResult("param-gate", gate.passed, time.perf_counter() - t0,
                      ("param_gate_summary.json",), summary)


def _task_minimal_mass(cfg: RunConfig, out: Path) -> TaskResult:
    t0 = time.perf_counter()
    d = cfg.dynamics_params()
    value = minimal_mass(d)
    summary = {
        "passed": True,
        "minimal_mass": value,
        "configured_mass": d.m,
        "mass_sufficient": d.m >= value,
    }
    _write_json(out / "minimal_mass_summary.json", summary)
    return TaskResult("minimal-mass", True, time.perf_counter() - t0,
                      ("minimal_mass_summary.json",), summary)


_TASKS: dict[str, Callable] = {
    "verify-fields": _task_verify_fields,
    "scaling-sweep": _task_scaling_sweep,
    "contact-sim": _task_contact_sim,
    "param-gate": _task_param_gate,
    "minimal-mass": _task_minimal_mass,
}


def run_suite(cfg: RunConfig, suite: str, out_dir) -> RunManifest:
    """Run one task (or all) and write outputs plus manifest under out_dir."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = list(_TASKS) if suite == "all" else [suite]
    results = []
    for name in names:
        results.append(_TASKS[name](cfg, out))

    checksums = {}
    for res in results:
        for fname in res.files:
            digest = hashlib.sha256((out / fname).read_bytes()).hexdigest()
            checksums[fname] = digest

    manifest = RunManifest(
        config_hash=_config_hash(cfg),
        version=__version__,
        backend=_kernels.BACKEND,
        notes=cfg.notes,
        tasks=tuple(results),
        checksums=checksums,
    )
    payload = {
        "config_hash": manifest.config_hash,
        "version": manifest.version,
        "backend": manifest.backend,
        "notes": list(manifest.notes),
        "tasks": [
            {"task": t.task, "passed": t.passed, "wall_clock": t.wall_clock,
             "files": list(t.files)} for t in manifest.tasks
        ],
        "checksums": checksums,
        "all_passed": manifest.all_passed,
    }
    _write_json(out / "manifest.json", payload)

    with open(out / "verdicts.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{'task':<16s} {'verdict':<8s}\n")
        for t in manifest.tasks:
            fh.write(f"{t.task:<16s} {'pass' if t.passed else 'FAIL':<8s}\n")
        fh.write(f"{'overall':<16s} "
                 f"{'pass' if manifest.all_passed else 'FAIL':<8s}\n")
    return manifest
