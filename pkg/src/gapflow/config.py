"""Run configuration: plain-text key=value files with [section] headers.

Unknown keys, type mismatches and invariant violations fail with the
offending key and line number.  Every key can be overridden through the
environment as GAPFLOW_<SECTION>_<KEY>.  Values left at their defaults
reproduce the reference setup (coefficient pair (1/6, -3/2), drift
constant 4, ladder 1e-1 .. 1e-5); departures worth flagging are listed
in RunConfig.notes and surface in the run manifest.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

from gapflow.dynamics import DynamicsParams
from gapflow.fields import FieldParams, PAPER_MU1, PAPER_MU2
from gapflow.geometry import GapGeometry
from gapflow.quadrature import QuadratureSpec

__all__ = ["RunConfig", "ConfigError", "load_config", "ENV_PREFIX"]

ENV_PREFIX = "GAPFLOW"


class ConfigError(ValueError):
    pass


def _parse_bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_floats(s: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in s.replace(",", " ").split())


# section -> key -> (converter, default)
_SCHEMA: dict[str, dict[str, tuple[Any, Any]]] = {
    "geometry": {
        "h": (float, 0.1),
        "l": (float, 2.0),
        "lp": (float, 4.0),
        "delta": (float, 0.015),
    },
    "field": {
        "mu1": (float, PAPER_MU1),
        "mu2": (float, PAPER_MU2),
        "chi_profile": (str, "exp"),
        "phi_profile": (str, "exp"),
    },
    "quadrature": {
        "nodes_x1": (int, 128),
        "nodes_x2": (int, 64),
        "boundary_nodes": (int, 64),
        "abs_tol": (float, 1e-8),
    },
    "dynamics": {
        "g": (float, 9.81),
        "m": (float, 250000.0),
        "h0": (float, 5e-6),
        "rho_f": (float, 1.0),
        "sigma": (float, 0.25),
        "c_sharp": (float, 4.0),
        "c_star": (float, 1.0),
        "u0_energy": (float, 0.0),
        "dt": (float, 0.0),  # 0 -> automatic 1e-5 sqrt(h0/g)
        "h_floor": (float, 1e-12),
        "adversarial": (_parse_bool, False),
        "n_iterations": (int, 40),
        "literal_max_gate": (_parse_bool, False),
    },
    "sweep": {
        "h_ladder": (_parse_floats, (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)),
        "slope_tol": (float, 0.1),
        "mu1_alt": (float, 0.2),
        "mu2_alt": (float, PAPER_MU2),
    },
    "output": {
        "dir": (str, "out"),
    },
}


@dataclass
class RunConfig:
    values: dict[str, dict[str, Any]]
    notes: tuple[str, ...] = ()
    source: str = "<defaults>"

    def __getitem__(self, section: str) -> dict[str, Any]:
        return self.values[section]

    def geometry(self, h: Optional[float] = None) -> GapGeometry:
        geo = self.values["geometry"]
        return GapGeometry(h=geo["h"] if h is None else h, L=geo["l"],
                           Lp=geo["lp"], delta=geo["delta"])

    def field_params(self) -> FieldParams:
        f = self.values["field"]
        return FieldParams(mu1=f["mu1"], mu2=f["mu2"],
                           chi_profile=f["chi_profile"],
                           phi_profile=f["phi_profile"])

    def quadrature_spec(self) -> QuadratureSpec:
        q = self.values["quadrature"]
        return QuadratureSpec(nodes_x1=q["nodes_x1"], nodes_x2=q["nodes_x2"],
                              boundary_nodes=q["boundary_nodes"],
                              abs_tol=q["abs_tol"])

    def dynamics_params(self) -> DynamicsParams:
        dd = self.values["dynamics"]
        return DynamicsParams(h0=dd["h0"], m=dd["m"], g=dd["g"],
                              rho_f=dd["rho_f"], sigma=dd["sigma"],
                              c_sharp=dd["c_sharp"], c_star=dd["c_star"],
                              u0_energy=dd["u0_energy"])

    def dt(self) -> float:
        dd = self.values["dynamics"]
        if dd["dt"] > 0.0:
            return dd["dt"]
        return 1e-5 * (dd["h0"] / dd["g"]) ** 0.5

    def ladder(self) -> tuple[float, ...]:
        return self.values["sweep"]["h_ladder"]


def _collect_notes(values: dict[str, dict[str, Any]]) -> tuple[str, ...]:
    notes = []
    f = values["field"]
    if f["mu1"] != PAPER_MU1 or f["mu2"] != PAPER_MU2:
        notes.append(
            f"field.mu=({f['mu1']:g},{f['mu2']:g}) differs from the reference "
            f"pair ({PAPER_MU1:g},{PAPER_MU2:g})"
        )
    if values["dynamics"]["c_sharp"] != 4.0:
        notes.append(f"dynamics.c_sharp={values['dynamics']['c_sharp']:g} "
                     "differs from the reference value 4")
    if values["dynamics"]["adversarial"]:
        notes.append("dynamics.adversarial=on (speed-bound clamped envelope)")
    return tuple(notes)


def _validate(values: dict[str, dict[str, Any]], where: str) -> None:
    cfg = RunConfig(values)
    try:
        cfg.field_params()
        cfg.quadrature_spec()
        cfg.geometry()
        cfg.dynamics_params()
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    ladder = values["sweep"]["h_ladder"]
    if len(ladder) < 2:
        raise ConfigError(f"{where}: sweep.h_ladder needs at least two values")
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ConfigError(f"{where}: sweep.h_ladder must be strictly decreasing")
    if any(not (0.0 < h <= 1.0) for h in ladder):
        raise ConfigError(f"{where}: sweep.h_ladder values must lie in (0, 1]")


def load_config(path: Optional[str] = None,
                environ: Optional[dict] = None) -> RunConfig:
    """Parse, apply environment overrides, validate and return a RunConfig.

    A missing path (None) yields the full defaults.
    """
    values = {sec: {k: dv for k, (_, dv) in keys.items()}
              for sec, keys in _SCHEMA.items()}
    source = "<defaults>"
    if path is not None:
        source = str(path)
        section = None
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if line.startswith("[") and line.endswith("]"):
                    section = line[1:-1].strip().lower()
                    if section not in _SCHEMA:
                        raise ConfigError(
                            f"{source}:{lineno}: unknown section [{section}]"
                        )
                    continue
                if "=" not in line:
                    raise ConfigError(
                        f"{source}:{lineno}: expected key=value, got {line!r}"
                    )
                if section is None:
                    raise ConfigError(
                        f"{source}:{lineno}: key outside of any [section]"
                    )
                key, _, val = line.partition("=")
                key = key.strip().lower()
                if key not in _SCHEMA[section]:
                    raise ConfigError(
                        f"{source}:{lineno}: unknown key {key!r} in [{section}]"
                    )
                conv, _ = _SCHEMA[section][key]
                try:
                    values[section][key] = conv(val.strip())
                except ValueError as exc:
                    raise ConfigError(
                        f"{source}:{lineno}: bad value for {section}.{key}: {exc}"
                    ) from exc

    env = os.environ if environ is None else environ
    for sec, keys in _SCHEMA.items():
        for key, (conv, _) in keys.items():
            name = f"{ENV_PREFIX}_{sec.upper()}_{key.upper()}"
            if name in env:
                try:
                    values[sec][key] = conv(env[name])
                except ValueError as exc:
                    raise ConfigError(f"env {name}: {exc}") from exc

    _validate(values, source)
    return RunConfig(values, _collect_notes(values), source)
