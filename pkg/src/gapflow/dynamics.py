"""Finite-time contact dynamics for the falling disk.

The gap height obeys the differential inequality

    h'(t) <= -g t / 2 + c_sharp g h0 + (c_star / m) * I(t),
    I(t)   = integral of |ln h(s)| over (0, t),

valid while h <= 1.  The integrator follows the equality case (the
slowest admissible descent); an optional adversarial mode additionally
clamps |h'| by the energy speed bound 2 sqrt(g h0).  A recursive time
sequence with geometric gap decay certifies contact no later than the
closed-form bound (1/4 + 24/sigma) sqrt(h0/g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "DynamicsParams",
    "GateError",
    "GateResult",
    "Trajectory",
    "IterationRecord",
    "initial_energy",
    "speed_bound",
    "parameter_gate",
    "minimal_mass",
    "log_series_sum",
    "integrate_envelope",
    "time_sequence",
    "contact_time_bound",
]


class GateError(RuntimeError):
    """A precondition of the contact argument is violated."""


@dataclass(frozen=True)
class DynamicsParams:
    """Physical and iteration parameters of the contact argument.

    Either the mass m or the solid density rho_s may be given; a
    homogeneous unit disk has m = pi rho_s.  The solid must be denser
    than the fluid (the disk falls) and sigma must lie in (0, 1/2).
    """

    h0: float
    m: Optional[float] = None
    rho_s: Optional[float] = None
    g: float = 9.81
    rho_f: float = 1.0
    sigma: float = 0.25
    c_sharp: float = 4.0
    c_star: float = 1.0
    u0_energy: float = 0.0
    lambda0: float = 0.0

    def __post_init__(self):
        if self.h0 <= 0.0:
            raise ValueError("initial gap h0 must be positive")
        if self.g <= 0.0 or self.rho_f <= 0.0:
            raise ValueError("g and rho_f must be positive")
        if not (0.0 < self.sigma < 0.5):
            raise ValueError(f"sigma must lie in (0, 1/2), got {self.sigma}")
        if self.u0_energy < 0.0 or self.c_star < 0.0:
            raise ValueError("u0_energy and c_star must be nonnegative")
        if self.m is None and self.rho_s is None:
            raise ValueError("give either the mass m or the density rho_s")
        if self.m is None:
            object.__setattr__(self, "m", math.pi * self.rho_s)
        if self.rho_s is None:
            object.__setattr__(self, "rho_s", self.m / math.pi)
        if self.rho_s <= self.rho_f:
            raise ValueError("rho_s must exceed rho_f (the disk must fall)")
        if self.added_mass <= 0.0:
            raise ValueError("buoyancy-corrected mass m - pi rho_f must be positive")

    @property
    def added_mass(self) -> float:
        return self.m - math.pi * self.rho_f


def initial_energy(d: DynamicsParams) -> float:
    """Kinetic seed plus potential energy (rho_f/2) |u0|^2 + m_a g h0."""
    return 0.5 * d.rho_f * d.u0_energy + d.added_mass * d.g * d.h0


def speed_bound(d: DynamicsParams) -> float:
    """Energy speed envelope 2 sqrt(g h0); needs E0 <= 2 m g h0."""
    e0 = initial_energy(d)
    cap = 2.0 * d.m * d.g * d.h0
    if e0 > cap:
        raise GateError(f"initial energy {e0:.6g} exceeds 2 m g h0 = {cap:.6g}")
    return 2.0 * math.sqrt(d.g * d.h0)


def log_series_sum(h0: float, sigma: float, rel_tol: float = 1e-10,
                   max_terms: int = 10_000_000) -> float:
    """Sum of q^k |ln((1-sigma)^(k+1) h0/2)| with q = 1 - sigma^2/32.

    Terms are q^k ((k+1) Lc + Mc) with Lc = ln(1/(1-sigma)) and
    Mc = |ln(h0/2)|.  Summation stops once a certified tail bound (the
    last term times the geometric envelope ratio, summed) drops below
    rel_tol of the partial sum.
    """
    if not (0.0 < h0 < 2.0):
        raise ValueError("log series needs 0 < h0 < 2")
    if not (0.0 < sigma < 0.5):
        raise ValueError("sigma must lie in (0, 1/2)")
    q = 1.0 - sigma**2 / 32.0
    lc = -math.log1p(-sigma)
    mc = abs(math.log(h0 / 2.0))
    total = 0.0
    for k in range(max_terms):
        term = q**k * ((k + 1) * lc + mc)
        total += term
        # envelope ratio: successive terms shrink at least by this factor
        rho = q * (1.0 + lc / ((k + 1) * lc + mc))
        if rho < 1.0:
            tail = term * rho / (1.0 - rho)
            if tail < rel_tol * total:
                return total
    raise RuntimeError("log series did not certify its tail")


def minimal_mass(h0: float, g: float = 9.81, sigma: float = 0.25,
                 c_star: float = 1.0, rel_tol: float = 1e-10) -> float:
    """Smallest mass for which both gate mass conditions hold.

    Combines the explicit logarithmic lower bound with the series bound
    3 c* sigma S / (4 g (1/32 - sigma/16)); the latter diverges as
    sigma -> 1/2.  Takes the physical parameters directly so the mass
    can be sized before a full parameter set exists.
    """
    denom = 1.0 / 32.0 - sigma / 16.0
    if denom <= 0.0:
        raise ValueError("series mass bound requires sigma < 1/2")
    if c_star < 0.0:
        raise ValueError("c_star must be nonnegative")
    explicit = (8.0 * c_star / g) * (
        abs(math.log(h0 / 2.0))
        + 3.0 * sigma * abs(math.log((1.0 - sigma) * h0 / 2.0))
    )
    if c_star == 0.0:
        return 0.0
    series = (3.0 * c_star * sigma * log_series_sum(h0, sigma, rel_tol)
              / (4.0 * g * denom))
    return max(explicit, series)


@dataclass(frozen=True)
class GateResult:
    passed: bool
    clauses: tuple[tuple[str, bool, str], ...]

    @property
    def first_failed(self) -> Optional[str]:
        for name, ok, _ in self.clauses:
            if not ok:
                return name
        return None

    def __bool__(self) -> bool:
        return self.passed


def parameter_gate(d: DynamicsParams, literal_max: bool = False) -> GateResult:
    """Check every smallness/largeness condition of the contact argument.

    The two gap conditions are h0 < 2/(3(1+sigma)) and
    h0 < 1/((32 c_sharp)^2 g).  The induction needs both, so the default
    combines them with `min`; literal_max=True restores the weaker
    either/or reading for fidelity runs.
    """
    clauses = []
    cap1 = 2.0 / (3.0 * (1.0 + d.sigma))
    cap2 = 1.0 / ((32.0 * d.c_sharp) ** 2 * d.g) if d.c_sharp > 0 else math.inf
    ok1, ok2 = d.h0 < cap1, d.h0 < cap2
    if literal_max:
        clauses.append(("h0_small_max", ok1 or ok2,
                        f"h0={d.h0:g} < max({cap1:g}, {cap2:g})"))
    else:
        clauses.append(("h0_lt_iteration_cap", ok1, f"h0={d.h0:g} < {cap1:g}"))
        clauses.append(("h0_lt_drift_cap", ok2, f"h0={d.h0:g} < {cap2:g}"))
    m_log = (8.0 * d.c_star / d.g) * (
        abs(math.log(d.h0 / 2.0))
        + 3.0 * d.sigma * abs(math.log((1.0 - d.sigma) * d.h0 / 2.0))
    )
    clauses.append(("mass_log_bound", d.m >= m_log, f"m={d.m:g} >= {m_log:g}"))
    e0 = initial_energy(d)
    cap = 2.0 * d.m * d.g * d.h0
    clauses.append(("energy_bound", e0 <= cap, f"E0={e0:g} <= {cap:g}"))
    m_star = minimal_mass(d.h0, d.g, d.sigma, d.c_star)
    clauses.append(("mass_series_bound", d.m >= m_star, f"m={d.m:g} >= {m_star:g}"))
    clauses.append(("lambda0_zero", d.lambda0 == 0.0,
                    f"lambda0={d.lambda0:g} must be 0"))
    return GateResult(all(ok for _, ok, _ in clauses), tuple(clauses))


@dataclass
class Trajectory:
    t: np.ndarray
    h: np.ndarray
    log_integral: np.ndarray
    contact_time: Optional[float]
    contacted: bool
    exceeded_unit_gap: bool = False
    dt: float = 0.0

    def gap_at(self, time: float) -> float:
        """Linearly interpolated gap; 0 after contact."""
        if self.contacted and time >= self.contact_time:
            return 0.0
        if time > self.t[-1]:
            raise ValueError(
                f"trajectory covers [0, {self.t[-1]:g}] but {time:g} was requested"
            )
        return float(np.interp(time, self.t, self.h))


def _rhs(d: DynamicsParams, t, h, I, h_floor, vmax):
    dh = -0.5 * d.g * t + d.c_sharp * d.g * d.h0 + (d.c_star / d.m) * I
    if vmax is not None:
        dh = max(-vmax, min(vmax, dh))
    dI = abs(math.log(max(h, h_floor)))
    return dh, dI


def _rk4_step(d, t, h, I, dt, h_floor, vmax):
    k1h, k1i = _rhs(d, t, h, I, h_floor, vmax)
    k2h, k2i = _rhs(d, t + 0.5 * dt, h + 0.5 * dt * k1h, I + 0.5 * dt * k1i, h_floor, vmax)
    k3h, k3i = _rhs(d, t + 0.5 * dt, h + 0.5 * dt * k2h, I + 0.5 * dt * k2i, h_floor, vmax)
    k4h, k4i = _rhs(d, t + dt, h + dt * k3h, I + dt * k3i, h_floor, vmax)
    return (h + dt * (k1h + 2.0 * k2h + 2.0 * k3h + k4h) / 6.0,
            I + dt * (k1i + 2.0 * k2i + 2.0 * k3i + k4i) / 6.0)


def integrate_envelope(d: DynamicsParams, dt: float, h_floor: float = 1e-12,
                       adversarial: bool = False, t_max: Optional[float] = None,
                       force: bool = False) -> Trajectory:
    """Integrate the equality envelope with a classical fourth-order step.

    Contact (h = 0) is located by bisecting the length of the final step.
    Integration stops at contact, when the gap exceeds 1 (inequality no
    longer valid; flagged), or at t_max.  Unless force=True the initial
    gap must not exceed 1.
    """
    if d.h0 > 1.0 and not force:
        raise GateError("envelope integration requires h0 <= 1 (force to override)")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    vmax = 2.0 * math.sqrt(d.g * d.h0) if adversarial else None
    if t_max is None:
        t_max = 3.0 * (0.25 + 24.0 / d.sigma) * math.sqrt(d.h0 / d.g)
    ts, hs, Is = [0.0], [d.h0], [0.0]
    t, h, I = 0.0, d.h0, 0.0
    contacted = False
    contact_time = None
    exceeded = False
    while t < t_max:
        if not (math.isfinite(h) and math.isfinite(I)):
            raise FloatingPointError("non-finite trajectory state")
        h_new, I_new = _rk4_step(d, t, h, I, dt, h_floor, vmax)
        if h_new <= 0.0:
            lo, hi = 0.0, dt
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                h_mid, _ = _rk4_step(d, t, h, I, mid, h_floor, vmax)
                if h_mid <= 0.0:
                    hi = mid
                else:
                    lo = mid
                if hi - lo <= 1e-16 * dt:
                    break
            contact_time = t + 0.5 * (lo + hi)
            _, I_c = _rk4_step(d, t, h, I, 0.5 * (lo + hi), h_floor, vmax)
            ts.append(contact_time)
            hs.append(0.0)
            Is.append(I_c)
            contacted = True
            break
        t, h, I = t + dt, h_new, I_new
        ts.append(t)
        hs.append(h)
        Is.append(I)
        if h > 1.0:
            exceeded = True
            break
    return Trajectory(np.asarray(ts), np.asarray(hs), np.asarray(Is),
                      contact_time, contacted, exceeded, dt)


@dataclass(frozen=True)
class IterationRecord:
    n: int
    t_n: float
    gap: float
    lower: float
    upper: float

    @property
    def within_bounds(self) -> bool:
        return self.lower <= self.gap <= self.upper


def time_sequence(d: DynamicsParams, traj: Trajectory,
                  n_max: int) -> list[IterationRecord]:
    """Recursive times t_{n+1} = t_n + sigma h(t_n) / (2 sqrt(g h0)).

    Starts at t0 = (1/4) sqrt(h0/g).  Gap values interpolate the
    trajectory; the geometric decay bounds (1-sigma)^n h0/2 and
    (1 - sigma^2/32)^n (3/2) h0 are attached to each record.
    """
    denom = 2.0 * math.sqrt(d.g * d.h0)
    t_n = 0.25 * math.sqrt(d.h0 / d.g)
    records = []
    for n in range(n_max + 1):
        if not traj.contacted and t_n > traj.t[-1]:
            raise ValueError(
                f"trajectory too short: needs horizon {t_n:g}, has {traj.t[-1]:g}"
            )
        gap = traj.gap_at(t_n)
        records.append(IterationRecord(
            n=n, t_n=t_n, gap=gap,
            lower=(1.0 - d.sigma) ** n * d.h0 / 2.0,
            upper=(1.0 - d.sigma**2 / 32.0) ** n * 1.5 * d.h0,
        ))
        t_n = t_n + d.sigma * gap / denom
    return records


def contact_time_bound(d: DynamicsParams) -> float:
    """Closed-form contact horizon (1/4 + 24/sigma) sqrt(h0/g).

    Sums the guaranteed geometric domination of the time increments,
    using sum of (1 - sigma^2/32)^n = 32/sigma^2.
    """
    return (0.25 + 24.0 / d.sigma) * math.sqrt(d.h0 / d.g)
