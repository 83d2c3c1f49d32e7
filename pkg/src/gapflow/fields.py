"""The explicit test velocity/pressure family on the gap geometry.

The stream function is a blend of two pieces: a cubic-profile gap stream

    phi_s = x1 [ (1-a) (x2/H) + a (x2/H)^3 ],   a = mu1 h + mu2 x1^2,

defined on the half strip |x1| < 1/2, 0 < x2 < H(x1), and a radially cut
off far field phi_0 = x1 rho(|x - center|) that equals x1 near the disk
and 0 beyond radius 1+2*delta.  A square cutoff chi (1 on (-1/4,1/4)^2,
0 outside [-1/2,1/2]^2) joins them:

    Psi = chi phi_s + (1-chi) phi_0   in the half strip,
    Psi = phi_0                       elsewhere in the fluid.

The velocity is w = (-d2 Psi, d1 Psi); inside the disk it is the rigid
translation e2.  The pressure is chi times an explicit primitive whose
x1-integral terms are evaluated by adaptive quadrature from -1/2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from gapflow import _kernels as K
from gapflow.geometry import GapGeometry, Region, classify_point

__all__ = [
    "FieldParams",
    "FieldSample",
    "RigidData",
    "QuadratureError",
    "coef_a",
    "stream_gap",
    "stream_global",
    "velocity",
    "velocity_jet",
    "shear_on_disk",
    "pressure",
    "residual",
    "w_star",
]

_PROFILES = {"exp": K.PROFILE_EXP, "poly7": K.PROFILE_POLY7}

PAPER_MU1 = 1.0 / 6.0
PAPER_MU2 = -1.5


class QuadratureError(RuntimeError):
    """Raised when an adaptive pressure integral misses its tolerance."""


@dataclass(frozen=True)
class FieldParams:
    """Gap-profile coefficients and cutoff profile choices.

    mu1/mu2 parametrize the cubic stream profile; the defaults are the
    reference tuning.  Both cutoff profiles are smooth transitions with
    at least three continuous derivatives ("exp" is C-infinity, "poly7"
    a C^3 polynomial step).
    """

    mu1: float = PAPER_MU1
    mu2: float = PAPER_MU2
    chi_profile: str = "exp"
    phi_profile: str = "exp"

    def __post_init__(self):
        for name in (self.chi_profile, self.phi_profile):
            if name not in _PROFILES:
                raise ValueError(f"unknown cutoff profile {name!r}; "
                                 f"choose from {sorted(_PROFILES)}")

    @property
    def chi_kind(self) -> int:
        return _PROFILES[self.chi_profile]

    @property
    def phi_kind(self) -> int:
        return _PROFILES[self.phi_profile]


@dataclass
class FieldSample:
    """Velocity, gradient, symmetric gradient and optional pressure data."""

    w: np.ndarray
    grad_w: np.ndarray
    D: np.ndarray
    stream_third: np.ndarray  # (d111, d112, d122, d222) of the stream
    q: Optional[float] = None
    residual: Optional[np.ndarray] = None

    @property
    def divergence(self) -> float:
        return float(self.grad_w[0, 0] + self.grad_w[1, 1])


@dataclass(frozen=True)
class RigidData:
    """Rigid translation carried inside the disk and the boundary field.

    The test field equals lambda_w = e2 throughout the disk; w_star marks
    the boundary data it is compatible with (e2 on the disk circle, 0 on
    the container walls).
    """

    lambda_w: tuple[float, float] = (0.0, 1.0)


def w_star(g: GapGeometry, x) -> np.ndarray:
    """Boundary indicator field: e2 on the disk circle, 0 on the walls."""
    x1, x2 = float(x[0]), float(x[1])
    dx, dy = x1, x2 - (1.0 + g.h)
    if abs(dx * dx + dy * dy - 1.0) < 1e-12:
        return np.array([0.0, 1.0])
    on_wall = (
        abs(x2) < 1e-12 or abs(x2 - g.Lp) < 1e-12 or abs(abs(x1) - g.L) < 1e-12
    )
    if on_wall:
        return np.zeros(2)
    raise ValueError(f"point {x} is not on the fluid boundary")


def coef_a(p: FieldParams, h: float, x1):
    """Profile coefficient a(h, x1) = mu1 h + mu2 x1^2."""
    x1 = np.asarray(x1, dtype=np.float64)
    out = p.mu1 * h + p.mu2 * x1 * x1
    return float(out) if out.ndim == 0 else out


def stream_gap(p: FieldParams, g: GapGeometry, x) -> float:
    """Gap-profile stream phi_s at a point of the closed half strip."""
    x1, x2 = float(x[0]), float(x[1])
    H = g.h + 1.0 - np.sqrt(1.0 - x1 * x1) if abs(x1) <= 1.0 else np.nan
    if not (abs(x1) < 0.5 and 0.0 <= x2 <= H):
        raise ValueError(f"point {x} outside the half gap strip")
    a = coef_a(p, g.h, x1)
    t = x2 / H
    return float(x1 * ((1.0 - a) * t + a * t**3))


def _jet_at(p: FieldParams, g: GapGeometry, x1, x2, region: Region) -> np.ndarray:
    x1 = np.atleast_1d(np.asarray(x1, dtype=np.float64))
    x2 = np.atleast_1d(np.asarray(x2, dtype=np.float64))
    if region in (Region.GAP_CORE, Region.GAP_HALF):
        return K.gap_stream_jet(x1, x2, g.h, p.mu1, p.mu2, g.delta,
                                p.chi_kind, p.phi_kind)
    return K.outer_stream_jet(x1, x2, g.h, g.delta, p.phi_kind)


def stream_global(p: FieldParams, g: GapGeometry, x) -> float:
    """Stream function on the closed container (continued by x1 in the disk)."""
    region = classify_point(g, x)
    if region is Region.OUTSIDE:
        raise ValueError(f"point {x} outside the container")
    if region is Region.DISK:
        return float(x[0])
    return float(_jet_at(p, g, x[0], x[1], region)[0, 0])


def velocity(p: FieldParams, g: GapGeometry, x) -> np.ndarray:
    """Velocity w = (-d2 Psi, d1 Psi); the rigid e2 inside the disk."""
    region = classify_point(g, x)
    if region is Region.OUTSIDE:
        raise ValueError(f"point {x} outside the container")
    if region is Region.DISK:
        return np.array([0.0, 1.0])
    J = _jet_at(p, g, x[0], x[1], region)[0]
    return np.array([-J[2], J[1]])


def _sample_from_jet(J: np.ndarray) -> FieldSample:
    grad = np.array([[-J[4], -J[5]], [J[3], J[4]]])
    D = 0.5 * (grad + grad.T)
    return FieldSample(w=np.array([-J[2], J[1]]), grad_w=grad, D=D,
                       stream_third=J[6:10].copy())


def velocity_jet(p: FieldParams, g: GapGeometry, x) -> FieldSample:
    """Velocity with first derivatives and the third stream derivatives.

    Points on region interfaces evaluate on the classify_point convention.
    """
    region = classify_point(g, x)
    if region is Region.OUTSIDE:
        raise ValueError(f"point {x} outside the container")
    if region is Region.DISK:
        return FieldSample(w=np.array([0.0, 1.0]), grad_w=np.zeros((2, 2)),
                           D=np.zeros((2, 2)), stream_third=np.zeros(4))
    return _sample_from_jet(_jet_at(p, g, x[0], x[1], region)[0])


def shear_on_disk(p: FieldParams, g: GapGeometry, theta: float) -> float:
    """Tangential shear 2 D(w) n . tau at the disk-boundary angle theta."""
    ct, st = np.cos(theta), np.sin(theta)
    x1, x2 = ct, 1.0 + g.h + st
    if abs(x1) < 0.5 and st < 0.0:
        J = _jet_at(p, g, x1, x2, Region.GAP_HALF)[0]
    else:
        J = _jet_at(p, g, x1, x2, Region.FLUID_OUTER)[0]
    d11, d22 = -J[4], J[4]
    d12 = 0.5 * (J[3] - J[5])
    n1, n2 = -ct, -st
    t1, t2 = st, -ct
    return float(2.0 * ((d11 * n1 + d12 * n2) * t1 + (d12 * n1 + d22 * n2) * t2))


def _quad_checked(f, a, b, abs_tol):
    # near-closing gaps make the integrands large, so the requested absolute
    # tolerance can sit below the roundoff floor; the explicit error check
    # below replaces scipy's warning about that
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(f, a, b, epsabs=abs_tol, epsrel=0.0, limit=400)
    if err > 10.0 * abs_tol and err > 1e-8 * max(1.0, abs(val)):
        raise QuadratureError(
            f"pressure integral achieved abs error {err:.3e} > tol {abs_tol:.3e}"
        )
    return val


def pressure_integrals(p: FieldParams, g: GapGeometry, x1_sorted,
                       abs_tol: float = 1e-10):
    """Cumulative integrals I1, I2 from -1/2 at sorted abscissae.

    I1 integrates -6 s a / H^3, I2 integrates the curvature compensation
    term; both integrands are even about 0, so integration from -1/2 keeps
    the primitives even in x1.
    """
    h, mu1, mu2 = g.h, p.mu1, p.mu2

    def f1(s):
        arr = np.array([s])
        _, _, i1, _ = K.pressure_coeffs(arr, h, mu1, mu2)
        return i1[0]

    def f2(s):
        arr = np.array([s])
        _, _, _, i2 = K.pressure_coeffs(arr, h, mu1, mu2)
        return i2[0]

    x1_sorted = np.asarray(x1_sorted, dtype=np.float64)
    I1 = np.empty_like(x1_sorted)
    I2 = np.empty_like(x1_sorted)
    prev, a1, a2 = -0.5, 0.0, 0.0
    for i, x in enumerate(x1_sorted):
        if x != prev:
            a1 += _quad_checked(f1, prev, x, abs_tol)
            a2 += _quad_checked(f2, prev, x, abs_tol)
            prev = x
        I1[i] = a1
        I2[i] = a2
    return I1, I2


def _pressure_terms(p: FieldParams, g: GapGeometry, x1: float, x2: float,
                    abs_tol: float = 1e-10):
    """q_tilde, (d1 q_tilde, d2 q_tilde) and the chi jet at one gap point."""
    arr1 = np.array([float(x1)])
    arr2 = np.array([float(x2)])
    J = K.gap_stream_jet(arr1, arr2, g.h, p.mu1, p.mu2, g.delta,
                         p.chi_kind, p.phi_kind)[0]
    PQ, PQp, i1, i2 = (v[0] for v in K.pressure_coeffs(arr1, g.h, p.mu1, p.mu2))
    I1, I2 = pressure_integrals(p, g, arr1, abs_tol)
    qt = I1[0] + 2.0 * I2[0] + J[4] + PQ * x2 * x2
    dqt1 = i1 + 2.0 * i2 + J[7] + PQp * x2 * x2
    dqt2 = J[8] + 2.0 * PQ * x2
    C = K.chi_jet(arr1, arr2, p.chi_kind)[0]
    lap = np.array([-J[7] - J[9], J[6] + J[8]])
    return qt, np.array([dqt1, dqt2]), C, lap


def pressure(p: FieldParams, g: GapGeometry, x, abs_tol: float = 1e-10) -> float:
    """Pressure q = chi q_tilde in the half gap strip, 0 elsewhere."""
    region = classify_point(g, x)
    if region not in (Region.GAP_CORE, Region.GAP_HALF):
        return 0.0
    qt, _, C, _ = _pressure_terms(p, g, x[0], x[1], abs_tol)
    return float(C[0] * qt)


def residual(p: FieldParams, g: GapGeometry, x, abs_tol: float = 1e-10) -> np.ndarray:
    """Momentum residual (Laplacian of w) - grad(chi q_tilde) at a gap point."""
    region = classify_point(g, x)
    if region not in (Region.GAP_CORE, Region.GAP_HALF):
        raise ValueError(f"residual is defined on the gap strip; {x} is {region}")
    qt, dqt, C, lap = _pressure_terms(p, g, x[0], x[1], abs_tol)
    grad_q = C[0] * dqt + qt * np.array([C[1], C[2]])
    return lap - grad_q
