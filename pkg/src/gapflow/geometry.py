"""Container/disk/gap geometry: the rectangle (-L,L)x(0,Lp) minus the unit
disk resting at height h above the bottom wall.

Regions and conventions
-----------------------
The disk has center (0, 1+h) and radius 1.  Below it, the gap regions are

    gap core : |x1| < 1/4, 0 < x2 < H(x1)
    gap half : 1/4 <= |x1| < 1/2, 0 < x2 < H(x1)

with H(x1) = h + gamma(x1) and gamma(x1) = 1 - sqrt(1 - x1^2).  Points on
region interfaces are assigned to the innermost region (disk boundary ->
disk, |x1| = 1/4 -> gap core, ...) so that evaluation is deterministic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GapGeometry",
    "GeometryValidation",
    "Region",
    "gamma",
    "gamma_derivatives",
    "gap_height",
    "gap_height_derivatives",
    "classify_point",
    "disk_boundary",
    "validate_geometry",
]


def gamma(x1):
    """Bottom-of-disk profile gamma(x1) = 1 - sqrt(1 - x1^2), for |x1| <= 1."""
    x1 = np.asarray(x1, dtype=np.float64)
    if np.any(np.abs(x1) > 1.0):
        raise ValueError("gamma requires |x1| <= 1")
    out = 1.0 - np.sqrt(1.0 - x1 * x1)
    return float(out) if out.ndim == 0 else out


def gamma_derivatives(x1):
    """(gamma', gamma'', gamma''') from closed forms; requires |x1| < 1."""
    x1 = np.asarray(x1, dtype=np.float64)
    if np.any(np.abs(x1) >= 1.0):
        raise ValueError("gamma derivatives require |x1| < 1")
    w = 1.0 - x1 * x1
    return x1 * w**-0.5, w**-1.5, 3.0 * x1 * w**-2.5


def gap_height(g: "GapGeometry", x1):
    """Distance H(x1) = h + gamma(x1) from the wall to the disk above x1."""
    return g.h + gamma(x1)


def gap_height_derivatives(g: "GapGeometry", x1):
    """x1-derivatives of H (same as gamma's; H differs by the constant h)."""
    return gamma_derivatives(x1)


class Region(enum.Enum):
    DISK = "disk"
    GAP_CORE = "gap_core"
    GAP_HALF = "gap_half"
    FLUID_OUTER = "fluid_outer"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class GapGeometry:
    """Gap height h, container half-width L and height Lp, cutoff width delta.

    The defaults give a container that comfortably encloses the disk and the
    radial cutoff annulus for every h <= 1.  delta must be small enough that
    the annulus transition band |x - center| in [1+delta, 1+2delta] never
    meets the bottom wall outside the gap strip |x1| < 1/4; the limiting
    value as h -> 0 is delta = (sqrt(17)/4 - 1)/2 = 0.015388.
    """

    h: float
    L: float = 2.0
    Lp: float = 4.0
    delta: float = 0.015

    def __post_init__(self):
        # containment constraints (L > 1, Lp > 2+h, annulus clearance) are
        # reported by validate_geometry rather than enforced here
        if not (0.0 < self.h <= 1.0):
            raise ValueError(f"gap height h must be in (0, 1], got {self.h}")
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")

    @property
    def center(self) -> tuple[float, float]:
        return (0.0, 1.0 + self.h)


def classify_point(g: GapGeometry, x) -> Region:
    """Deterministic region tag for a point of the closed container.

    Boundary conventions: points of the closed disk tag DISK; the interface
    |x1| = 1/4 belongs to GAP_CORE, |x1| = 1/2 to GAP_HALF; container wall
    points tag as the adjacent interior region.  Everything outside the
    closed rectangle tags OUTSIDE.
    """
    x1, x2 = float(x[0]), float(x[1])
    if abs(x1) > g.L or x2 < 0.0 or x2 > g.Lp:
        return Region.OUTSIDE
    dx, dy = x1, x2 - (1.0 + g.h)
    if dx * dx + dy * dy <= 1.0:
        return Region.DISK
    if abs(x1) <= 0.25 and x2 < g.h + 1.0 - math.sqrt(1.0 - x1 * x1):
        return Region.GAP_CORE
    if abs(x1) <= 0.5 and x2 < g.h + 1.0 - math.sqrt(1.0 - x1 * x1):
        return Region.GAP_HALF
    return Region.FLUID_OUTER


def disk_boundary(g: GapGeometry, theta):
    """Point, fluid outer normal and unit tangent of the disk circle.

    The normal points from the fluid into the disk (n = -e_r); the tangent
    is n rotated by +90 degrees.
    """
    theta = np.asarray(theta, dtype=np.float64)
    c, s = np.cos(theta), np.sin(theta)
    point = np.stack([c, 1.0 + g.h + s], axis=-1)
    normal = np.stack([-c, -s], axis=-1)
    tangent = np.stack([s, -c], axis=-1)
    return point, normal, tangent


@dataclass(frozen=True)
class GeometryValidation:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_geometry(g: GapGeometry, wall_samples: int = 2048) -> GeometryValidation:
    """Check the constraints the field construction needs at this h.

    Besides disk containment, the radial cutoff annulus around the disk
    center (radii 1+delta to 1+2delta) must stay clear of the container
    sides and top, and must not touch the bottom wall outside the gap strip
    |x1| < 1/4 (inside the strip the square cutoff suppresses the radial
    one, so the annulus may dip below the disk there).  The wall condition
    is checked both at its analytic minimum x1 = 1/4 and by dense sampling.
    """
    failures = []
    if g.L <= 1.0:
        failures.append(f"L={g.L} must exceed 1 for the disk to fit")
    if g.Lp <= 2.0 + g.h:
        failures.append(f"Lp={g.Lp} must exceed 2+h={2.0 + g.h}")
    r_out = 1.0 + 2.0 * g.delta
    if r_out >= g.L:
        failures.append(f"annulus exits side walls: 1+2*delta={r_out} >= L={g.L}")
    if 1.0 + g.h + r_out >= g.Lp:
        failures.append(
            f"annulus exits top: 1+h+1+2*delta={1.0 + g.h + r_out} >= Lp={g.Lp}"
        )
    # wall clearance outside the gap strip; min of sqrt(x1^2+(1+h)^2) at x1=1/4
    cy = 1.0 + g.h
    r_min = math.hypot(0.25, cy)
    if r_min < r_out:
        failures.append(
            "annulus touches bottom wall outside the gap strip: "
            f"dist((1/4,0), center)={r_min:.6f} < 1+2*delta={r_out}"
        )
    else:
        xs = np.linspace(0.25, g.L, wall_samples)
        d = np.hypot(xs, cy)
        if np.any(d < r_out):
            failures.append("annulus touches bottom wall (sampled)")
    return GeometryValidation(not failures, tuple(failures))
