"""Test-velocity fields on a shrinking lubrication gap and contact dynamics.

The package evaluates an explicit divergence-free velocity/pressure family
in the thin gap between a unit disk and a plane wall, verifies its scaling
estimates as the gap closes, and integrates the differential inequality
that forces finite-time contact of the falling disk.
"""

from gapflow._kernels import BACKEND
from gapflow.geometry import GapGeometry, Region, classify_point, gamma, gap_height
from gapflow.fields import FieldParams, FieldSample
from gapflow.dynamics import DynamicsParams

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GapGeometry",
    "Region",
    "classify_point",
    "gamma",
    "gap_height",
    "FieldParams",
    "FieldSample",
    "DynamicsParams",
    "__version__",
]
