"""Pointwise evaluation kernels for the stream function and its derivatives.

Two interchangeable backends provide the same functions: a compiled Cython
extension (`_fieldcore`) and a numpy fallback (`_fieldcore_py`).  The
compiled one is preferred when importable; set GAPFLOW_PURE_PYTHON=1 to
force the fallback (used by the parity tests and the benchmark).

Exported functions (all take/return 1-D float64 arrays):
    step_jet(u, kind)                         -> (s, s', s'', s''')
    chi_jet(x1, x2, kind)                     -> (n, 10) square-cutoff jet
    gap_stream_jet(x1, x2, h, mu1, mu2,
                   delta, chi_kind, phi_kind) -> (n, 10) blended stream jet
    outer_stream_jet(x1, x2, h, delta, kind)  -> (n, 10) radial-cutoff jet
    pressure_coeffs(x1, h, mu1, mu2)          -> (PQ, PQ', i1, i2)

Jet column layout: value, d1, d2, d11, d12, d22, d111, d112, d122, d222.
"""

import os

from gapflow._kernels import _fieldcore_py

PROFILE_EXP = _fieldcore_py.PROFILE_EXP
PROFILE_POLY7 = _fieldcore_py.PROFILE_POLY7

if os.environ.get("GAPFLOW_PURE_PYTHON", "").strip() in ("1", "true", "yes"):
    _impl = _fieldcore_py
    BACKEND = "python"
else:
    try:
        from gapflow._kernels import _fieldcore as _impl  # type: ignore

        BACKEND = "compiled"
    except ImportError:
        _impl = _fieldcore_py
        BACKEND = "python"

step_jet = _impl.step_jet
chi_jet = _impl.chi_jet
gap_stream_jet = _impl.gap_stream_jet
outer_stream_jet = _impl.outer_stream_jet
pressure_coeffs = _impl.pressure_coeffs

__all__ = [
    "BACKEND",
    "PROFILE_EXP",
    "PROFILE_POLY7",
    "step_jet",
    "chi_jet",
    "gap_stream_jet",
    "outer_stream_jet",
    "pressure_coeffs",
]
