"""Kernel-level tests: step profiles, jet self-consistency by finite
differences, and parity between the compiled and numpy backends."""

import numpy as np
import pytest

from gapflow._kernels import (
    BACKEND,
    PROFILE_EXP,
    PROFILE_POLY7,
    _fieldcore_py as pyk,
)

try:
    from gapflow._kernels import _fieldcore as ck
except ImportError:
    ck = None

H, MU1, MU2, DELTA = 0.3, 1.0 / 6.0, -1.5, 0.015


@pytest.mark.parametrize("kind", [PROFILE_EXP, PROFILE_POLY7])
def test_step_endpoints_and_monotonicity(kind):
    u = np.linspace(-0.5, 1.5, 401)
    s, s1, s2, s3 = pyk.step_jet(u, kind)
    assert np.all(s[u <= 0.0] == 0.0)
    assert np.all(s[u >= 1.0] == 1.0)
    assert np.all((s >= 0.0) & (s <= 1.0))
    assert np.all(np.diff(s) >= 0.0)
    # derivatives vanish outside the transition
    out = (u <= 0.0) | (u >= 1.0)
    assert np.all(s1[out] == 0.0) and np.all(s3[out] == 0.0)


@pytest.mark.parametrize("kind", [PROFILE_EXP, PROFILE_POLY7])
def test_step_derivatives_match_fd(kind):
    u = np.linspace(0.05, 0.95, 91)
    s, s1, s2, s3 = pyk.step_jet(u, kind)
    eps = 1e-6
    sp, *_ = pyk.step_jet(u + eps, kind)
    sm, *_ = pyk.step_jet(u - eps, kind)
    assert np.allclose((sp - sm) / (2 * eps), s1, rtol=1e-7, atol=1e-9)
    assert np.allclose((sp - 2 * s + sm) / eps**2, s2, rtol=1e-3, atol=1e-4)
    _, s1p, *_ = pyk.step_jet(u + eps, kind)
    _, s1m, *_ = pyk.step_jet(u - eps, kind)
    assert np.allclose((s1p - s1m) / (2 * eps), s2, rtol=1e-7, atol=1e-7)


def test_poly7_step_is_c3():
    # third derivative is continuous through the transition endpoints
    eps = 1e-8
    for edge in (0.0, 1.0):
        _, _, _, inner = pyk.step_jet(np.array([edge + (eps if edge == 0 else -eps)]),
                                      PROFILE_POLY7)
        assert abs(inner[0]) < 1e-4


def _gap_points(n, h, rng):
    x1 = rng.uniform(-0.4999, 0.4999, n)
    Hx = h + 1.0 - np.sqrt(1.0 - x1 * x1)
    x2 = rng.uniform(0.02, 0.98, n) * Hx
    return x1, x2


def test_gap_jet_consistency_by_fd():
    # every derivative column is the finite difference of a lower one
    rng = np.random.default_rng(11)
    for h in (0.5, 0.1):
        x1, x2 = _gap_points(100, h, rng)
        eps = 1e-6

        def jet(a, b):
            return pyk.gap_stream_jet(a, b, h, MU1, MU2, DELTA,
                                      PROFILE_EXP, PROFILE_EXP)

        J = jet(x1, x2)
        Jp1 = jet(x1 + eps, x2)
        Jm1 = jet(x1 - eps, x2)
        Jp2 = jet(x1, x2 + eps)
        Jm2 = jet(x1, x2 - eps)
        pairs = [(1, 0, 1), (2, 0, 2), (3, 1, 1), (4, 1, 2), (5, 2, 2),
                 (6, 3, 1), (7, 3, 2), (8, 4, 2), (9, 5, 2)]
        for col, src, direction in pairs:
            if direction == 1:
                fd = (Jp1[:, src] - Jm1[:, src]) / (2 * eps)
            else:
                fd = (Jp2[:, src] - Jm2[:, src]) / (2 * eps)
            scale = np.maximum(np.abs(J[:, col]), 1.0)
            assert np.max(np.abs(fd - J[:, col]) / scale) < 1e-5, (h, col)


def test_trace_zero_exact():
    rng = np.random.default_rng(2)
    for h in (1.0, 0.1, 0.01):
        x1, x2 = _gap_points(1000, h, rng)
        J = pyk.gap_stream_jet(x1, x2, h, MU1, MU2, DELTA,
                               PROFILE_EXP, PROFILE_EXP)
        # grad w = [[-d12, -d22], [d11, d12]]: the trace cancels identically
        tr = -J[:, 4] + J[:, 4]
        assert np.all(tr == 0.0)


def test_pressure_coeffs_finite_and_even():
    x1 = np.linspace(-0.49, 0.49, 99)
    PQ, PQp, i1, i2 = pyk.pressure_coeffs(x1, 0.05, MU1, MU2)
    assert np.all(np.isfinite(PQ)) and np.all(np.isfinite(PQp))
    # integrands are odd, local coefficients even
    PQm, _, i1m, i2m = pyk.pressure_coeffs(-x1, 0.05, MU1, MU2)
    assert np.allclose(PQ, PQm, rtol=0, atol=1e-12)
    assert np.allclose(i1, -i1m, rtol=0, atol=1e-12)
    assert np.allclose(i2, -i2m, rtol=0, atol=1e-12)


@pytest.mark.skipif(ck is None, reason="compiled kernel unavailable")
class TestBackendParity:
    def test_gap_jet(self):
        rng = np.random.default_rng(3)
        for h in (1.0, 0.3, 1e-3):
            x1, x2 = _gap_points(800, h, rng)
            x1 = np.concatenate([x1, 0.25 + rng.uniform(-1e-3, 1e-3, 100)])
            x2 = np.concatenate([x2, np.full(100, 0.01)])
            for kind in (PROFILE_EXP, PROFILE_POLY7):
                a = ck.gap_stream_jet(x1, x2, h, MU1, MU2, DELTA, kind, kind)
                b = pyk.gap_stream_jet(x1, x2, h, MU1, MU2, DELTA, kind, kind)
                assert np.max(np.abs(a - b) / (np.abs(b) + 1.0)) < 1e-9

    def test_outer_jet_and_chi(self):
        rng = np.random.default_rng(4)
        th = rng.uniform(0, 2 * np.pi, 500)
        r = rng.uniform(0.5, 1.2, 500)
        x1 = r * np.cos(th)
        x2 = 1.3 + r * np.sin(th)
        a = ck.outer_stream_jet(x1, x2, 0.3, DELTA, PROFILE_EXP)
        b = pyk.outer_stream_jet(x1, x2, 0.3, DELTA, PROFILE_EXP)
        assert np.max(np.abs(a - b) / (np.abs(b) + 1.0)) < 1e-9
        a = ck.chi_jet(x1, x2, PROFILE_EXP)
        b = pyk.chi_jet(x1, x2, PROFILE_EXP)
        assert np.max(np.abs(a - b)) < 1e-9

    def test_pressure_and_step(self):
        x = np.linspace(-0.49, 0.49, 500)
        for u, v in zip(ck.pressure_coeffs(x, 0.01, MU1, MU2),
                        pyk.pressure_coeffs(x, 0.01, MU1, MU2)):
            assert np.max(np.abs(u - v) / (np.abs(v) + 1.0)) < 1e-12
        u = np.linspace(-0.2, 1.2, 283)
        for kind in (PROFILE_EXP, PROFILE_POLY7):
            for a, b in zip(ck.step_jet(u, kind), pyk.step_jet(u, kind)):
                assert np.max(np.abs(a - b)) < 1e-10


def test_backend_name_reported():
    assert BACKEND in ("compiled", "python")
