import math

import numpy as np
import pytest

from gapflow.geometry import (
    GapGeometry,
    Region,
    classify_point,
    disk_boundary,
    gamma,
    gamma_derivatives,
    gap_height,
    validate_geometry,
)


def test_gamma_values():
    assert gamma(0.0) == 0.0
    assert gamma(1.0) == 1.0
    assert gamma(0.5) == pytest.approx(1.0 - math.sqrt(3.0) / 2.0, abs=1e-15)


def test_gamma_domain_error():
    with pytest.raises(ValueError):
        gamma(1.0 + 1e-12)


def test_gamma_even_and_range():
    x = np.linspace(-1.0, 1.0, 2001)
    vals = gamma(x)
    assert np.all(vals == gamma(-x))  # exactly even in floating point
    assert np.all((vals >= 0.0) & (vals <= 1.0))


def test_gamma_derivatives_match_fd():
    x = np.linspace(-0.7, 0.7, 31)
    d1, d2, d3 = gamma_derivatives(x)
    s = 1e-6
    fd1 = (gamma(x + s) - gamma(x - s)) / (2 * s)
    fd2 = (gamma(x + s) - 2 * gamma(x) + gamma(x - s)) / s**2
    assert np.allclose(d1, fd1, rtol=1e-8, atol=1e-8)
    assert np.allclose(d2, fd2, rtol=1e-3, atol=1e-3)
    assert np.all(np.isfinite(d3))


def test_gap_height_values():
    assert gap_height(GapGeometry(h=0.5), 0.0) == 0.5
    assert gap_height(GapGeometry(h=0.01), 1.0) == pytest.approx(1.01)
    assert gap_height(GapGeometry(h=0.1), 0.25) == pytest.approx(
        0.1 + 1.0 - math.sqrt(1.0 - 0.0625))


def test_gap_height_offset_independent_of_h():
    x = np.linspace(-0.9, 0.9, 50)
    a = gap_height(GapGeometry(h=0.3), x) - 0.3
    b = gap_height(GapGeometry(h=0.003), x) - 0.003
    assert np.allclose(a, b, rtol=0, atol=1e-15)


def test_h_bounds_enforced():
    with pytest.raises(ValueError):
        GapGeometry(h=0.0)
    with pytest.raises(ValueError):
        GapGeometry(h=1.5)


def test_classify_examples():
    g = GapGeometry(h=0.5)
    assert classify_point(g, (0.0, 1.5)) is Region.DISK
    assert classify_point(g, (0.0, 0.25)) is Region.GAP_CORE
    assert classify_point(g, (0.3, 0.1)) is Region.GAP_HALF
    assert classify_point(g, (1.5, 3.0)) is Region.FLUID_OUTER
    assert classify_point(g, (2.5, 1.0)) is Region.OUTSIDE
    assert classify_point(g, (0.0, 4.5)) is Region.OUTSIDE


def test_classify_interface_conventions():
    g = GapGeometry(h=0.5)
    # disk boundary point belongs to the disk
    assert classify_point(g, (0.0, 0.5)) is Region.DISK
    # |x1| = 1/4 belongs to the core, |x1| = 1/2 to the half strip
    assert classify_point(g, (0.25, 0.1)) is Region.GAP_CORE
    assert classify_point(g, (0.5, 0.05)) is Region.GAP_HALF
    # wall points classify as the adjacent region
    assert classify_point(g, (0.1, 0.0)) is Region.GAP_CORE


def test_classify_consistent_with_gap_height():
    g = GapGeometry(h=0.23)
    rng = np.random.default_rng(5)
    for _ in range(500):
        x1 = rng.uniform(-0.6, 0.6)
        x2 = rng.uniform(0.0, 1.5)
        tag = classify_point(g, (x1, x2))
        in_core = abs(x1) <= 0.25 and 0 < x2 < gap_height(g, x1)
        if in_core:
            assert tag is Region.GAP_CORE
        else:
            assert tag is not Region.GAP_CORE or x2 == 0.0


def test_disk_boundary_examples():
    g = GapGeometry(h=0.5)
    pt, n, t = disk_boundary(g, -math.pi / 2.0)
    assert np.allclose(pt, [0.0, 0.5], atol=1e-15)
    assert np.allclose(n, [0.0, 1.0], atol=1e-15)
    pt, _, _ = disk_boundary(g, 0.0)
    assert np.allclose(pt, [1.0, 1.5], atol=1e-15)


def test_disk_boundary_orthonormal_frame():
    g = GapGeometry(h=0.2)
    th = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
    pt, n, t = disk_boundary(g, th)
    assert np.allclose(np.sum(n * t, axis=1), 0.0, atol=1e-15)
    assert np.allclose(np.sum(n * n, axis=1), 1.0, atol=1e-15)
    assert np.allclose(np.sum(t * t, axis=1), 1.0, atol=1e-15)
    # n = -(point - center): radial unit vector flipped
    center = np.array([0.0, 1.2])
    assert np.allclose(pt - center + n, 0.0, atol=1e-15)


def test_validate_geometry_examples():
    assert validate_geometry(GapGeometry(h=1.0, L=2.0, Lp=4.0, delta=0.05)).ok
    bad = validate_geometry(GapGeometry(h=1.0, L=2.0, Lp=3.0, delta=0.5))
    assert not bad.ok
    assert any("top" in f for f in bad.failures)
    bad2 = validate_geometry(GapGeometry(h=0.5, L=1.0, Lp=4.0, delta=0.05))
    assert not bad2.ok
    assert any("L=" in f for f in bad2.failures)


def test_default_delta_valid_across_ladder():
    for h in (1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
        assert validate_geometry(GapGeometry(h=h)).ok


def test_large_delta_fails_at_small_h():
    # wide transition bands touch the wall outside the gap strip once the
    # disk is close to the wall
    res = validate_geometry(GapGeometry(h=1e-3, delta=0.05))
    assert not res.ok
    assert any("wall" in f for f in res.failures)
