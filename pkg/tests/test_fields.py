"""Field-level tests: values against independent high-precision oracles,
boundary compatibility, symmetry, and the momentum residual."""

import math

import numpy as np
import pytest

from gapflow.fieldchecks import run_field_checks
from gapflow.fields import (
    FieldParams,
    coef_a,
    pressure,
    residual,
    shear_on_disk,
    stream_gap,
    stream_global,
    velocity,
    velocity_jet,
    w_star,
)
from gapflow.geometry import GapGeometry

P = FieldParams()

# frozen 50-digit evaluations of the closed-form gap stream and of the
# pressure primitive (adaptive quadrature at 50-digit precision)
STREAM_GAP_ORACLE = 0.04694994874109138448979   # h=0.5, x=(0.1, 0.25)
PRESSURE_ORACLE = -1.062319952288805349482      # h=0.5, x=(0.1, 0.2)


def test_coef_a_examples():
    assert coef_a(P, 1e-14, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert coef_a(P, 1.0, 0.0) == pytest.approx(1.0 / 6.0, abs=1e-15)
    assert coef_a(P, 0.5, 0.2) == pytest.approx(1.0 / 12.0 - 1.5 * 0.04, abs=1e-15)


def test_stream_gap_wall_and_disk_values():
    g = GapGeometry(h=0.3)
    for x1 in (-0.3, 0.05, 0.45):
        assert stream_gap(P, g, (x1, 0.0)) == 0.0
        H = g.h + 1.0 - math.sqrt(1.0 - x1 * x1)
        assert stream_gap(P, g, (x1, H)) == pytest.approx(x1, abs=1e-15)


def test_stream_gap_oracle_value():
    g = GapGeometry(h=0.5)
    assert stream_gap(P, g, (0.1, 0.25)) == pytest.approx(
        STREAM_GAP_ORACLE, abs=1e-15)


def test_stream_gap_domain_error():
    g = GapGeometry(h=0.3)
    with pytest.raises(ValueError):
        stream_gap(P, g, (0.6, 0.01))
    with pytest.raises(ValueError):
        stream_gap(P, g, (0.1, 0.9))


def test_stream_global_examples():
    g = GapGeometry(h=0.5)
    assert stream_global(P, g, (0.1, 0.0)) == 0.0          # bottom wall
    assert stream_global(P, g, (0.0, 1.5)) == 0.0          # disk center
    # both region formulas give x1 on the wetted disk boundary
    x1 = 0.25
    H = g.h + 1.0 - math.sqrt(1.0 - x1 * x1)
    assert stream_global(P, g, (x1, H * (1 - 1e-12))) == pytest.approx(x1, rel=1e-9)
    with pytest.raises(ValueError):
        stream_global(P, g, (3.0, 1.0))


def test_velocity_rigid_in_disk():
    for h in (1.0, 0.1, 0.01):
        g = GapGeometry(h=h)
        rng = np.random.default_rng(8)
        for _ in range(50):
            r = rng.uniform(0, 0.99)
            t = rng.uniform(0, 2 * np.pi)
            w = velocity(P, g, (r * np.cos(t), 1 + h + r * np.sin(t)))
            assert np.allclose(w, [0.0, 1.0], atol=1e-14)


def test_velocity_centerline_and_wall():
    g = GapGeometry(h=0.01)
    # odd symmetry kills the horizontal component on the centerline
    for x2 in (0.002, 0.005, 0.009):
        assert velocity(P, g, (0.0, x2))[0] == 0.0
    # wall velocity is tangential with the closed-form profile
    for x1 in (0.05, 0.15, 0.22):
        w = velocity(P, g, (x1, 0.0))
        a = coef_a(P, g.h, x1)
        H = g.h + 1.0 - math.sqrt(1.0 - x1 * x1)
        assert w[1] == 0.0
        assert w[0] == pytest.approx(-x1 * (1.0 - a) / H, rel=1e-14)


def test_velocity_jet_against_finite_differences():
    g = GapGeometry(h=0.5)
    rng = np.random.default_rng(9)
    step = 1e-5
    for _ in range(100):
        x1 = rng.uniform(-0.24, 0.24)
        H = g.h + 1.0 - math.sqrt(1.0 - x1 * x1)
        x2 = rng.uniform(0.1, 0.9) * H
        s = velocity_jet(P, g, (x1, x2))
        wpp = velocity(P, g, (x1 + step, x2))
        wpm = velocity(P, g, (x1 - step, x2))
        wqp = velocity(P, g, (x1, x2 + step))
        wqm = velocity(P, g, (x1, x2 - step))
        fd = np.array([[(wpp[0] - wpm[0]), (wqp[0] - wqm[0])],
                       [(wpp[1] - wpm[1]), (wqp[1] - wqm[1])]]) / (2 * step)
        scale = np.maximum(np.abs(s.grad_w), 1.0)
        assert np.max(np.abs(fd - s.grad_w) / scale) < 1e-6


def test_velocity_jet_structure():
    g = GapGeometry(h=0.2)
    s = velocity_jet(P, g, (0.1, 0.05))
    assert s.divergence == 0.0
    assert np.allclose(s.D, s.D.T)
    sd = velocity_jet(P, g, (0.3, 1.2))  # disk interior
    assert np.all(sd.grad_w == 0.0)


def test_shear_on_disk_odd_symmetry():
    g = GapGeometry(h=0.05)
    assert shear_on_disk(P, g, -math.pi / 2.0) == pytest.approx(0.0, abs=1e-12)
    s1 = shear_on_disk(P, g, -math.pi / 2.0 + 0.1)
    s2 = shear_on_disk(P, g, -math.pi / 2.0 - 0.1)
    assert s1 == pytest.approx(-s2, rel=1e-10)


def test_pressure_oracle_and_support():
    g = GapGeometry(h=0.5)
    assert pressure(P, g, (0.1, 0.2)) == pytest.approx(PRESSURE_ORACLE, abs=1e-9)
    # vanishes outside the half strip
    assert pressure(P, g, (0.7, 0.1)) == 0.0
    assert pressure(P, g, (1.2, 2.5)) == 0.0


def test_pressure_even_in_x1():
    g = GapGeometry(h=0.05)
    for x1, frac in ((0.08, 0.3), (0.2, 0.6)):
        H = g.h + 1.0 - math.sqrt(1.0 - x1 * x1)
        qa = pressure(P, g, (x1, frac * H), abs_tol=1e-12)
        qb = pressure(P, g, (-x1, frac * H), abs_tol=1e-12)
        assert qa == pytest.approx(qb, abs=1e-10 * max(1.0, abs(qa)))


def test_residual_parity_and_fd_oracle():
    g = GapGeometry(h=0.1)
    # odd components vanish on the centerline
    r0 = residual(P, g, (0.0, 0.04))
    assert r0[0] == pytest.approx(0.0, abs=1e-12)

    # independent oracle: second differences of the velocity and first
    # differences of the pressure
    x = (0.05, 0.05)
    res = residual(P, g, x)
    s = 1e-4

    def vel(a, b):
        return velocity(P, g, (a, b))

    lap = ((vel(x[0] + s, x[1]) + vel(x[0] - s, x[1])
            + vel(x[0], x[1] + s) + vel(x[0], x[1] - s)
            - 4.0 * vel(*x)) / s**2)
    sq = 1e-5
    dq1 = (pressure(P, g, (x[0] + sq, x[1])) - pressure(P, g, (x[0] - sq, x[1]))) / (2 * sq)
    dq2 = (pressure(P, g, (x[0], x[1] + sq)) - pressure(P, g, (x[0], x[1] - sq))) / (2 * sq)
    oracle = lap - np.array([dq1, dq2])
    assert np.allclose(res, oracle, rtol=2e-4, atol=2e-3)


def test_residual_pointwise_bound():
    # |residual| <= C (1 + |x1|/H) with one constant across gap heights
    fitted = {}
    for h in (0.1, 0.01):
        g = GapGeometry(h=h)
        worst = 0.0
        for x1 in np.linspace(-0.24, 0.24, 13):
            H = h + 1.0 - math.sqrt(1.0 - x1 * x1)
            for frac in (0.2, 0.6, 0.9):
                r = residual(P, g, (x1, frac * H))
                worst = max(worst, float(np.hypot(*r)) / (1.0 + abs(x1) / H))
        fitted[h] = worst
    assert max(fitted.values()) < 40.0
    assert max(fitted.values()) / min(fitted.values()) < 3.0


def test_residual_domain():
    g = GapGeometry(h=0.1)
    with pytest.raises(ValueError):
        residual(P, g, (0.8, 0.05))


def test_w_star_values():
    g = GapGeometry(h=0.3)
    assert np.allclose(w_star(g, (0.0, 0.3)), [0.0, 1.0])   # bottom of disk
    assert np.allclose(w_star(g, (0.7, 0.0)), [0.0, 0.0])   # wall
    with pytest.raises(ValueError):
        w_star(g, (0.5, 0.5))


@pytest.mark.parametrize("h", [1.0, 1e-1, 1e-3])
def test_field_checks_all_pass(h):
    checks = run_field_checks(P, GapGeometry(h=h))
    failed = [c.check_id for c in checks if not c.passed]
    assert not failed, failed


def test_field_checks_cover_every_zone():
    ids = {c.check_id for c in run_field_checks(P, GapGeometry(h=0.1))}
    assert {"fd_divergence", "flux_divergence_band", "wall_normal_velocity",
            "disk_normal_compat", "wall_shear_zero", "velocity_parity",
            "rigid_disk_velocity", "interface_continuity"} <= ids


def test_poly7_profile_field_also_compatible():
    p7 = FieldParams(chi_profile="poly7", phi_profile="poly7")
    g = GapGeometry(h=0.1)
    checks = {c.check_id: c for c in run_field_checks(p7, g)}
    assert checks["wall_normal_velocity"].passed
    assert checks["disk_normal_compat"].passed
    assert checks["interface_continuity"].passed
