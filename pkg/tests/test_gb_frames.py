import math

import numpy as np
import pytest

from orbchar.gb import frames as fr
from orbchar.gb.forms import euler_form
from orbchar.gb.scenarios import s2_euler_integral, transgression_check


def s2_grid(n, lo=0.5, hi=2.5):
    th = np.linspace(lo, hi, n)
    ph = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return fr.sample(fr.round_s2_chart(), [th, ph])


def test_flat_chart_has_no_connection():
    for n in (2, 3):
        axes = [np.linspace(0, 1, 9)] * n
        s = fr.sample(fr.flat_chart(n), axes)
        w = fr.connection_forms(s)
        R, e = fr.curvature_forms(s)
        assert np.all(w == 0) and np.all(R == 0) and np.all(e == 0)


def test_polar_connection():
    r = np.linspace(0.5, 2.0, 33)
    ph = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    s = fr.sample(fr.polar_chart(), [r, ph])
    w = fr.connection_forms(s)
    assert np.allclose(w[..., 0, 1, 1], 1.0, atol=1e-12)
    assert np.allclose(w[..., 0, 1, 0], 0.0, atol=1e-12)
    assert np.allclose(w, -np.swapaxes(w, -2, -3))
    R, _ = fr.curvature_forms(s)
    assert np.max(np.abs(R)) < 1e-10


def test_round_s2_connection_and_curvature():
    s = s2_grid(96)
    w = fr.connection_forms(s)
    R, e = fr.curvature_forms(s)
    th = s.points[..., 0]
    assert np.max(np.abs(w[..., 0, 1, 1] - np.cos(th))) < 2e-4
    assert np.max(np.abs(R[2:-2, :, 0, 1, 0, 1] + np.sin(th[2:-2]))) < 2e-4
    assert np.max(np.abs(e[2:-2] - np.sin(th[2:-2]) / (2 * math.pi))) < 1e-4


def test_convergence_order():
    errs_w, errs_R = [], []
    for n in (24, 48, 96):
        s = s2_grid(n)
        w = fr.connection_forms(s)
        R, _ = fr.curvature_forms(s)
        th = s.points[..., 0]
        errs_w.append(np.max(np.abs(w[..., 0, 1, 1] - np.cos(th))))
        errs_R.append(np.max(np.abs(R[2:-2, :, 0, 1, 0, 1] + np.sin(th[2:-2]))))
    for errs in (errs_w, errs_R):
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
        assert min(orders) >= 1.8, orders


def test_structure_residual_small():
    s = s2_grid(48)
    fr.connection_forms(s)
    assert s.residual < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_stereographic_connection(n):
    rng = np.random.default_rng(n)
    chart = fr.stereographic_chart(n)
    for _ in range(5):
        u = rng.uniform(-1, 1, size=n)
        w = fr.connection_at(chart, u)
        df = -2 * u / (1 + u @ u)
        expected = np.zeros((n, n, n))
        for i in range(n):
            for j in range(n):
                expected[i, j, j] += df[i]
                expected[i, j, i] -= df[j]
        assert np.max(np.abs(w - expected)) < 1e-8


def test_stereographic_s2_curvature_is_constant():
    chart = fr.stereographic_chart(2)
    u = np.array([0.4, -0.2])
    R = fr.curvature_at(chart, u)
    lam = 2 / (1 + u @ u)
    # Omega_12 = -theta1 ^ theta2 with theta_i = lam du_i
    assert R[0, 1, 0, 1] == pytest.approx(-lam ** 2, rel=1e-5)


def test_rotated_frame_covariance():
    theta = 0.7
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    base, turned = s2_grid(32), fr.sample(fr.round_s2_chart().rotated(rot), [
        np.linspace(0.5, 2.5, 32), np.linspace(0, 2 * np.pi, 32, endpoint=False)])
    R0, e0 = fr.curvature_forms(base)
    R1, e1 = fr.curvature_forms(turned)
    assert np.allclose(e0, e1, atol=1e-10)
    assert np.allclose(R1, np.einsum("ai,...abcd,bj->...ijcd", rot, R0, rot), atol=1e-10)


def test_rotated_frame_3d():
    rng = np.random.default_rng(9)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    chart = fr.stereographic_chart(3)
    u = np.array([0.2, 0.1, -0.3])
    R0 = fr.curvature_at(chart, u)
    R1 = fr.curvature_at(chart.rotated(q), u)
    assert np.allclose(R1, np.einsum("ai,abcd,bj->ijcd", q, R0, q), atol=1e-6)
    assert np.all(euler_form(R1, 3) == 0)


def test_euler_integral_s2():
    assert s2_euler_integral(96) == pytest.approx(2.0, abs=0.01)


def test_transgression_stokes():
    boundary, minus_area = transgression_check(0.6, 1.4, 96)
    assert boundary == pytest.approx(minus_area, abs=1e-3)
    assert boundary == pytest.approx((math.cos(1.4) - math.cos(0.6)), abs=1e-3)


def test_singular_frame():
    chart = fr.FramedChart(2, lambda u: np.zeros(u.shape[:-1] + (2, 2)), "zero")
    with pytest.raises(fr.SingularFrameError):
        chart.coframe_at(np.array([0.1, 0.2]))


def test_grid_outside_domain():
    with pytest.raises(ValueError):
        fr.sample(fr.polar_chart(), [np.linspace(-1, 1, 5), np.linspace(0, 1, 5)])


def test_orientation_flip_detected():
    def frame(u):
        x = np.zeros(u.shape[:-1] + (2, 2))
        x[..., 0, 0] = 1.0
        x[..., 1, 1] = np.sign(u[..., 0])
        return x
    s = fr.sample(fr.FramedChart(2, frame, "flip"), [np.array([-1.0, 1.0]), np.array([0.0, 1.0])])
    with pytest.raises(fr.SingularFrameError):
        fr.build_coframe(s)
