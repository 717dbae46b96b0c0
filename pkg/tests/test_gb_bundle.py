import math

import numpy as np
import pytest

from orbchar import lie
from orbchar.gb import bundle as bd
from orbchar.gb import frames as fr
from orbchar.gb import scenarios as sc


def test_point_in_r2():
    assert sc.point_in_r2(32).value == pytest.approx(1.0, abs=1e-6)


def test_point_in_r3_and_r4():
    assert bd.integrate_phi(bd.point_mesh(fr.flat_chart(3), [0, 0, 0]), 24) == pytest.approx(1.0, abs=5e-3)
    pt = bd.point_mesh(fr.flat_chart(4), [0, 0, 0, 0])
    with pytest.raises(bd.MeshError):
        bd.integrate_phi(pt, 16)


def test_point_in_curved_chart():
    pt = bd.point_mesh(fr.polar_chart(), [1.3, 0.4])
    assert bd.integrate_phi(pt, 48) == pytest.approx(1.0, abs=1e-6)


def test_circle_in_r2():
    assert sc.circle_in_r2(32).value == pytest.approx(0.0, abs=1e-9)
    flat = sc.circle_mesh(32, polar=False)
    assert bd.integrate_phi(flat, 32) == pytest.approx(0.0, abs=1e-9)


def test_circle_rotated_chart():
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    mesh = sc.circle_mesh(32)
    turned = bd.SubmanifoldMesh(mesh.chart.rotated(rot), 1, mesh.embedding, mesh.axes, name="turned")
    assert bd.integrate_phi(turned, 32) == pytest.approx(0.0, abs=1e-9)


def test_s2_small_grid():
    assert sc.s2_in_r3(24).value == pytest.approx(2.0, abs=0.02)


def test_su2_parts():
    res, comb = sc.gb1_su2_check(24)
    assert comb == lie.chi_ad(lie.SU2) == 1
    assert res.parts["weyl_order"] == 2
    assert res.parts["phi=1: T"] == pytest.approx(0.0, abs=1e-6)
    assert res.parts["phi=w: +1"] == pytest.approx(1.0, abs=1e-3)
    assert res.parts["phi=w: -1"] == pytest.approx(1.0, abs=1e-3)
    assert res.value == pytest.approx(1.0, abs=1e-3)


def test_mesh_leaving_chart():
    mesh = bd.SubmanifoldMesh(
        fr.polar_chart(), 1,
        lambda s: np.stack([np.cos(s[..., 0]), s[..., 0]], axis=-1),
        (bd.Axis(0.0, 2 * math.pi, 16, periodic=True),), name="bad")
    with pytest.raises(bd.MeshError):
        bd.integrate_phi(mesh, 16)


def test_axis_count_mismatch():
    mesh = bd.SubmanifoldMesh(fr.flat_chart(2), 1, sc._circle, (), name="no axes")
    with pytest.raises(bd.MeshError):
        bd.integrate_phi(mesh, 16)


def test_codim_two_needs_normals():
    mesh = bd.SubmanifoldMesh(
        fr.flat_chart(3), 1,
        lambda s: np.stack([np.cos(s[..., 0]), np.sin(s[..., 0]), 0 * s[..., 0]], axis=-1),
        (bd.Axis(0.0, 2 * math.pi, 16, periodic=True),), name="loop")
    with pytest.raises(bd.MeshError):
        bd.integrate_phi(mesh, 16)


def test_unknown_scenario():
    with pytest.raises(KeyError):
        sc.run_scenario("torus-in-r3")


def test_result_json():
    res = sc.point_in_r2(16)
    data = res.to_json()
    assert data["scenario"] == "point-in-r2" and res.ok(0.02)
