"""Named verification scenarios for the sphere-bundle Gauss-Bonnet identity."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .. import lie
from .bundle import Axis, SubmanifoldMesh, integrate_phi, point_mesh
from .frames import (
    connection_forms,
    curvature_forms,
    flat_chart,
    polar_chart,
    round_s2_chart,
    sample,
    spherical_chart,
    stereographic_chart,
)

DEFAULT_GRID = 96
DEFAULT_TOL = 0.02


@dataclass
class ScenarioResult:
    scenario: str
    value: float
    expected: float
    abs_error: float
    grid: int
    parts: dict = field(default_factory=dict)

    def ok(self, tol: float) -> bool:
        return self.abs_error <= tol

    def to_json(self) -> dict:
        out = asdict(self)
        if not out["parts"]:
            out.pop("parts")
        return out


def _circle(s):
    a = s[..., 0]
    return np.stack([np.cos(a), np.sin(a)], axis=-1)


def circle_mesh(grid: int = DEFAULT_GRID, polar: bool = True) -> SubmanifoldMesh:
    periodic = (Axis(0.0, 2 * np.pi, grid, periodic=True),)
    if polar:
        return SubmanifoldMesh(polar_chart(), 1,
                               lambda s: np.stack([np.ones_like(s[..., 0]), s[..., 0]], axis=-1),
                               periodic, name="unit circle (polar chart)")
    return SubmanifoldMesh(flat_chart(2), 1, _circle, periodic, name="unit circle")


def s2_mesh(grid: int = DEFAULT_GRID) -> SubmanifoldMesh:
    """Unit sphere r = 1 in the spherical-coordinate chart of R^3."""
    return SubmanifoldMesh(
        spherical_chart(), 2,
        lambda s: np.stack([np.ones_like(s[..., 0]), s[..., 0], s[..., 1]], axis=-1),
        (Axis(0.0, np.pi, grid), Axis(0.0, 2 * np.pi, grid, periodic=True)),
        name="unit 2-sphere",
    )


def point_in_r2(grid: int = DEFAULT_GRID) -> ScenarioResult:
    v = integrate_phi(point_mesh(flat_chart(2), [0.0, 0.0]), grid)
    return ScenarioResult("point-in-r2", v, 1.0, abs(v - 1.0), grid)


def circle_in_r2(grid: int = DEFAULT_GRID) -> ScenarioResult:
    v = integrate_phi(circle_mesh(grid), grid)
    return ScenarioResult("circle-in-r2", v, 0.0, abs(v), grid)


def s2_in_r3(grid: int = DEFAULT_GRID) -> ScenarioResult:
    v = integrate_phi(s2_mesh(grid), grid)
    return ScenarioResult("s2-in-r3", v, 2.0, abs(v - 2.0), grid)


# SU(2) as the round 3-sphere: (a, b) in C^2 with |a|^2 + |b|^2 = 1 is the
# matrix [[a, -conj b], [b, conj a]]. Stereographic coordinates from
# (x0, x1, x2, x3) = (0, 0, 0, -1) send diag(e^{i s}, e^{-i s}) to
# (cos s, sin s, 0) and the centre elements +-1 to (+-1, 0, 0).

def maximal_torus_mesh(grid: int = DEFAULT_GRID) -> SubmanifoldMesh:
    def normals(s):
        a = s[..., 0]
        radial = np.stack([np.cos(a), np.sin(a), np.zeros_like(a)], axis=-1)
        vertical = np.stack([np.zeros_like(a), np.zeros_like(a), np.ones_like(a)], axis=-1)
        return np.stack([radial, vertical], axis=-1)

    def embed(s):
        a = s[..., 0]
        return np.stack([np.cos(a), np.sin(a), np.zeros_like(a)], axis=-1)

    return SubmanifoldMesh(stereographic_chart(3), 1, embed,
                           (Axis(0.0, 2 * np.pi, grid, periodic=True),), normals, "maximal torus")


def su2_loop_components() -> list[tuple[str, str, object]]:
    """Components of Hom(Z, W x| T) for SU(2): one per phi in Hom(Z, W) = W,
    each the fixed set in T of the image of phi. W = Z/2 acts on the maximal
    torus by inversion, fixing the whole torus for phi = 1 and the points
    +-1 for phi = w."""
    return [
        ("phi=1: T", "torus", None),
        ("phi=w: +1", "point", (1.0, 0.0, 0.0)),
        ("phi=w: -1", "point", (-1.0, 0.0, 0.0)),
    ]


def gb1_su2_check(grid: int = DEFAULT_GRID) -> tuple[ScenarioResult, int]:
    """Numeric sphere-bundle sum for SU(2) at a point, and the catalog chi_Z."""
    chart = stereographic_chart(3)
    data = lie.cartan_data(lie.SU2)
    weyl = data[0].weyl_order
    parts = {}
    for label, kind, where in su2_loop_components():
        mesh = maximal_torus_mesh(grid) if kind == "torus" else point_mesh(chart, where, label)
        parts[label] = integrate_phi(mesh, grid)
    value = sum(parts.values()) / weyl
    combinatorial = lie.chi_ad(lie.SU2)
    res = ScenarioResult("gb1-su2", value, float(combinatorial), abs(value - combinatorial), grid,
                         parts={"weyl_order": weyl, **parts})
    return res, combinatorial


def _gb1(grid: int) -> ScenarioResult:
    return gb1_su2_check(grid)[0]


SCENARIOS = {
    "point-in-r2": point_in_r2,
    "circle-in-r2": circle_in_r2,
    "s2-in-r3": s2_in_r3,
    "gb1-su2": _gb1,
}


def run_scenario(name: str, grid: int = DEFAULT_GRID) -> ScenarioResult:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}") from None
    return fn(grid)


# Checks on sampled charts.

def s2_euler_integral(grid: int = DEFAULT_GRID) -> float:
    """Integral of the Euler form over the round 2-sphere (cell-centred in theta)."""
    h = math.pi / grid
    theta = (np.arange(grid) + 0.5) * h
    phi = np.arange(grid) * (2 * np.pi / grid)
    s = sample(round_s2_chart(), [theta, phi])
    connection_forms(s)
    _, euler = curvature_forms(s)
    return float(np.sum(euler) * h * (2 * np.pi / grid))


def transgression_check(theta_lo: float = 0.6, theta_hi: float = 1.4, grid: int = DEFAULT_GRID) -> tuple[float, float]:
    """Stokes check of -dPhi = Euler form on a latitude band of the round S^2.

    With the section v = e_2 the adapted frame is the chart frame and Phi
    restricts to omega_12 / 2pi. Returns (boundary integral of Phi,
    minus the integral of the Euler form over the band).
    """
    theta = np.linspace(theta_lo, theta_hi, grid + 1)
    phi = np.arange(grid) * (2 * np.pi / grid)
    s = sample(round_s2_chart(), [theta, phi])
    w = connection_forms(s)
    _, euler = curvature_forms(s)
    dphi = 2 * np.pi / grid
    phi_coeff = w[..., 0, 1, 1] / (2 * np.pi)
    boundary = float(np.sum(phi_coeff[-1]) * dphi - np.sum(phi_coeff[0]) * dphi)
    area = float(np.sum(np.trapezoid(euler, theta, axis=0)) * dphi)
    return boundary, -area
