"""Oriented orthonormal frames on coordinate charts and their structure forms.

Conventions. A frame is ``x[..., i, j]``: the coefficient of d/du_i in e_j.
The coframe is theta_i = sum_j X_ij du_j with X = x^-1. Connection forms
satisfy d theta_i = sum_j omega_ij ^ theta_j (so omega_ij = <nabla e_i, e_j>)
and curvature forms d omega_ij = sum_k omega_ik ^ omega_kj + Omega_ij.

Connection arrays are ``w[..., i, j, a]`` (coordinate 1-form coefficients)
and curvature arrays ``R[..., i, j, a, b]`` (antisymmetric in a, b).

Two evaluation paths share the algebra: grid sampling with second-order
centred differences (``sample``), and pointwise stencils around arbitrary
points (``connection_at``/``curvature_at``) used by the sphere-bundle
quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .forms import euler_form


class SingularFrameError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass


FrameFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FramedChart:
    """A coordinate chart with an oriented orthonormal frame field.

    ``frame(u)`` takes points of shape (..., n) and returns frames of shape
    (..., n, n). ``periodic[a]`` marks angular coordinates (period
    ``periods[a]``); ``contains(u)`` optionally restricts the domain.
    """

    n: int
    frame: FrameFn
    name: str = "chart"
    periodic: tuple[bool, ...] = ()
    periods: tuple[float, ...] = ()
    contains: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def rotated(self, rotation: np.ndarray) -> FramedChart:
        """Same chart with every frame right-multiplied by a constant rotation."""
        rot = np.asarray(rotation, dtype=float)
        base = self.frame
        return FramedChart(self.n, lambda u: base(u) @ rot, f"{self.name}*R",
                           self.periodic, self.periods, self.contains)

    def coframe_at(self, u: np.ndarray) -> np.ndarray:
        x = self.frame(np.asarray(u, dtype=float))
        return _invert(x)


def _invert(x: np.ndarray) -> np.ndarray:
    det = np.linalg.det(x)
    bad = np.flatnonzero(~(np.abs(det) > 1e-12))
    if bad.size:
        idx = np.unravel_index(bad[0], det.shape) if det.shape else ()
        raise SingularFrameError(f"singular frame at sample {idx}")
    if det.size and not (np.all(det > 0) or np.all(det < 0)):
        raise SingularFrameError("frame orientation changes across the chart")
    return np.linalg.inv(x)


# Algebra shared by both evaluation paths.

def exterior_derivative_1(dX: np.ndarray) -> np.ndarray:
    """d of 1-forms with coefficients X[..., i, b], given dX[..., i, b, a] =
    d_a X_ib. Returns D[..., i, a, b] = d_a X_ib - d_b X_ia."""
    return np.swapaxes(dX, -1, -2) - dX


def levi_civita(X: np.ndarray, x: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Unique antisymmetric omega with d theta = omega ^ theta.

    X: coframe (..., n, n); x: frame; D: d theta in coordinates (..., i, a, b).
    Returns coordinate coefficients w[..., i, j, a].
    """
    C = np.einsum("...iab,...aj,...bk->...ijk", D, x, x)
    gamma = 0.5 * (np.einsum("...kij->...ijk", C) - C - np.einsum("...jki->...ijk", C))
    return np.einsum("...ijk,...ka->...ija", gamma, X)


def structure_residual(w: np.ndarray, X: np.ndarray, D: np.ndarray) -> float:
    """max | d theta_i - sum_j omega_ij ^ theta_j | over samples."""
    wedge = np.einsum("...ija,...jb->...iab", w, X)
    wedge = wedge - np.swapaxes(wedge, -1, -2)
    return float(np.max(np.abs(wedge - D))) if D.size else 0.0


def curvature_from(w: np.ndarray, dw: np.ndarray) -> np.ndarray:
    """Omega_ij from omega and its derivatives dw[..., i, j, b, a] = d_a w_ijb."""
    d_omega = np.swapaxes(dw, -1, -2) - dw  # [..., i, j, a, b] = d_a w_ijb - d_b w_ija
    ww = np.einsum("...ika,...kjb->...ijab", w, w)
    return d_omega - (ww - np.swapaxes(ww, -1, -2))


# Grid path.

@dataclass
class SampledChart:
    chart: FramedChart
    axes: tuple[np.ndarray, ...]
    points: np.ndarray  # (*shape, n)
    frames: np.ndarray  # (*shape, n, n)
    coframe: np.ndarray | None = None
    omega: np.ndarray | None = None
    curvature: np.ndarray | None = None
    residual: float = float("nan")

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(float(a[1] - a[0]) if len(a) > 1 else 1.0 for a in self.axes)


def sample(chart: FramedChart, axes: Sequence[np.ndarray]) -> SampledChart:
    """Evaluate the frame on the tensor grid spanned by ``axes`` (uniform)."""
    axes = tuple(np.asarray(a, dtype=float) for a in axes)
    if len(axes) != chart.n:
        raise ValueError(f"need {chart.n} axes, got {len(axes)}")
    points = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    if chart.contains is not None and not np.all(chart.contains(points)):
        raise ValueError("grid leaves the chart domain")
    return SampledChart(chart, axes, points, chart.frame(points))


def _grid_derivative(f: np.ndarray, s: SampledChart, a: int) -> np.ndarray:
    h = s.spacing[a]
    periodic = s.chart.periodic[a] if a < len(s.chart.periodic) else False
    if periodic:
        return (np.roll(f, -1, axis=a) - np.roll(f, 1, axis=a)) / (2 * h)
    return np.gradient(f, h, axis=a, edge_order=2)


def _grid_gradient(f: np.ndarray, s: SampledChart) -> np.ndarray:
    """Stack of coordinate derivatives along a new trailing axis."""
    return np.stack([_grid_derivative(f, s, a) for a in range(s.chart.n)], axis=-1)


def build_coframe(s: SampledChart) -> np.ndarray:
    s.coframe = _invert(s.frames)
    return s.coframe


def connection_forms(s: SampledChart, tol: float = 1e-8) -> np.ndarray:
    X = s.coframe if s.coframe is not None else build_coframe(s)
    D = exterior_derivative_1(_grid_gradient(X, s))
    w = levi_civita(X, s.frames, D)
    w = 0.5 * (w - np.swapaxes(w, -2, -3))
    s.residual = structure_residual(w, X, D)
    if not s.residual < tol:
        raise NumericalFailure(f"structure equation residual {s.residual:.3g} exceeds {tol}")
    s.omega = w
    return w


def curvature_forms(s: SampledChart) -> tuple[np.ndarray, np.ndarray]:
    """Curvature arrays and the Euler-form coefficient on du_1 ^ ... ^ du_n."""
    w = s.omega if s.omega is not None else connection_forms(s)
    R = curvature_from(w, _grid_gradient(w, s))
    R = 0.5 * (R - np.swapaxes(R, -3, -4))
    s.curvature = R
    return R, euler_form(R, s.chart.n)


# Pointwise path.

def _stencil(f: Callable[[np.ndarray], np.ndarray], u: np.ndarray, h: float) -> np.ndarray:
    n = u.shape[-1]
    out = []
    for a in range(n):
        step = np.zeros(n)
        step[a] = h
        out.append((f(u + step) - f(u - step)) / (2 * h))
    return np.stack(out, axis=-1)


def connection_at(chart: FramedChart, u: np.ndarray, h: float = 2e-5) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    x = chart.frame(u)
    X = _invert(x)
    D = exterior_derivative_1(_stencil(chart.coframe_at, u, h))
    w = levi_civita(X, x, D)
    return 0.5 * (w - np.swapaxes(w, -2, -3))


def curvature_at(chart: FramedChart, u: np.ndarray, h: float = 2e-4, inner: float = 2e-5) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    w = connection_at(chart, u, inner)
    dw = _stencil(lambda p: connection_at(chart, p, inner), u, h)
    R = curvature_from(w, dw)
    return 0.5 * (R - np.swapaxes(R, -3, -4))


# Charts in scope.

def flat_chart(n: int) -> FramedChart:
    def frame(u):
        return np.broadcast_to(np.eye(n), u.shape[:-1] + (n, n)).copy()
    return FramedChart(n, frame, f"R^{n}")


def polar_chart() -> FramedChart:
    """(r, phi) on R^2 minus the origin; e_1 = d/dr, e_2 = (1/r) d/dphi."""
    def frame(u):
        x = np.zeros(u.shape[:-1] + (2, 2))
        x[..., 0, 0] = 1.0
        x[..., 1, 1] = 1.0 / u[..., 0]
        return x
    return FramedChart(2, frame, "polar", (False, True), (0.0, 2 * np.pi),
                       contains=lambda u: u[..., 0] > 0)


def spherical_chart() -> FramedChart:
    """(r, theta, phi) on R^3 off the z-axis with the orthonormal spherical frame."""
    def frame(u):
        r, th = u[..., 0], u[..., 1]
        x = np.zeros(u.shape[:-1] + (3, 3))
        x[..., 0, 0] = 1.0
        x[..., 1, 1] = 1.0 / r
        x[..., 2, 2] = 1.0 / (r * np.sin(th))
        return x
    return FramedChart(3, frame, "spherical", (False, False, True), (0.0, 0.0, 2 * np.pi),
                       contains=lambda u: (u[..., 0] > 0) & (np.sin(u[..., 1]) > 0))


def round_s2_chart() -> FramedChart:
    """(theta, phi) on the unit sphere minus the poles; e_1 = d/dtheta,
    e_2 = (1/sin theta) d/dphi."""
    def frame(u):
        x = np.zeros(u.shape[:-1] + (2, 2))
        x[..., 0, 0] = 1.0
        x[..., 1, 1] = 1.0 / np.sin(u[..., 0])
        return x
    return FramedChart(2, frame, "round-S2", (False, True), (0.0, 2 * np.pi),
                       contains=lambda u: np.sin(u[..., 0]) > 0)


def stereographic_chart(n: int) -> FramedChart:
    """Unit S^n through stereographic coordinates, metric 4|du|^2/(1+|u|^2)^2,
    conformal frame e_j = ((1+|u|^2)/2) d/du_j."""
    def frame(u):
        scale = 0.5 * (1.0 + np.sum(u * u, axis=-1))
        return scale[..., None, None] * np.eye(n)
    return FramedChart(n, frame, f"stereographic-S{n}")
