"""Quadrature of the transgression form over normal sphere bundles.

The normal sphere bundle of R is parametrised by (s, t): s runs over R and t
over the unit sphere of the normal space. It is oriented as the boundary of a
thin tube around R, i.e. (outward radial direction, d/ds..., d/dt...) is
positively oriented in M. Fibre coordinates are chosen so that (v, d/dt) is
positively oriented in the normal space; the sign of the parametrisation is
then (-1)^dim R, times sign(v) when the fibre is a 0-sphere. Under the
opposite fibre convention the point-in-R^2 integral would come out as -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .forms import assemble_phi
from .frames import FramedChart, connection_at, curvature_at, _invert


class MeshError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    """One quadrature direction: periodic (trapezoid) or Gauss-Legendre."""

    lo: float
    hi: float
    count: int
    periodic: bool = False

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        if self.periodic:
            h = (self.hi - self.lo) / self.count
            return self.lo + h * np.arange(self.count), np.full(self.count, h)
        x, w = np.polynomial.legendre.leggauss(self.count)
        half = 0.5 * (self.hi - self.lo)
        return self.lo + half * (x + 1.0), half * w


def _unit_sphere_frame(t: np.ndarray, q: int) -> np.ndarray:
    """B(t) in SO(q) whose last column is the unit vector at fibre coordinate t."""
    if q == 2:
        c, s = np.cos(t[..., 0]), np.sin(t[..., 0])
        B = np.empty(t.shape[:-1] + (2, 2))
        B[..., 0, 0], B[..., 1, 0] = s, -c
        B[..., 0, 1], B[..., 1, 1] = c, s
        return B
    if q == 3:
        a, b = t[..., 0], t[..., 1]
        ca, sa, cb, sb = np.cos(a), np.sin(a), np.cos(b), np.sin(b)
        B = np.empty(t.shape[:-1] + (3, 3))
        B[..., :, 0] = np.stack([ca * cb, ca * sb, -sa], axis=-1)
        B[..., :, 1] = np.stack([-sb, cb, np.zeros_like(b)], axis=-1)
        B[..., :, 2] = np.stack([sa * cb, sa * sb, ca], axis=-1)
        return B
    raise MeshError(f"normal fibres S^{q - 1} with q={q} are not supported (q in 1..3)")


def fibre_axes(q: int, count: int) -> list[Axis]:
    if q == 1:
        return []
    if q == 2:
        return [Axis(0.0, 2 * np.pi, count, periodic=True)]
    if q == 3:
        return [Axis(0.0, np.pi, count // 2 or 1), Axis(0.0, 2 * np.pi, count, periodic=True)]
    raise MeshError(f"normal rank {q} not supported")


def _gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    """Orthonormalise the columns of (..., n, k) in the Euclidean product."""
    cols = []
    for j in range(vectors.shape[-1]):
        v = vectors[..., j].copy()
        for c in cols:
            v = v - np.sum(v * c, axis=-1, keepdims=True) * c
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        if np.any(norm < 1e-10):
            raise MeshError("degenerate tangent or normal vectors")
        cols.append(v / norm)
    return np.stack(cols, axis=-1) if cols else vectors[..., :0]


def _cross_complement(T: np.ndarray) -> np.ndarray:
    """Unit vector N with det[T, N] > 0 for T of shape (..., n, n-1)."""
    n = T.shape[-2]
    comps = []
    for i in range(n):
        minor = np.delete(T, i, axis=-2)
        comps.append((-1) ** (n - 1 + i) * np.linalg.det(minor))
    N = np.stack(comps, axis=-1)
    return N / np.linalg.norm(N, axis=-1, keepdims=True)


@dataclass(frozen=True)
class SubmanifoldMesh:
    """A closed submanifold R of a chart, with quadrature axes over R.

    ``embedding(s)`` maps (..., r) parameters to chart points (..., n); a
    point submanifold has r = 0 and a constant embedding. ``normals(s)``, if
    given, returns coordinate vectors (..., n, q) spanning the normal space;
    otherwise it is derived (for q = 1 via the cross product, for r = 0 as
    the whole tangent space).
    """

    chart: FramedChart
    dim: int
    embedding: Callable[[np.ndarray], np.ndarray]
    axes: tuple[Axis, ...] = ()
    normals: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    name: str = "R"

    @property
    def codim(self) -> int:
        return self.chart.n - self.dim

    def point(self, s: np.ndarray) -> np.ndarray:
        u = self.embedding(s)
        if self.chart.contains is not None and not np.all(self.chart.contains(u)):
            raise MeshError(f"mesh {self.name} leaves the chart domain")
        return u

    def tangent_frame(self, s: np.ndarray, h: float = 1e-5) -> np.ndarray:
        """Orthonormal tangent vectors of R in frame components (..., n, r)."""
        u = self.point(s)
        X = self.chart.coframe_at(u)
        vecs = []
        for p in range(self.dim):
            step = np.zeros(self.dim)
            step[p] = h
            du = (self.embedding(s + step) - self.embedding(s - step)) / (2 * h)
            vecs.append(np.einsum("...ia,...a->...i", X, du))
        if not vecs:
            return np.zeros(u.shape + (0,))
        return _gram_schmidt(np.stack(vecs, axis=-1))

    def normal_frame(self, s: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Orthonormal normal vectors (..., n, q) with det[T, N] = +1."""
        n, q = self.chart.n, self.codim
        u = self.point(s)
        if self.normals is not None:
            X = self.chart.coframe_at(u)
            raw = np.einsum("...ia,...aj->...ij", X, self.normals(s))
            N = _gram_schmidt(np.concatenate([T, raw], axis=-1))[..., self.dim:]
        elif q == 1:
            return _cross_complement(T)[..., None]
        elif self.dim == 0:
            N = np.broadcast_to(np.eye(n), u.shape[:-1] + (n, n)).copy()
        else:
            raise MeshError(f"mesh {self.name}: supply normals for codimension {q}")
        flip = np.linalg.det(np.concatenate([T, N], axis=-1)) < 0
        N[..., 0] = np.where(flip[..., None], -N[..., 0], N[..., 0])
        return N


def _adapted_frames(mesh: SubmanifoldMesh, params: np.ndarray, sign: float | None) -> np.ndarray:
    r, q = mesh.dim, mesh.codim
    s = params[..., :r]
    T = mesh.tangent_frame(s)
    N = mesh.normal_frame(s, T)
    if q == 1:
        v = sign * N[..., 0]
        first = T.copy()
        if sign < 0 and r > 0:
            first[..., 0] = -first[..., 0]
        return np.concatenate([first, v[..., None]], axis=-1)
    B = _unit_sphere_frame(params[..., r:], q)
    return np.concatenate([T, np.einsum("...ij,...jk->...ik", N, B)], axis=-1)


def _pullbacks(mesh: SubmanifoldMesh, params: np.ndarray, sign: float | None,
               h: float = 1e-5) -> tuple[np.ndarray, np.ndarray]:
    """Adapted connection/curvature forms on the (n-1)-dim parameter domain."""
    n, r = mesh.chart.n, mesh.dim
    d = params.shape[-1]
    A = _adapted_frames(mesh, params, sign)
    det = np.linalg.det(A)
    if not np.allclose(det, 1.0, atol=1e-8):
        raise MeshError("adapted frames failed to be oriented orthonormal")
    s = params[..., :r]
    u = mesh.point(s)
    w = connection_at(mesh.chart, u)
    R = curvature_at(mesh.chart, u) if n >= 3 and r >= 2 else np.zeros(u.shape[:-1] + (n, n, n, n))

    du = np.zeros(u.shape + (d,))
    omega = np.empty(A.shape + (d,))
    for p in range(d):
        step = np.zeros(d)
        step[p] = h
        dA = (_adapted_frames(mesh, params + step, sign) - _adapted_frames(mesh, params - step, sign)) / (2 * h)
        if p < r:
            du[..., p] = (mesh.embedding(s + step[:r]) - mesh.embedding(s - step[:r])) / (2 * h)
        base = np.einsum("...ija,...a->...ij", w, du[..., p])
        AtwA = np.einsum("...ki,...kl,...lj->...ij", A, base, A)
        omega[..., p] = np.einsum("...ki,...kj->...ij", dA, A) + AtwA
    Rp = np.einsum("...ijab,...ap,...bq->...ijpq", R, du, du)
    Omega = np.einsum("...ki,...klpq,...lj->...ijpq", A, Rp, A)
    return omega, Omega


def integrate_phi(mesh: SubmanifoldMesh, fibre_count: int = 96) -> float:
    """Quadrature of the transgression form over the normal sphere bundle."""
    n, r, q = mesh.chart.n, mesh.dim, mesh.codim
    if n < 2:
        raise MeshError("ambient dimension must be >= 2")
    if q < 1:
        raise MeshError("submanifold must have positive codimension")
    axes = list(mesh.axes) + fibre_axes(q, fibre_count)
    if len(mesh.axes) != r:
        raise MeshError(f"mesh {mesh.name}: {len(mesh.axes)} axes for dimension {r}")
    nodes, weights = zip(*(a.nodes() for a in axes)) if axes else ((), ())
    if axes:
        params = np.stack(np.meshgrid(*nodes, indexing="ij"), axis=-1).reshape(-1, len(axes))
        wts = np.prod(np.stack(np.meshgrid(*weights, indexing="ij"), axis=-1).reshape(-1, len(axes)), axis=-1)
    else:
        params = np.zeros((1, 0))
        wts = np.ones(1)
    orientation = (-1) ** r
    signs = (1.0, -1.0) if q == 1 else (None,)
    total = 0.0
    for sign in signs:
        omega, Omega = _pullbacks(mesh, params, sign)
        phi = assemble_phi(omega, Omega, n)
        part = float(np.sum(wts * phi))  # deterministic order
        total += orientation * (sign if sign is not None else 1.0) * part
    return total


def point_mesh(chart: FramedChart, p, name: str = "point") -> SubmanifoldMesh:
    p = np.asarray(p, dtype=float)
    return SubmanifoldMesh(chart, 0, lambda s: np.broadcast_to(p, s.shape[:-1] + p.shape).copy(), (), None, name)
