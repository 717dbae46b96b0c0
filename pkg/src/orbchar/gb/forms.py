"""Sampled exterior algebra and the Euler / transgression form assembly.

A p-form on a d-dimensional parameter domain is a dict mapping strictly
increasing index tuples to arrays of sample values. Connection forms arrive as
arrays ``omega[..., i, j, a]`` (coefficient of the a-th basis 1-form in
omega_ij) and curvature forms as ``Omega[..., i, j, a, b]`` (antisymmetric in
a, b; Omega_ij = sum_{a<b} Omega[..., i, j, a, b] du_a ^ du_b).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

Form = dict  # tuple[int, ...] -> ndarray


def double_factorial(k: int) -> int:
    """k!! with (-1)!! = 0!! = 1."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_area(n: int) -> float:
    """Volume of the unit sphere S^{n-1} in R^n."""
    m = n // 2
    if n % 2 == 0:
        return (2 * math.pi) ** m / double_factorial(n - 2)
    return 2 * (2 * math.pi) ** m / double_factorial(n - 2)


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append((-1 if inversions % 2 else 1, perm))
    return tuple(out)


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def wedge(f: Form, g: Form) -> Form:
    out: Form = {}
    for ka, va in f.items():
        for kb, vb in g.items():
            if set(ka) & set(kb):
                continue
            key = tuple(sorted(ka + kb))
            term = _merge_sign(ka, kb) * va * vb
            out[key] = out[key] + term if key in out else term
    return out


def one_form(coeffs: np.ndarray) -> Form:
    return {(a,): coeffs[..., a] for a in range(coeffs.shape[-1])}


def two_form(coeffs: np.ndarray) -> Form:
    d = coeffs.shape[-1]
    return {(a, b): coeffs[..., a, b] for a in range(d) for b in range(a + 1, d)}


def top_coefficient(f: Form, d: int, like: np.ndarray) -> np.ndarray:
    return f.get(tuple(range(d)), np.zeros_like(like))


def _wedge_all(forms: list[Form]) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def assemble_phi(omega: np.ndarray, Omega: np.ndarray, n: int) -> np.ndarray:
    """Top-degree coefficient of the transgression (n-1)-form.

    ``omega``/``Omega`` are the adapted-frame connection and curvature forms
    pulled back to an (n-1)-dimensional parameter domain, with frame index
    n-1 the unit vector of the sphere bundle.
    """
    if n < 2:
        raise ValueError("the transgression form needs n >= 2")
    d = n - 1
    if omega.shape[-3:] != (n, n, d) or Omega.shape[-4:] != (n, n, d, d):
        raise ValueError(f"form shapes {omega.shape}, {Omega.shape} do not match n={n}")
    last = n - 1
    ones = {(): np.ones(omega.shape[:-3])}
    total = np.zeros(omega.shape[:-3])
    for k in range((n - 1) // 2 + 1):
        coeff = (-1) ** k / (2 ** k * math.factorial(k) * double_factorial(n - 2 * k - 1))
        phi_k = np.zeros_like(total)
        for sign, s in signed_permutations(d):
            factors = [two_form(Omega[..., s[2 * j], s[2 * j + 1], :, :]) for j in range(k)]
            factors += [one_form(omega[..., s[j], last, :]) for j in range(2 * k, d)]
            phi_k = phi_k + sign * top_coefficient(_wedge_all(factors or [ones]), d, total)
        total = total + coeff * phi_k
    return total / (double_factorial(n - 2) * sphere_area(n))


def phi_closed_form(omega: np.ndarray, Omega: np.ndarray, n: int) -> np.ndarray:
    """Hand-expanded transgression form for n = 2 and n = 3."""
    if n == 2:
        return omega[..., 0, 1, 0] / (2 * math.pi)
    if n == 3:
        w13, w23 = omega[..., 0, 2, :], omega[..., 1, 2, :]
        wedge13_23 = w13[..., 0] * w23[..., 1] - w13[..., 1] * w23[..., 0]
        return (wedge13_23 - Omega[..., 0, 1, 0, 1]) / (4 * math.pi)
    raise ValueError("closed forms exist only for n = 2, 3")


def euler_form(Omega: np.ndarray, n: int) -> np.ndarray:
    """Top coefficient of the Euler n-form built from curvature 2-forms on an
    n-dimensional base; identically zero for odd n."""
    shape = Omega.shape[:-4]
    if n % 2:
        return np.zeros(shape)
    m = n // 2
    total = np.zeros(shape)
    for sign, s in signed_permutations(n):
        factors = [two_form(Omega[..., s[2 * j], s[2 * j + 1], :, :]) for j in range(m)]
        total = total + sign * top_coefficient(_wedge_all(factors), n, total)
    return (-1) ** m / (2 ** (2 * m) * math.pi ** m * math.factorial(m)) * total
