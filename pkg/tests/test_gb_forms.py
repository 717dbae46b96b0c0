import math

import numpy as np
import pytest

from orbchar.gb import forms


@pytest.mark.parametrize("k,expected", [(-1, 1), (0, 1), (1, 1), (2, 2), (5, 15), (6, 48)])
def test_double_factorial(k, expected):
    assert forms.double_factorial(k) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_sphere_area_matches_gamma_formula(n):
    assert forms.sphere_area(n) == pytest.approx(2 * math.pi ** (n / 2) / math.gamma(n / 2), rel=1e-14)


def test_known_sphere_areas():
    assert forms.sphere_area(2) == pytest.approx(2 * math.pi)
    assert forms.sphere_area(3) == pytest.approx(4 * math.pi)


def test_signed_permutations():
    perms = forms.signed_permutations(3)
    assert len(perms) == 6
    assert sum(s for s, _ in perms) == 0
    assert dict((p, s) for s, p in perms)[(1, 0, 2)] == -1


def test_wedge_anticommutes():
    rng = np.random.default_rng(0)
    a, b = forms.one_form(rng.normal(size=3)), forms.one_form(rng.normal(size=3))
    ab, ba = forms.wedge(a, b), forms.wedge(b, a)
    for key in ab:
        assert ab[key] == pytest.approx(-ba[key])


def _random_forms(rng, n, batch=50):
    d = n - 1
    w = rng.normal(size=(batch, n, n, d))
    w = w - np.swapaxes(w, 1, 2)
    R = rng.normal(size=(batch, n, n, d, d))
    R = R - np.swapaxes(R, 1, 2)
    R = R - np.swapaxes(R, 3, 4)
    return w, R


@pytest.mark.parametrize("n", [2, 3])
def test_closed_form_agrees_with_general_sum(n):
    rng = np.random.default_rng(n)
    w, R = _random_forms(rng, n)
    gen = forms.assemble_phi(w, R, n)
    closed = forms.phi_closed_form(w, R, n)
    assert np.max(np.abs(gen - closed)) < 1e-12


def test_general_sum_n4_runs_and_is_linear_in_scale():
    rng = np.random.default_rng(4)
    w, R = _random_forms(rng, 4, batch=5)
    # with Omega = 0 the result is homogeneous of degree 3 in omega
    zero = np.zeros_like(R)
    assert np.allclose(forms.assemble_phi(2 * w, zero, 4), 8 * forms.assemble_phi(w, zero, 4))


def test_shape_checks():
    with pytest.raises(ValueError):
        forms.assemble_phi(np.zeros((3, 3, 2)), np.zeros((3, 3, 1, 1)), 3)
    with pytest.raises(ValueError):
        forms.phi_closed_form(np.zeros((4, 4, 3)), np.zeros((4, 4, 3, 3)), 4)


def test_euler_form_odd_is_zero():
    rng = np.random.default_rng(1)
    R = rng.normal(size=(7, 3, 3, 3, 3))
    assert np.all(forms.euler_form(R, 3) == 0)


def test_euler_form_n2():
    R = np.zeros((2, 2, 2, 2))
    R[0, 1, 0, 1], R[0, 1, 1, 0] = -1.0, 1.0
    R[1, 0] = -R[0, 1]
    # Omega_12 = -du1^du2 is the unit sphere; its Euler density is +1/2pi
    val = forms.euler_form(R, 2)
    assert val == pytest.approx(1 / (2 * math.pi))
