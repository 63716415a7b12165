import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import sph_harm_y

from legcoh.errors import DomainError
from legcoh.harmonics import (gram_matrix, harmonic_indices, harmonic_on_grid, sphere_inner_product,
                              spherical_harmonic)
from legcoh.quadrature import AngularGrid

from oracles import harmonic_symbolic

Y00 = 1 / math.sqrt(4 * math.pi)


@pytest.mark.parametrize("theta, phi", [(0.0, 0.0), (1.1, 2.0), (math.pi, 6.0)])
def test_constant_harmonic(theta, phi):
    assert spherical_harmonic((0, 0), theta, phi) == pytest.approx(Y00, rel=1e-15)


def test_y10_vanishes_on_equator():
    assert abs(spherical_harmonic((1, 0), math.pi / 2, 0.0)) < 1e-16


def test_y21_against_symbolic_oracle():
    ref = harmonic_symbolic(2, 1, math.pi / 3, math.pi / 4)
    val = spherical_harmonic((2, 1), math.pi / 3, math.pi / 4)
    assert abs(val - ref) <= 1e-14 * abs(ref)


@pytest.mark.parametrize("l", [0, 1, 4, 9, 15])
def test_condon_shortley_matches_scipy(l):
    rng = np.random.default_rng(l)
    for theta, phi in zip(rng.uniform(0, math.pi, 5), rng.uniform(0, 2 * math.pi, 5)):
        for m in range(-l, l + 1):
            ref = sph_harm_y(l, m, theta, phi)
            assert abs(spherical_harmonic((l, m), theta, phi) - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_poles(theta):
    for l in range(5):
        for m in range(-l, l + 1):
            v = spherical_harmonic((l, m), theta, 1.3)
            if m:
                assert v == 0
            else:
                sign = 1 if theta == 0 or l % 2 == 0 else -1
                assert v == pytest.approx(sign * math.sqrt((2 * l + 1) / (4 * math.pi)), rel=1e-14)


@pytest.mark.parametrize("theta, phi", [(-0.1, 0.0), (3.2, 0.0), (1.0, 2 * math.pi), (1.0, -0.1)])
def test_angles_validated(theta, phi):
    with pytest.raises(DomainError):
        spherical_harmonic((1, 0), theta, phi)


def test_m0_is_real():
    v = spherical_harmonic((6, 0), 0.7, 4.0)
    assert v.imag == 0.0


@given(st.integers(0, 12).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, l))),
       st.floats(0.01, math.pi - 0.01), st.floats(0.0, 6.28))
def test_conjugation(lm, theta, phi):
    l, m = lm
    a = spherical_harmonic((l, -m), theta, phi)
    b = (-1) ** m * np.conj(spherical_harmonic((l, m), theta, phi))
    assert abs(a - b) <= 1e-11 * abs(b) + 1e-300


class TestInnerProduct:
    def test_unit_norm(self):
        assert sphere_inner_product(lambda t, p: Y00, lambda t, p: Y00) == pytest.approx(1.0, abs=1e-15)

    def test_m_separation(self):
        g = AngularGrid()
        f = harmonic_on_grid((3, 3), g)
        h = harmonic_on_grid((3, 1), g)
        assert abs(sphere_inner_product(f, h, g)) < 1e-13

    def test_theta_exactness(self):
        g = AngularGrid(7, 16)
        v = sphere_inner_product(harmonic_on_grid((5, 3), g), harmonic_on_grid((7, 3), g), g)
        assert abs(v) < 1e-12

    def test_callables_and_arrays_agree(self):
        g = AngularGrid(8, 12)
        arr = harmonic_on_grid((2, 1), g)
        a = sphere_inner_product(arr, arr, g)
        b = sphere_inner_product(lambda t, p: spherical_harmonic((2, 1), t, p), arr, g)
        assert a == pytest.approx(b, abs=1e-14)
        assert a == pytest.approx(1.0, abs=1e-13)


def test_grid_values_match_pointwise():
    g = AngularGrid(6, 5)
    arr = harmonic_on_grid((4, -2), g)
    for i, t in enumerate(g.theta):
        for j, p in enumerate(g.phi):
            assert arr[i, j] == pytest.approx(spherical_harmonic((4, -2), float(t), float(p)), abs=1e-15)


def test_gram_refinement_stable():
    _, a = gram_matrix(6)
    _, b = gram_matrix(6, AngularGrid(64, 128))
    assert np.max(np.abs(a - b)) <= 1e-12


def test_index_listing():
    idx = harmonic_indices(3)
    assert len(idx) == 16
    assert (idx[0].l, idx[0].m) == (0, 0)
    assert (idx[-1].l, idx[-1].m) == (3, 3)
