import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legcoh.coherent import (M_MAX_CAP, CoherentParams, coherent_coefficients, coherent_eval_compact,
                             coherent_eval_series, coherent_norm_check, coherent_state_on_grid,
                             identity_moment_check, measure_density, normalization_k0, phase_overlap)
from legcoh.errors import DomainError
from legcoh.quadrature import AngularGrid

from oracles import coherent_norm_squared_mp

Y00 = 1 / math.sqrt(4 * math.pi)
# N_1(|z| = 1), from 50-digit summation of the unnormalized amplitudes
N1_AT_1 = 1.1254932690819182


def rel(a, b):
    return abs(a - b) / abs(b)


class TestParams:
    def test_k_positive_needs_nonzero_z(self):
        with pytest.raises(DomainError):
            CoherentParams(1, 0j)

    def test_negative_k(self):
        with pytest.raises(DomainError):
            CoherentParams(-1, 1.0)

    def test_polar(self):
        p = CoherentParams(0, 2 * cmath.exp(1j * math.pi / 3))
        assert p.r == pytest.approx(2.0)
        assert p.phase == pytest.approx(math.pi / 3)
        assert 0 <= CoherentParams(0, -1j).phase < 2 * math.pi


class TestCoefficients:
    def test_vacuum(self):
        seq = coherent_coefficients(CoherentParams(0, 0j))
        assert seq.values[0] == 1
        assert np.all(seq.values[1:] == 0)
        assert seq.converged

    @pytest.mark.parametrize("r", [0.3, 1.0, 2.5, 6.0])
    def test_k0_hand_reduction(self, r):
        seq = coherent_coefficients(CoherentParams(0, r))
        n = normalization_k0(r)
        assert seq.normalization == pytest.approx(n, rel=1e-14)
        for m in range(6):
            expected = n * r ** m / math.sqrt(math.factorial(2 * m + 1))
            assert seq.values[m] == pytest.approx(expected, rel=1e-13)

    def test_k1_regression(self):
        seq = coherent_coefficients(CoherentParams(1, 1.0))
        assert seq.norm_squared() == pytest.approx(1.0, abs=1e-14)
        assert seq.normalization == pytest.approx(N1_AT_1, rel=1e-14)
        assert N1_AT_1 == pytest.approx(float(coherent_norm_squared_mp(1, 1.0) ** -0.5), rel=1e-15)

    @pytest.mark.parametrize("k, r", [(0, 4.0), (2, 0.5), (3, 7.0), (1, 20.0)])
    def test_normalization_against_arbitrary_precision(self, k, r):
        seq = coherent_coefficients(CoherentParams(k, r))
        ref = float(coherent_norm_squared_mp(k, r) ** -0.5)
        assert seq.normalization == pytest.approx(ref, rel=1e-13)

    def test_negative_m_amplitudes_carry_phase(self):
        z = 1.5 * cmath.exp(0.4j)
        seq = coherent_coefficients(CoherentParams(2, z))
        assert seq.m_values[0] == -2
        assert cmath.phase(seq.values[0]) == pytest.approx(-0.8)

    def test_unnormalized_and_fixed_cutoff(self):
        seq = coherent_coefficients(CoherentParams(0, 1.0), m_max=3, normalize=False)
        assert list(seq.m_values) == [0, 1, 2, 3]
        assert not seq.normalized
        assert seq.values[0] == pytest.approx(1.0)
        with pytest.raises(DomainError):
            coherent_coefficients(CoherentParams(2, 1.0), m_max=-3)

    def test_cap_reported(self):
        seq = coherent_coefficients(CoherentParams(0, 1e4))
        assert not seq.converged
        assert seq.m_values.size == M_MAX_CAP

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 3), st.floats(0.05, 12.0), st.floats(0, 6.28))
    def test_normalized(self, k, r, ph):
        seq = coherent_coefficients(CoherentParams(k, r * cmath.exp(1j * ph)))
        assert seq.converged
        assert abs(seq.norm_squared() - 1) <= 1e-10


class TestNormalizationK0:
    def test_limit(self):
        assert normalization_k0(0.0) == 1.0
        assert normalization_k0(1e-8) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("r", [1e-7, 1e-6, 1e-3, 0.5, 3.0, 30.0])
    def test_closed_form(self, r):
        assert normalization_k0(r) == pytest.approx(math.sqrt(r / math.sinh(r)), rel=1e-14)

    def test_no_overflow(self):
        # sinh overflows beyond r ~ 710; N(r) = sqrt(2r) e^{-r/2} there
        assert normalization_k0(800.0) == pytest.approx(math.sqrt(1600.0) * math.exp(-400.0), rel=1e-13)

    @pytest.mark.parametrize("r", [0.2, 1.0, 5.0])
    def test_norm_identity(self, r):
        s = sum(r ** (2 * m) / math.factorial(2 * m + 1) for m in range(80))
        assert normalization_k0(r) ** 2 * s == pytest.approx(1.0, rel=1e-14)


class TestEvaluation:
    @pytest.mark.parametrize("theta, phi", [(0.0, 0.0), (1.0, 2.0), (math.pi, 5.0)])
    def test_vacuum(self, theta, phi):
        p = CoherentParams(0, 0j)
        assert coherent_eval_series(p, theta, phi) == pytest.approx(Y00, rel=1e-15)
        assert coherent_eval_compact(p, theta, phi) == pytest.approx(Y00, rel=1e-15)

    def test_k0_direct(self):
        expected = math.sqrt(1 / (4 * math.pi * math.sinh(1))) * math.exp(-0.5)
        assert coherent_eval_compact(CoherentParams(0, 1.0), math.pi / 2, 0.0) == pytest.approx(expected, rel=1e-15)

    def test_k0_series_compact(self):
        p = CoherentParams(0, 2 * cmath.exp(1j * math.pi / 3))
        assert rel(coherent_eval_series(p, math.pi / 4, 1.0), coherent_eval_compact(p, math.pi / 4, 1.0)) < 1e-9

    def test_k1_series_compact(self):
        p = CoherentParams(1, 1.5)
        assert rel(coherent_eval_series(p, math.pi / 2, 0.0), coherent_eval_compact(p, math.pi / 2, 0.0)) < 1e-8

    @pytest.mark.parametrize("k", [0, 1, 2])
    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 4.0])
    @pytest.mark.parametrize("phz", [0.0, math.pi / 3])
    def test_equivalence_grid(self, k, r, phz):
        p = CoherentParams(k, r * cmath.exp(1j * phz))
        rng = np.random.default_rng(100 * k + int(10 * r))
        for theta, phi in zip(rng.uniform(0, math.pi, 8), rng.uniform(0, 2 * math.pi, 8)):
            s = coherent_eval_series(p, theta, phi)
            c = coherent_eval_compact(p, theta, phi)
            assert rel(s, c) <= 1e-8

    @pytest.mark.parametrize("theta", [0.0, 1e-9, math.pi])
    def test_poles_use_series(self, theta):
        p = CoherentParams(2, 1.2 + 0.3j)
        v = coherent_eval_compact(p, theta, 0.5)
        assert cmath.isfinite(v)
        assert v == coherent_eval_series(p, theta, 0.5)

    def test_angles_validated(self):
        with pytest.raises(DomainError):
            coherent_eval_compact(CoherentParams(0, 1.0), -0.1, 0.0)

    def test_grid_forms_agree(self):
        g = AngularGrid(10, 20)
        p = CoherentParams(1, 0.8 - 0.6j)
        a = coherent_state_on_grid(p, g, "series")
        b = coherent_state_on_grid(p, g, "compact")
        assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))
        with pytest.raises(ValueError):
            coherent_state_on_grid(p, g, "other")


class TestNormCheck:
    def test_vacuum(self):
        assert coherent_norm_check(CoherentParams(0, 0j)) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("phz", [0.0, 1.0, 4.0])
    def test_r3(self, phz):
        assert abs(coherent_norm_check(CoherentParams(0, 3 * cmath.exp(1j * phz))) - 1) <= 1e-9

    def test_r8_needs_finer_grid(self):
        p = CoherentParams(0, 8.0)
        assert abs(coherent_norm_check(p, AngularGrid(42, 84)) - 1) <= 1e-9

    def test_k_positive(self):
        assert abs(coherent_norm_check(CoherentParams(2, 1.5j)) - 1) <= 1e-9


class TestIdentity:
    @pytest.mark.parametrize("m, tol", [(0, 1e-10), (3, 1e-9), (10, 1e-8)])
    def test_moments(self, m, tol):
        assert abs(identity_moment_check(m) - 1) <= tol

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            identity_moment_check(-1)

    def test_phase_overlap(self):
        assert phase_overlap(3, 3) == pytest.approx(2 * math.pi)
        for mp in range(11):
            if mp != 4:
                assert abs(phase_overlap(4, mp)) < 1e-13

    def test_measure(self):
        assert measure_density(0.0) == 1 / (2 * math.pi)
        for r in np.logspace(-6, math.log10(50), 40):
            k = measure_density(float(r))
            assert k > 0
            assert k == pytest.approx(math.sinh(r) * math.exp(-r) / (2 * math.pi * r), rel=1e-12)
        with pytest.raises(DomainError):
            measure_density(-1.0)
