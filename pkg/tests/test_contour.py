import cmath

import numpy as np
import pytest

from lisbon.contour import (
    QuadratureSpec,
    circle_integral,
    lisbon_F,
    lisbon_F_log,
    lisbon_Ftilde,
    lisbon_Phi,
    sigma_partial,
)
from lisbon.entire import EntireFn
from lisbon.errors import QuadratureNoConvergence
from lisbon.polyroots import SigmaPoint, p_values, radius_bound
from lisbon.suites import sample_sigmas
from lisbon.traces import trace_T

E = cmath.e
exp = EntireFn.exp(1)


class TestQuadrature:
    def test_residues(self):
        assert abs(circle_integral(lambda z: 1 / z, 3.0) - 1) < 1e-14
        for n in range(5):
            assert abs(circle_integral(lambda z, n=n: z**n, 2.0)) < 1e-14

    def test_inverse_polynomial(self, sigma32):
        val = circle_integral(lambda z: 1 / p_values(sigma32, z), 8.0)
        assert abs(val) < 1e-14

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(m_start=100)
        with pytest.raises(ValueError):
            QuadratureSpec(tol=0)

    def test_cap(self):
        spec = QuadratureSpec(tol=1e-14, m_start=4, m_cap=8)
        with pytest.raises(QuadratureNoConvergence):
            circle_integral(lambda z: np.exp(40 * z) / z, 1.0, spec)


class TestLisbonIntegrals:
    def test_first_kind(self, sigma32):
        for k in (1, 2, 3):
            assert abs(lisbon_F(EntireFn.poly([1]), SigmaPoint([0.5] * k)) - k) < 1e-12
        assert abs(lisbon_F(EntireFn.poly([0, 1]), sigma32) - 3) < 1e-12
        assert abs(lisbon_F(exp, sigma32) - (E + E**2)) < 1e-10

    def test_second_kind(self, sigma32):
        s3 = SigmaPoint([1.5, -0.5j, 2])
        assert abs(lisbon_Ftilde(EntireFn.monomial(2), s3) - 1) < 1e-12
        assert abs(lisbon_Ftilde(EntireFn.monomial(1), s3)) < 1e-12
        assert abs(lisbon_Ftilde(EntireFn.monomial(2), sigma32) - 3) < 1e-12

    def test_vector(self, sigma32):
        assert np.allclose(lisbon_Phi(EntireFn.poly([1]), SigmaPoint([0.2, 1j])), [0, 1], atol=1e-13)
        assert np.allclose(lisbon_Phi(EntireFn.poly([1]), SigmaPoint([1, 1, 1])), [0, 0, 1], atol=1e-13)
        ref = [E / -1 + E**2, E / -1 + 2 * E**2]
        assert np.allclose(lisbon_Phi(exp, sigma32), ref, atol=1e-10)

    def test_log_form(self, sigma32):
        assert abs(lisbon_F_log(EntireFn.poly([1]), sigma32) - 2) < 1e-14
        assert abs(lisbon_F_log(EntireFn.poly([0, 1]), sigma32) - 3) < 1e-12
        for k in (2, 3, 4):
            for s in sample_sigmas(k, 3, seed=5, bound=3):
                assert abs(lisbon_F_log(exp, s) - lisbon_F(exp, s)) < 1e-9
                assert abs(lisbon_F(exp, s) - trace_T(exp, s)) < 1e-9


class TestSigmaPartial:
    def test_polynomial(self):
        s = SigmaPoint([3, 1])
        assert abs(sigma_partial(lambda S: S.values[0] ** 2, s, 1) - 6) < 1e-12
        assert abs(sigma_partial(lambda S: S.values[0] ** 2, s, 1, 1) - 2) < 1e-10
        assert abs(sigma_partial(lambda S: S.values[0] * S.values[1] ** 2, s, 1, 2) - 2) < 1e-10

    @pytest.mark.parametrize("k", [2, 3])
    def test_first_derivative_is_vector_integral(self, k):
        # d_h F(f) = (-1)^(h-1) Phi(f')_{k-h}
        for s in sample_sigmas(k, 2, seed=1, bound=2):
            phi = lisbon_Phi(exp.derivative(), s)
            for h in range(1, k + 1):
                d = sigma_partial(lambda S: lisbon_F(exp, S), s, h)
                assert abs(d - (-1) ** (h - 1) * phi[k - h]) < 1e-8

    def test_log_derivative_formula(self):
        # d_h F = -(1/2 i pi) int f'(zeta) (-1)^h zeta^(k-h) / P
        k = 3
        for s in sample_sigmas(k, 2, seed=2, bound=2):
            R = radius_bound(s)
            for h in range(1, k + 1):
                d = sigma_partial(lambda S: lisbon_F(exp, S), s, h)
                ref = -circle_integral(
                    lambda z: exp.derivative()(z) * (-1) ** h * z ** (k - h) / p_values(s, z), R
                )
                assert abs(d - ref) < 1e-8
