"""Tests for the Jacobi elliptic function engine."""

import math

import numpy as np
import pytest
from scipy.integrate import quad, solve_ivp
from scipy.special import ellipj, ellipk

from dicke_battery.elliptic import Regime, agm, classify_modulus, complete_elliptic_k, jacobi_functions
from dicke_battery.errors import EllipticDomainError, InvalidParameterError


class TestCompleteEllipticK:
    """Tests for the quarter period K(k)."""

    def test_zero_modulus(self):
        """K(0) is pi/2."""
        assert complete_elliptic_k(0.0) == pytest.approx(math.pi / 2, abs=1e-15)

    @pytest.mark.parametrize("k", [0.1, 0.5, 0.8, 0.99, 0.999999])
    def test_matches_scipy(self, k):
        """K(k) agrees with scipy, which takes the parameter m = k^2."""
        assert complete_elliptic_k(k) == pytest.approx(float(ellipk(k * k)), rel=1e-10)

    def test_matches_quadrature(self):
        """K(0.8) equals the defining integral."""
        integral, _ = quad(lambda phi: 1.0 / math.sqrt(1.0 - 0.64 * math.sin(phi) ** 2), 0.0, math.pi / 2)
        assert complete_elliptic_k(0.8) == pytest.approx(integral, rel=1e-12)
        assert complete_elliptic_k(0.8) == pytest.approx(1.99530277, abs=1e-8)

    @pytest.mark.parametrize("k", [1.0, 1.5, -0.1, math.nan])
    def test_domain(self, k):
        """K diverges at k = 1 and is not defined outside [0, 1)."""
        with pytest.raises(EllipticDomainError):
            complete_elliptic_k(k)

    def test_domain_error_is_invalid_parameter(self):
        """Domain errors are reported as bad input."""
        with pytest.raises(InvalidParameterError):
            complete_elliptic_k(2.0)

    def test_agm(self):
        """agm(1, sqrt(2)) is the reciprocal of Gauss's constant."""
        assert agm(1.0, math.sqrt(2.0)) == pytest.approx(1.1981402347355922, rel=1e-15)
        assert agm(2.0, 2.0) == 2.0


class TestJacobiFunctions:
    """Tests for sn, cn, dn."""

    @pytest.fixture
    def phases(self):
        return np.linspace(-12.0, 12.0, 241)

    @pytest.mark.parametrize("k", [0.0, 0.3, 0.5, 0.8, 0.95, 0.999])
    def test_matches_scipy_below_one(self, k, phases):
        """Landen values agree with scipy.special.ellipj."""
        sn, cn, dn = jacobi_functions(phases, k)
        ref_sn, ref_cn, ref_dn, _ = ellipj(phases, k * k)
        np.testing.assert_allclose(sn, ref_sn, atol=1e-10)
        np.testing.assert_allclose(cn, ref_cn, atol=1e-10)
        np.testing.assert_allclose(dn, ref_dn, atol=1e-10)

    @pytest.mark.parametrize("k", [1.2, 1.25, 2.0])
    def test_reciprocal_modulus(self, k, phases):
        """For k > 1, dn(u, k) = cn(k u, 1/k) and cn(u, k) = dn(k u, 1/k)."""
        sn, cn, dn = jacobi_functions(phases, k)
        ref_sn, ref_cn, ref_dn, _ = ellipj(k * phases, 1.0 / (k * k))
        np.testing.assert_allclose(sn, ref_sn / k, atol=1e-10)
        np.testing.assert_allclose(cn, ref_dn, atol=1e-10)
        np.testing.assert_allclose(dn, ref_cn, atol=1e-10)

    @pytest.mark.parametrize("k", [0.0, 0.4, 0.8, 0.99, 1.0, 1.1, 3.0])
    def test_identities(self, k, phases):
        """sn^2 + cn^2 = 1 and dn^2 + k^2 sn^2 = 1 for every modulus."""
        sn, cn, dn = jacobi_functions(phases, k)
        np.testing.assert_allclose(sn**2 + cn**2, 1.0, atol=1e-12)
        np.testing.assert_allclose(dn**2 + k * k * sn**2, 1.0, atol=1e-12)

    def test_separatrix_is_hyperbolic(self, phases):
        """At k = 1 the functions are tanh and sech."""
        sn, cn, dn = jacobi_functions(phases, 1.0)
        np.testing.assert_allclose(sn, np.tanh(phases), atol=1e-15)
        np.testing.assert_allclose(cn, 1.0 / np.cosh(phases), atol=1e-15)
        np.testing.assert_allclose(dn, cn, atol=0.0)

    def test_trigonometric_limit(self, phases):
        """At k = 0 the functions are sin, cos, 1."""
        sn, cn, dn = jacobi_functions(phases, 0.0)
        np.testing.assert_allclose(sn, np.sin(phases), atol=1e-13)
        np.testing.assert_allclose(cn, np.cos(phases), atol=1e-13)
        np.testing.assert_allclose(dn, 1.0)

    def test_quarter_period(self):
        """dn(K(k), k) = sqrt(1 - k^2) and sn(K(k), k) = 1."""
        k = 0.8
        sn, cn, dn = jacobi_functions(complete_elliptic_k(k), k)
        assert sn == pytest.approx(1.0, abs=1e-12)
        assert cn == pytest.approx(0.0, abs=1e-8)
        assert dn == pytest.approx(0.6, abs=1e-10)

    def test_periodicity(self):
        """sn and cn have period 4K; dn has period 2K."""
        k = 0.7
        big_k = complete_elliptic_k(k)
        u = np.linspace(0.0, 3.0, 31)
        base = jacobi_functions(u, k)
        shifted = jacobi_functions(u + 4.0 * big_k, k)
        half = jacobi_functions(u + 2.0 * big_k, k)
        np.testing.assert_allclose(shifted.sn, base.sn, atol=1e-11)
        np.testing.assert_allclose(shifted.cn, base.cn, atol=1e-11)
        np.testing.assert_allclose(half.dn, base.dn, atol=1e-11)

    def test_large_phase(self):
        """Phases far from zero are reduced without losing accuracy."""
        k = 0.6
        u = np.array([1e3, 1e4 + 0.3])
        sn, _, _ = jacobi_functions(u, k)
        ref_sn, _, _, _ = ellipj(u, k * k)
        np.testing.assert_allclose(sn, ref_sn, atol=1e-8)

    def test_scalar_returns_floats(self):
        """Scalar phases give plain floats."""
        sn, cn, dn = jacobi_functions(0.5, 0.5)
        assert isinstance(sn, float)
        assert isinstance(cn, float)
        assert isinstance(dn, float)

    def test_non_finite_phase(self):
        """A NaN phase is rejected."""
        with pytest.raises(EllipticDomainError):
            jacobi_functions(np.array([0.0, math.nan]), 0.5)

    def test_negative_modulus(self):
        """Negative moduli are rejected."""
        with pytest.raises(EllipticDomainError):
            jacobi_functions(1.0, -0.5)


class TestClassifyModulus:
    """Tests for the regime tag."""

    def test_regimes(self):
        """k < 1 oscillates, k = 1 is the separatrix, k > 1 rotates."""
        assert classify_modulus(0.8) is Regime.OSCILLATING
        assert classify_modulus(1.0) is Regime.SEPARATRIX
        assert classify_modulus(1.0 + 1e-13) is Regime.SEPARATRIX
        assert classify_modulus(1.2) is Regime.ROTATING


class TestAmplitudeOracle:
    """Cross-check against the Jacobi amplitude ODE dphi/du = dn(u)."""

    def test_reciprocal_modulus_point(self):
        """dn(0.7, 1.25) = cn(0.875, 0.8) = cos(am(0.875, 0.8))."""
        m = 0.8**2
        sol = solve_ivp(
            lambda u, phi: np.sqrt(1.0 - m * np.sin(phi) ** 2), (0.0, 0.875), [0.0], method="DOP853", rtol=1e-12, atol=1e-14
        )
        expected = math.cos(sol.y[0, -1])
        assert jacobi_functions(0.7, 1.25).dn == pytest.approx(expected, abs=1e-10)
        assert jacobi_functions(0.875, 0.8).cn == pytest.approx(expected, abs=1e-10)
