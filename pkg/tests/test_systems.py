"""Tests for the equation system registry."""

from unittest.mock import patch

import numpy as np
import pytest

from dicke_battery.errors import InvalidParameterError, UnsupportedRegimeError
from dicke_battery.model import ModelParams
from dicke_battery.systems import EquationSystem, FullSystem, QPhiSystem, ReducedSystem, SystemRegistry, get_registry


class ConstantSystem(EquationSystem):
    """dy/dt = 0."""

    columns = ("y",)

    def get_name(self):
        return "constant"

    def pack(self, state):
        return np.atleast_1d(np.asarray(state, dtype=float))

    def unpack(self, values):
        return np.asarray(values, dtype=float)

    def vector_field(self, t, y, params):
        return np.zeros_like(y)

    def energy(self, y, params):
        return np.asarray(y[0])

    def spin_norm2(self, y, params):
        return np.full(np.shape(y[0]), params.spin**2)


class TestSystemRegistry:
    """Tests for SystemRegistry."""

    def test_singleton(self):
        """Test that SystemRegistry is a singleton."""
        assert SystemRegistry() is SystemRegistry()
        assert get_registry() is SystemRegistry()

    def test_builtin_registration(self):
        """Built-in systems are registered automatically."""
        assert get_registry().names() == ["full", "qphi", "reduced"]
        assert isinstance(get_registry().get_system("full"), FullSystem)
        assert isinstance(get_registry().get_system("reduced"), ReducedSystem)
        assert isinstance(get_registry().get_system("qphi"), QPhiSystem)

    def test_get_system_missing(self):
        """Unknown names return None from get_system."""
        assert get_registry().get_system("non-existent") is None

    def test_require_lists_known_systems(self):
        """require names the known systems in its error."""
        with pytest.raises(InvalidParameterError, match="full, qphi, reduced"):
            get_registry().require("lindblad")

    def test_register_custom_system(self):
        """A custom system can be registered and looked up."""
        registry = get_registry()
        with patch.dict(registry._systems):
            registry.register_system(ConstantSystem())
            assert registry.require("constant").dim == 1
            assert "constant" in registry.names()
        assert "constant" not in registry.names()

    def test_description(self):
        """The class docstring doubles as description."""
        assert "canonical" in QPhiSystem().get_description().lower()
        assert ConstantSystem().get_description() == "dy/dt = 0."


class TestBuiltinSystems:
    """Tests for the built-in vector fields and invariants."""

    def test_full_vector_field(self, dicke_params):
        """Full equations evaluated by hand at one state."""
        y = np.array([0.5, -0.2, 3.0, 4.0, -2.0])
        dy = FullSystem().vector_field(0.0, y, dicke_params)
        g = 2.0 * np.sqrt(2.0) * 0.5
        expected = [-0.2, -0.5 - g * 3.0, -4.0, 3.0 - g * 0.5 * -2.0, g * 0.5 * 4.0]
        np.testing.assert_allclose(dy, expected, rtol=1e-14)

    def test_reduced_vector_field(self, dicke_params):
        """Reduced flow with a = -2."""
        dy = ReducedSystem().vector_field(0.0, np.array([3.0, 4.0, -2.0]), dicke_params)
        np.testing.assert_allclose(dy, [-4.0, 3.0 + 2.0 * 3.0 * -2.0, -2.0 * 3.0 * 4.0], rtol=1e-14)

    def test_energy_accepts_batches(self, dicke_params):
        """Energy and norm work on one state and on a (dim, n) batch."""
        system = FullSystem()
        batch = np.tile(np.array([[0.5], [-0.2], [3.0], [4.0], [-2.0]]), (1, 3))
        single = system.energy(batch[:, 0], dicke_params)
        np.testing.assert_allclose(system.energy(batch, dicke_params), single)
        np.testing.assert_allclose(system.spin_norm2(batch, dicke_params), 29.0)

    def test_full_hamiltonian_dicke(self, dicke_params):
        """For eps = -1 the direct spin term vanishes."""
        y = np.array([1.0, 2.0, 3.0, 0.0, -1.0])
        expected = 0.5 * (1.0 + 4.0) - 1.0 + 2.0 * np.sqrt(2.0) * 0.5 * 3.0
        assert float(FullSystem().energy(y, dicke_params)) == pytest.approx(expected, rel=1e-14)

    def test_reduced_requires_attractive(self):
        """The reduced flow is only defined for eps < 0."""
        p = ModelParams(omega=1.0, omega0=1.0, coupling=0.5, epsilon=0.0, spin=5.0)
        with pytest.raises(UnsupportedRegimeError):
            ReducedSystem().validate(p)

    def test_qphi_requires_dicke(self):
        """The canonical system is only defined for eps = -1."""
        p = ModelParams(omega=1.0, omega0=1.0, coupling=0.5, epsilon=-0.5, spin=5.0)
        with pytest.raises(UnsupportedRegimeError):
            QPhiSystem().validate(p)

    def test_unpack_wrong_size(self):
        """States of the wrong length are rejected with the column names."""
        with pytest.raises(InvalidParameterError, match="q, p, sx, sy, sz"):
            FullSystem().unpack(np.zeros(3))
