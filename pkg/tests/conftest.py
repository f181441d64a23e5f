"""Shared physics fixtures."""

import pytest

from dicke_battery.analytic import build_solution
from dicke_battery.model import ModelParams


@pytest.fixture
def dicke_params():
    """Ordinary Dicke model, omega = omega0 = 1, lambda = 0.5, N = 100."""
    return ModelParams(omega=1.0, omega0=1.0, coupling=0.5, epsilon=-1.0, spin=50.0)


@pytest.fixture
def small_params():
    """Ordinary Dicke model with S = 10."""
    return ModelParams(omega=1.0, omega0=1.0, coupling=0.5, epsilon=-1.0, spin=10.0)


@pytest.fixture
def solution(dicke_params):
    """Bound luminosity orbit with k = 0.8."""
    return build_solution(dicke_params, 0.8)
