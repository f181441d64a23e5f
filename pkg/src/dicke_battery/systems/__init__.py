"""Equation systems for dicke_battery."""

from .base import EquationSystem
from .manager import SystemRegistry, get_registry
from .standard import FullSystem, QPhiSystem, ReducedSystem

__all__ = [
    "EquationSystem",
    "SystemRegistry",
    "get_registry",
    "FullSystem",
    "ReducedSystem",
    "QPhiSystem",
]
