"""Registry of equation systems."""

from __future__ import annotations

from ..errors import InvalidParameterError
from ..logging_config import get_logger
from .base import EquationSystem
from .standard import FullSystem, QPhiSystem, ReducedSystem

log = get_logger("systems")


class SystemRegistry:
    """Holds the equation systems selectable by name."""

    _instance: SystemRegistry | None = None
    _systems: dict[str, EquationSystem]

    def __new__(cls) -> SystemRegistry:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._systems = {}
            cls._instance._register_builtins()
        return cls._instance

    def _register_builtins(self) -> None:
        """Register built-in equation systems."""
        for system in (FullSystem(), ReducedSystem(), QPhiSystem()):
            self.register_system(system)

    def register_system(self, system: EquationSystem) -> None:
        """Register a system instance, replacing any system with the same name."""
        name = system.get_name()
        if name in self._systems:
            log.debug(f"Replacing equation system '{name}'")
        self._systems[name] = system

    def get_system(self, name: str) -> EquationSystem | None:
        """Get a system by name."""
        return self._systems.get(name)

    def require(self, name: str) -> EquationSystem:
        """Get a system by name or raise InvalidParameterError listing the known ones."""
        system = self.get_system(name)
        if system is None:
            known = ", ".join(self.names())
            raise InvalidParameterError(f"unknown equation system '{name}' (known: {known})")
        return system

    def get_all_systems(self) -> list[EquationSystem]:
        return list(self._systems.values())

    def names(self) -> list[str]:
        return sorted(self._systems)


def get_registry() -> SystemRegistry:
    """Get the global system registry instance."""
    return SystemRegistry()
