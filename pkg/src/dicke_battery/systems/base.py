"""Base class for equation systems."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from ..model import ModelParams


class EquationSystem(ABC):
    """Base class for all equation systems the integrator can drive.

    States travel as flat numpy arrays in the order given by ``columns``.
    ``energy`` and ``spin_norm2`` accept either one state of shape (dim,)
    or a batch of shape (dim, n).
    """

    #: State column names, in array order.
    columns: tuple[str, ...] = ()

    #: Column name of the conserved generator in exported trajectories.
    energy_label: str = "H"

    @abstractmethod
    def get_name(self) -> str:
        """Return the unique name of the system."""
        pass

    def get_description(self) -> str:
        return self.__class__.__doc__ or self.get_name()

    @property
    def dim(self) -> int:
        return len(self.columns)

    def validate(self, params: ModelParams) -> None:
        """Raise if the system is not defined for ``params``."""
        return None

    @abstractmethod
    def pack(self, state: Any) -> np.ndarray:
        """Convert a state object into the flat array layout."""
        pass

    @abstractmethod
    def unpack(self, values: np.ndarray) -> Any:
        """Convert a flat array back into a state object."""
        pass

    @abstractmethod
    def vector_field(self, t: float, y: np.ndarray, params: ModelParams) -> np.ndarray:
        """Time derivative of ``y``."""
        pass

    @abstractmethod
    def energy(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        """Conserved generator of the flow."""
        pass

    @abstractmethod
    def spin_norm2(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        """Squared superspin length Sx^2 + Sy^2 + Sz^2."""
        pass
