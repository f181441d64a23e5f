"""Semiclassical state types.

Array order for the full system is ``[q, p, sx, sy, sz]``; for the reduced
system ``[sx, sy, sz]``; for the canonical pair ``[Q, phi]``.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np


@dataclass(frozen=True)
class PhaseState:
    """Point (q, p, Sx, Sy, Sz) of the 5-dimensional phase space."""

    q: float
    p: float
    sx: float
    sy: float
    sz: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> PhaseState:
        q, p, sx, sy, sz = (float(v) for v in values)
        return cls(q, p, sx, sy, sz)

    @property
    def spin(self) -> SpinVector:
        return SpinVector(self.sx, self.sy, self.sz)

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in astuple(self))


@dataclass(frozen=True)
class SpinVector:
    """Superspin components of the reduced system."""

    sx: float
    sy: float
    sz: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> SpinVector:
        sx, sy, sz = (float(v) for v in values)
        return cls(sx, sy, sz)

    @property
    def norm2(self) -> float:
        return self.sx**2 + self.sy**2 + self.sz**2


@dataclass(frozen=True)
class CanonicalSpin:
    """Canonical pair: Q = 2 Sz and the azimuthal angle phi (radians)."""

    big_q: float
    phi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.big_q, self.phi], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> CanonicalSpin:
        big_q, phi = (float(v) for v in values)
        return cls(big_q, phi)
