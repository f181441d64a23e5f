"""Complete elliptic integral K(k) and Jacobi elliptic functions sn, cn, dn.

All functions take the modulus k, never the parameter m = k**2. Libraries
such as scipy.special.ellipj use m; convert before comparing.

For k < 1 the functions are computed with the descending Landen (AGM)
recursion, for |k - 1| <= SEPARATRIX_WINDOW with the hyperbolic limits, and
for k > 1 through the reciprocal-modulus identities

    sn(u, k) = sn(k u, 1/k) / k,  cn(u, k) = dn(k u, 1/k),  dn(u, k) = cn(k u, 1/k).
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

from .constants import LANDEN_TOL, MAX_AGM_ITERATIONS, SEPARATRIX_WINDOW
from .errors import EllipticDomainError

ArrayLike = Union[float, np.ndarray]


class Regime(str, Enum):
    """Motion regime selected by the modulus."""

    OSCILLATING = "oscillating"  # k < 1, inside one well
    SEPARATRIX = "separatrix"  # k = 1
    ROTATING = "rotating"  # k > 1, meandering between wells


class JacobiTriple(NamedTuple):
    sn: ArrayLike
    cn: ArrayLike
    dn: ArrayLike


def _check_modulus(k: float) -> float:
    k = float(k)
    if not math.isfinite(k):
        raise EllipticDomainError(f"modulus must be finite, got {k!r}")
    if k < 0:
        raise EllipticDomainError(f"modulus must be non-negative, got {k!r}")
    return k


def classify_modulus(k: float) -> Regime:
    """Regime tag of a modulus."""
    k = _check_modulus(k)
    if abs(k - 1.0) <= SEPARATRIX_WINDOW:
        return Regime.SEPARATRIX
    return Regime.OSCILLATING if k < 1.0 else Regime.ROTATING


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two non-negative numbers."""
    if a < 0 or b < 0:
        raise EllipticDomainError(f"agm needs non-negative arguments, got ({a!r}, {b!r})")
    for _ in range(MAX_AGM_ITERATIONS):
        if abs(a - b) <= LANDEN_TOL * max(a, b):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _complementary(k: float) -> float:
    return math.sqrt((1.0 - k) * (1.0 + k))


def complete_elliptic_k(k: float) -> float:
    """Quarter period K(k) = pi / (2 agm(1, sqrt(1 - k^2))) for 0 <= k < 1.

    Raises:
        EllipticDomainError: if k is negative, non-finite, or k >= 1 (divergent).
    """
    k = _check_modulus(k)
    if k >= 1.0:
        raise EllipticDomainError(f"K(k) diverges for k >= 1, got k = {k!r}")
    return math.pi / (2.0 * agm(1.0, _complementary(k)))


def _landen(u: np.ndarray, k: float) -> JacobiTriple:
    """sn, cn, dn for 0 <= k < 1 by descending Landen recursion."""
    a = [1.0]
    c = [k]
    b = _complementary(k)
    while abs(c[-1]) > LANDEN_TOL and len(a) <= MAX_AGM_ITERATIONS:
        a_prev = a[-1]
        a.append(0.5 * (a_prev + b))
        c.append(0.5 * (a_prev - b))
        b = math.sqrt(a_prev * b)

    # sn and cn have period 4K; reducing keeps 2^N a_N u small
    period = 4.0 * math.pi / (2.0 * agm(1.0, _complementary(k)))
    u_red = u - period * np.round(u / period)

    n = len(a) - 1
    phi = (2.0**n) * a[n] * u_red
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(np.clip(c[i] / a[i] * np.sin(phi), -1.0, 1.0)))

    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(np.maximum(0.0, 1.0 - (k * sn) ** 2))
    return JacobiTriple(sn, cn, dn)


def _separatrix(u: np.ndarray) -> JacobiTriple:
    decay = np.exp(-np.abs(u))
    sech = 2.0 * decay / (1.0 + decay * decay)
    return JacobiTriple(np.tanh(u), sech, sech)


def jacobi_functions(u: ArrayLike, k: float) -> JacobiTriple:
    """Jacobi elliptic functions (sn, cn, dn) at phase ``u`` for modulus ``k``.

    ``u`` may be a scalar or a numpy array; scalars give float results.

    Raises:
        EllipticDomainError: for non-finite phases, non-finite or negative k.
    """
    k = _check_modulus(k)
    u_arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u_arr)):
        raise EllipticDomainError("phase u must be finite")

    regime = classify_modulus(k)
    if regime is Regime.SEPARATRIX:
        triple = _separatrix(u_arr)
    elif regime is Regime.OSCILLATING:
        triple = _landen(u_arr, k)
    else:
        inner = _landen(u_arr * k, 1.0 / k)
        triple = JacobiTriple(inner.sn / k, inner.dn, inner.cn)

    if u_arr.ndim == 0:
        return JacobiTriple(float(triple.sn), float(triple.cn), float(triple.dn))
    return triple
