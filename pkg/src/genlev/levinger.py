"""The generalized Levinger family ``L(A, alpha, beta) = alpha*H_A + beta*S_A``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .matrix import as_square, cartesian_split

__all__ = [
    "LevingerParams",
    "as_params",
    "inverse_transform",
    "map_point",
    "ordinary_levinger",
    "skew_levinger",
    "transform",
]


@dataclass(frozen=True)
class LevingerParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError(f"parameters must be finite, got ({self.alpha}, {self.beta})")

    def __iter__(self):
        yield self.alpha
        yield self.beta

    def scaled(self, s: float) -> "LevingerParams":
        return LevingerParams(self.alpha * s, self.beta * s)


def as_params(p) -> LevingerParams:
    """Accept a :class:`LevingerParams` or any ``(alpha, beta)`` pair."""
    if isinstance(p, LevingerParams):
        return p
    alpha, beta = p
    return LevingerParams(float(alpha), float(beta))


def transform(a, p) -> np.ndarray:
    """Return ``alpha*H_A + beta*S_A``.

    Evaluated through the Cartesian split rather than the equivalent
    ``((alpha+beta)/2) A + ((alpha-beta)/2) A*`` so the result keeps exact
    Hermitian/skew-Hermitian parts.
    """
    p = as_params(p)
    parts = cartesian_split(a)
    return p.alpha * parts.h_part + p.beta * parts.s_part


def ordinary_levinger(a, t: float) -> np.ndarray:
    """``t A + (1-t) A*``, i.e. ``transform(A, (1, 2t-1))``."""
    return transform(a, (1.0, 2.0 * t - 1.0))


def skew_levinger(a, t: float) -> np.ndarray:
    """``t A + (t-1) A*``, i.e. ``transform(A, (2t-1, 1))``."""
    return transform(a, (2.0 * t - 1.0, 1.0))


def inverse_transform(lmat, p) -> np.ndarray:
    """Recover A from ``L = transform(A, p)``; needs alpha and beta nonzero.

    Uses ``alpha*A = ((alpha+beta)/(2 beta)) L - ((alpha-beta)/(2 beta)) L*``.
    """
    p = as_params(p)
    if p.alpha == 0 or p.beta == 0:
        raise DomainError("the Levinger transformation is not invertible when alpha or beta is 0")
    m = as_square(lmat)
    a, b = p.alpha, p.beta
    alpha_a = ((a + b) / (2 * b)) * m - ((a - b) / (2 * b)) * m.conj().T
    return alpha_a / a


def map_point(z, p):
    """``alpha*Re(z) + i*beta*Im(z)``; works elementwise on arrays."""
    p = as_params(p)
    z = np.asarray(z, dtype=complex)
    out = p.alpha * z.real + 1j * (p.beta * z.imag)
    return complex(out) if out.ndim == 0 else out
