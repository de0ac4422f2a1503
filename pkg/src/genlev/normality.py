"""Normality distance and rank-one symmetric perturbations of normal matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NonNormalError
from .matrix import as_square, cartesian_split, is_normal

__all__ = [
    "NormalityReport",
    "is_real_eigenvector",
    "normality_distance",
    "perturbed_normality_identity",
    "rank_one_normality",
]


def normality_distance(m) -> float:
    """``||M M* - M* M||_F``."""
    m = as_square(m)
    mh = m.conj().T
    return float(np.linalg.norm(m @ mh - mh @ m, "fro"))


def _normal_threshold(m) -> float:
    return 1e-9 * float(np.linalg.norm(m, "fro")) ** 2


@dataclass(frozen=True)
class NormalityReport:
    distance: float
    closed_form: float | None
    is_normal: bool
    real_eigenvector: bool | None = None


def _real_normal(n) -> np.ndarray:
    m = as_square(n)
    if np.any(m.imag != 0):
        raise DomainError("expected a real matrix")
    if not is_normal(m, 1e-9):
        raise NonNormalError("N must be normal")
    return m.real


def is_real_eigenvector(n, x) -> bool:
    """Whether x is (numerically) an eigenvector of N for a real eigenvalue.

    Uses the Rayleigh quotient ``r = x^T N x / x^T x``: x qualifies when
    ``||N x - r x|| <= 1e-8 ||N|| ||x||``.  For real N and x the quotient
    is real, so the imaginary-part test is vacuous for real data.
    """
    n = np.asarray(n, dtype=complex)
    x = np.asarray(x, dtype=complex)
    r = (x.conj() @ n @ x) / (x.conj() @ x)
    if abs(r.imag) > 1e-8 * max(1.0, abs(r)):
        return False
    lhs = np.linalg.norm(n @ x - r * x)
    return bool(lhs <= 1e-8 * np.linalg.norm(n, 2) * np.linalg.norm(x))


def rank_one_normality(n, x) -> NormalityReport:
    """Normality of ``N + x x^T`` for real normal N.

    The closed form ``2 ||x|| sqrt(x^T (N^T N - N^2) x)`` must match the
    direct distance.  Unless x is an eigenvector for a real eigenvalue,
    the sum is normal exactly when N is symmetric.
    """
    nr = _real_normal(n)
    xv = np.asarray(x, dtype=float).ravel()
    if xv.shape[0] != nr.shape[0]:
        raise DimensionError("vector length must match the matrix order")
    if not np.any(xv):
        raise DomainError("x must be nonzero")
    m = nr + np.outer(xv, xv)
    dist = normality_distance(m)
    quad = float(xv @ (nr.T @ nr - nr @ nr) @ xv)
    closed = 2 * np.linalg.norm(xv) * np.sqrt(max(quad, 0.0))
    return NormalityReport(distance=dist, closed_form=float(closed),
                           is_normal=dist <= _normal_threshold(m),
                           real_eigenvector=is_real_eigenvector(nr, xv))


def perturbed_normality_identity(n, e) -> tuple[float, float]:
    """``(||M M^T - M^T M||_F, ||2 H_[N,E^T] + E E^T - E^T E||_F)`` for ``M = N + E``."""
    nr = _real_normal(n)
    em = as_square(e)
    if em.shape != nr.shape:
        raise DimensionError("N and E must have the same order")
    if np.any(em.imag != 0):
        raise DomainError("expected a real perturbation")
    er = em.real
    comm = nr @ er.T - er.T @ nr
    rhs = 2 * cartesian_split(comm).h_part.real + er @ er.T - er.T @ er
    return normality_distance(nr + er), float(np.linalg.norm(rhs, "fro"))
