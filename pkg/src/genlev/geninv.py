"""Spectral generalized inverse of ``(A - lam_i I)^mu`` for diagonalizable A.

    [(A - lam_i I)^mu]^+ = sum_{k outside cluster(i)} v_k w_k^* / ((lam_k - lam_i)^mu s_k)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NonNormalError
from .matrix import EigenSystem, as_square, eigensystem, is_normal

__all__ = [
    "GenInverse",
    "GenInverseCheck",
    "moore_penrose_check",
    "penrose_residuals",
    "shifted_power",
    "spectral_geninv",
    "verify_geninv",
]


@dataclass(frozen=True)
class GenInverse:
    matrix: np.ndarray
    source_lambda: complex
    power: int
    excluded_indices: tuple[int, ...]


def _check_power(mu) -> int:
    if int(mu) != mu or mu < 1:
        raise DomainError(f"power must be a positive integer, got {mu}")
    return int(mu)


def spectral_geninv(es: EigenSystem, lambda_i: complex, mu: int = 1) -> GenInverse:
    """Generalized inverse of ``(A - lambda_i I)^mu`` from the eigensystem.

    Every index whose eigenvalue lies within ``es.cluster_tol`` of
    `lambda_i` is left out of the sum, so repeated semisimple eigenvalues
    are handled.
    """
    mu = _check_power(mu)
    i = es.index_of(lambda_i)
    lam = es.values[i]
    keep = es.outside(i)
    coef = 1.0 / ((es.values[keep] - lam) ** mu * es.cond[keep])
    x = (es.right[:, keep] * coef) @ es.left[:, keep].conj().T
    return GenInverse(matrix=x, source_lambda=complex(lam), power=mu,
                      excluded_indices=tuple(int(k) for k in es.cluster(i)))


def shifted_power(a, lambda_i: complex, mu: int) -> np.ndarray:
    """``(A - lambda_i I)^mu``."""
    a = as_square(a)
    return np.linalg.matrix_power(a - lambda_i * np.eye(a.shape[0]), _check_power(mu))


@dataclass(frozen=True)
class GenInverseCheck:
    bxb_residual: float
    xbx_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.bxb_residual <= self.tolerance and self.xbx_residual <= self.tolerance


def verify_geninv(a, lambda_i: complex, mu: int, x) -> GenInverseCheck:
    """Residuals ``||BXB - B||_F`` and ``||XBX - X||_F`` for ``B = (A - lambda_i I)^mu``.

    Passing threshold: ``1e-9 (1 + ||A||_F^(2 mu))``.
    """
    a = as_square(a)
    x = as_square(x)
    if x.shape != a.shape:
        raise DimensionError("X must have the same order as A")
    b = shifted_power(a, lambda_i, mu)
    tol = 1e-9 * (1.0 + np.linalg.norm(a, "fro") ** (2 * mu))
    return GenInverseCheck(
        bxb_residual=float(np.linalg.norm(b @ x @ b - b, "fro")),
        xbx_residual=float(np.linalg.norm(x @ b @ x - x, "fro")),
        tolerance=float(tol),
    )


def penrose_residuals(b, x) -> tuple[float, float, float, float]:
    """Frobenius residuals of the four Penrose conditions for X as a pseudo-inverse of B."""
    b = as_square(b)
    x = as_square(x)
    bx, xb = b @ x, x @ b
    return (
        float(np.linalg.norm(bx @ b - b, "fro")),
        float(np.linalg.norm(xb @ x - x, "fro")),
        float(np.linalg.norm(bx.conj().T - bx, "fro")),
        float(np.linalg.norm(xb.conj().T - xb, "fro")),
    )


def moore_penrose_check(a, lambda_i: complex, mu: int = 1, tol: float = 1e-9) -> bool:
    """Whether the spectral inverse satisfies all four Penrose conditions.

    Requires a normal A.  Residuals are compared against
    ``tol * max(1, ||B||_F * ||X||_F)``.
    """
    a = as_square(a)
    if not is_normal(a, 1e-9):
        raise NonNormalError("Moore-Penrose property is only claimed for normal matrices")
    es = eigensystem(a)
    x = spectral_geninv(es, lambda_i, mu).matrix
    b = shifted_power(a, es.values[es.index_of(lambda_i)], mu)
    scale = max(1.0, float(np.linalg.norm(b, "fro") * np.linalg.norm(x, "fro")))
    return all(r <= tol * scale for r in penrose_residuals(b, x))
