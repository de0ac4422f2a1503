"""Dense complex matrices: text I/O, Cartesian split, norms, eigensystems.

Matrices are plain two-dimensional ``numpy`` arrays of dtype ``complex128``.
:func:`as_matrix` is the single gatekeeper that enforces shape and
finiteness; every public function in the package funnels its inputs
through it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    DefectiveMatrixError,
    DimensionError,
    EigenvalueNotFoundError,
    MatrixSyntaxError,
    NumericalError,
)

__all__ = [
    "CartesianSplit",
    "EigenSystem",
    "as_matrix",
    "as_square",
    "cartesian_split",
    "eigensystem",
    "format_complex",
    "format_matrix",
    "frobenius_norm",
    "is_normal",
    "normalize_vector",
    "parse_complex",
    "parse_matrix",
]

_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_FLOAT})(?:(?P<im>[+-]{_FLOAT})i)?$"
    rf"|^(?P<pure>[+-]?{_FLOAT})i$"
)


def as_matrix(a) -> np.ndarray:
    """Return `a` as a finite 2-D complex array (a copy is not forced)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("matrix has non-finite entries")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

def parse_complex(token: str) -> complex:
    """Parse one literal: ``R``, ``R+Ii``, ``R-Ii``, ``Ii`` or ``-Ii``."""
    m = _COMPLEX_RE.match(token)
    if m is None:
        raise MatrixSyntaxError(f"malformed complex literal {token!r}")
    if m.group("pure") is not None:
        return complex(0.0, float(m.group("pure")))
    im = m.group("im")
    return complex(float(m.group("re")), float(im) if im is not None else 0.0)


def parse_matrix(text: str) -> np.ndarray:
    """Parse the matrix file format.

    The first non-comment line holds ``<rows> <cols>``; each of the next
    ``rows`` non-comment lines holds ``cols`` whitespace-separated complex
    literals.  Lines whose first non-blank character is ``#`` and blank
    lines are skipped, as is leading indentation.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixSyntaxError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MatrixSyntaxError(f"bad header line {lines[0]!r}; expected '<rows> <cols>'")
    rows, cols = int(header[0]), int(header[1])
    if rows < 1 or cols < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {rows}x{cols}")
    body = lines[1:]
    if len(body) != rows:
        raise DimensionError(f"expected {rows} rows, found {len(body)}")
    out = np.empty((rows, cols), dtype=complex)
    for r, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise DimensionError(f"row {r + 1} has {len(tokens)} entries, expected {cols}")
        out[r] = [parse_complex(t) for t in tokens]
    return out


def _format_real(x: float, digits: int) -> str:
    s = format(float(x), f".{digits}g")
    return "0" if s in ("0", "-0") else s


def format_complex(z: complex, digits: int = 17) -> str:
    """Format `z` as ``R``, ``R+Ii`` or ``R-Ii`` with `digits` significant digits."""
    z = complex(z)
    re_s = _format_real(z.real, digits)
    if z.imag == 0.0:
        return re_s
    im_s = _format_real(abs(z.imag), digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{re_s}{sign}{im_s}i"


def format_matrix(a, digits: int = 17, indent: str = "") -> str:
    """Render `a` in the matrix file format (header line included)."""
    m = np.asarray(a, dtype=complex)
    lines = [f"{indent}{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(indent + " ".join(format_complex(z, digits) for z in row))
    return "\n".join(lines)


# --------------------------------------------------------------------------
# elementary operations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CartesianSplit:
    """Hermitian and skew-Hermitian parts, ``A = h_part + s_part``."""

    h_part: np.ndarray
    s_part: np.ndarray


def cartesian_split(a) -> CartesianSplit:
    # (a_ij + conj(a_ji))/2 is bitwise conj of its transpose partner, so
    # both parts have exact (skew-)Hermitian structure in floating point.
    m = as_square(a)
    mh = m.conj().T
    return CartesianSplit(h_part=(m + mh) / 2, s_part=(m - mh) / 2)


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a), "fro"))


def is_normal(a, tol: float = 1e-9) -> bool:
    """True when ``||AA* - A*A||_F <= tol * ||A||_F**2``."""
    m = as_square(a)
    mh = m.conj().T
    scale = np.linalg.norm(m, "fro") ** 2
    return bool(np.linalg.norm(m @ mh - mh @ m, "fro") <= tol * max(scale, np.finfo(float).tiny))


def normalize_vector(v) -> np.ndarray:
    """Unit 2-norm, phase chosen so the largest-magnitude entry is real positive."""
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise NumericalError("cannot normalize the zero vector")
    v = v / nrm
    j = int(np.argmax(np.abs(v)))
    return v * (abs(v[j]) / v[j])


# --------------------------------------------------------------------------
# eigensystems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenSystem:
    """Right/left eigenvectors of a diagonalizable matrix.

    ``right[:, k]`` is v_k and ``left[:, k]`` is w_k, so ``w_k^* A = lam_k w_k^*``.
    ``cond[k] = w_k^* v_k``; nothing downstream assumes it equals one.
    """

    matrix: np.ndarray
    values: np.ndarray
    right: np.ndarray
    left: np.ndarray
    cond: np.ndarray
    tol: float
    cluster_tol: float

    @property
    def order(self) -> int:
        return self.values.shape[0]

    def cluster(self, i: int) -> np.ndarray:
        """Indices k with ``|lam_k - lam_i| <= cluster_tol`` (always includes i)."""
        return np.flatnonzero(np.abs(self.values - self.values[i]) <= self.cluster_tol)

    def outside(self, i: int) -> np.ndarray:
        """Boolean mask of indices outside the cluster of ``lam_i``."""
        return np.abs(self.values - self.values[i]) > self.cluster_tol

    def is_simple(self, i: int) -> bool:
        return self.cluster(i).size == 1

    def index_of(self, lam: complex) -> int:
        """Index of the eigenvalue closest to `lam`, which must lie within cluster_tol."""
        d = np.abs(self.values - complex(lam))
        i = int(np.argmin(d))
        if d[i] > self.cluster_tol:
            raise EigenvalueNotFoundError(f"{lam} is not an eigenvalue (closest {self.values[i]})")
        return i

    def rescaled(self, right_scale, left_scale=None) -> "EigenSystem":
        """Return the system with ``v_k -> c_k v_k`` and ``w_k -> d_k w_k``."""
        c = np.asarray(right_scale, dtype=complex)
        d = np.ones(self.order, dtype=complex) if left_scale is None else np.asarray(left_scale, dtype=complex)
        right = self.right * c
        left = self.left * d
        cond = np.einsum("ik,ik->k", left.conj(), right)
        return EigenSystem(self.matrix, self.values, right, left, cond, self.tol, self.cluster_tol)

    def resolution(self) -> np.ndarray:
        """``sum_k v_k w_k^* / s_k``; the identity for a complete system."""
        return (self.right / self.cond) @ self.left.conj().T

    def residuals(self) -> tuple[float, float]:
        """Largest right and left eigen-residual 2-norms over all k."""
        a = self.matrix
        r = np.linalg.norm(a @ self.right - self.right * self.values, axis=0)
        lft = np.linalg.norm(self.left.conj().T @ a - self.values[:, None] * self.left.conj().T, axis=1)
        return float(r.max()), float(lft.max())

    @classmethod
    def from_vectors(cls, a, right, left=None, tol=None, cluster_tol=None) -> "EigenSystem":
        """Build a system from prescribed right (and optionally left) eigenvectors.

        Eigenvalues are recovered as ``w_k^* A v_k / s_k``.  Missing left
        vectors are taken from the inverse of the right-vector matrix.
        """
        m = as_square(a)
        tol, cluster_tol = _default_tols(m, tol, cluster_tol)
        v = as_square(right)
        if v.shape != m.shape:
            raise DimensionError("eigenvector matrix must match the matrix order")
        if left is None:
            try:
                w = np.linalg.inv(v).conj().T
            except np.linalg.LinAlgError as exc:
                raise DefectiveMatrixError("right eigenvectors are linearly dependent") from exc
        else:
            w = as_square(left)
            if w.shape != m.shape:
                raise DimensionError("left eigenvector matrix must match the matrix order")
        cond = np.einsum("ik,ik->k", w.conj(), v)
        if np.any(np.abs(cond) <= tol):
            raise DefectiveMatrixError("some condition product w_k^* v_k vanishes")
        values = np.einsum("ik,ij,jk->k", w.conj(), m, v) / cond
        es = cls(m, values, v, w, cond, tol, cluster_tol)
        _check_system(es)
        return es


def _default_tols(m, tol, cluster_tol):
    scale = max(1.0, float(np.linalg.norm(m, "fro")))
    return (1e-10 * scale if tol is None else tol,
            1e-8 * scale if cluster_tol is None else cluster_tol)


def _check_system(es: EigenSystem) -> None:
    scale = max(1.0, float(np.linalg.norm(es.matrix, "fro")))
    rr, lr = es.residuals()
    # residual tolerance relative to the vector norms so that rescaled
    # systems remain acceptable
    vs = np.linalg.norm(es.right, axis=0).max()
    ws = np.linalg.norm(es.left, axis=0).max()
    if rr > 1e-8 * scale * vs or lr > 1e-8 * scale * ws:
        raise NumericalError(f"eigen-residuals too large (right {rr:.3g}, left {lr:.3g})")
    gram = es.left.conj().T @ es.right
    far = np.abs(es.values[:, None] - es.values[None, :]) > es.cluster_tol
    if far.any() and np.abs(gram[far]).max() > 1e-8 * vs * ws:
        raise NumericalError("left and right eigenvectors are not biorthogonal")


def eigensystem(a, tol: float | None = None, cluster_tol: float | None = None) -> EigenSystem:
    """Eigendecomposition with biorthogonal left eigenvectors.

    Right vectors come from ``numpy.linalg.eig`` and are normalized by
    :func:`normalize_vector`; left vectors are the conjugated rows of the
    inverse of the right-vector matrix, rescaled to unit length, so
    ``|s_k|`` is the reciprocal of the usual eigenvalue condition number.
    Eigenvalues are ordered by real part, then imaginary part.

    Raises :class:`DefectiveMatrixError` when some ``|s_k| <= tol``.
    Defaults: ``tol = 1e-10 * max(1, ||A||_F)``,
    ``cluster_tol = 1e-8 * max(1, ||A||_F)``.
    """
    m = as_square(a)
    tol, cluster_tol = _default_tols(m, tol, cluster_tol)
    try:
        w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    q = max(cluster_tol, np.finfo(float).eps)
    order = np.lexsort((np.round(w.imag / q), np.round(w.real / q)))
    w, v = w[order], v[:, order]
    v = np.column_stack([normalize_vector(v[:, k]) for k in range(v.shape[1])])
    try:
        left = np.linalg.inv(v).conj().T
    except np.linalg.LinAlgError as exc:
        raise DefectiveMatrixError("eigenvector matrix is singular") from exc
    left = left / np.linalg.norm(left, axis=0)
    cond = np.einsum("ik,ik->k", left.conj(), v)
    if not np.all(np.isfinite(cond)) or np.any(np.abs(cond) <= tol):
        raise DefectiveMatrixError(
            f"matrix is numerically defective (min |s_k| = {np.abs(cond).min():.3g})"
        )
    return EigenSystem(m, w, v, left, cond, tol, cluster_tol)
