"""Eigenpair approximations for ``M = A + L(E, alpha, beta)``.

All sums "over k != i" run over the indices outside the eigenvalue cluster
of ``lam_i``.  Approximate eigenvectors carry the scale of the input
eigenvector ``v_i`` (the expansions keep ``w_i^* v(alpha, beta) = s_i``);
use :func:`genlev.matrix.normalize_vector` for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConditionNotMetError, DefectiveMatrixError, DimensionError, NonNormalError
from .geninv import spectral_geninv
from .levinger import as_params, transform
from .matrix import EigenSystem, as_square, cartesian_split, is_normal, normalize_vector

__all__ = [
    "EigenDerivatives",
    "KernelCondition",
    "PerturbationApprox",
    "derivatives",
    "exact_eigenpairs",
    "first_order",
    "kernel_condition",
    "match_eigenvalues",
    "normal_simplified",
    "perturbed_matrix",
    "residual_prediction",
    "second_order_geninv",
    "second_order_sum",
]


@dataclass(frozen=True)
class PerturbationApprox:
    order: int
    lambda_approx: complex
    vector_approx: np.ndarray
    residual_norm: float
    form: str
    flags: frozenset = field(default_factory=frozenset)

    @property
    def unit_vector(self) -> np.ndarray:
        return normalize_vector(self.vector_approx)


@dataclass(frozen=True)
class EigenDerivatives:
    """First and second partials of ``lam(alpha, beta)``, ``v(alpha, beta)`` at the origin."""

    d_lambda_d_alpha: complex
    d_lambda_d_beta: complex
    d_v_d_alpha: np.ndarray
    d_v_d_beta: np.ndarray
    d2_lambda_aa: complex
    d2_lambda_bb: complex
    d2_lambda_ab: complex
    d2_v_aa: np.ndarray
    d2_v_bb: np.ndarray
    d2_v_ab: np.ndarray


def perturbed_matrix(a, e, p) -> np.ndarray:
    a = as_square(a)
    e = as_square(e)
    if a.shape != e.shape:
        raise DimensionError("A and E must have the same order")
    return a + transform(e, p)


def _check_index(es: EigenSystem, i: int, e) -> np.ndarray:
    if not 0 <= i < es.order:
        raise IndexError(f"eigen-index {i} out of range for order {es.order}")
    if abs(es.cond[i]) <= es.tol:
        raise DefectiveMatrixError(f"s_{i} = w_i^* v_i vanishes")
    e = as_square(e)
    if e.shape != es.matrix.shape:
        raise DimensionError("E must have the same order as A")
    return e


def _flags(es: EigenSystem, i: int) -> frozenset:
    return frozenset() if es.is_simple(i) else frozenset({"semisimple-cluster"})


def _coupling(es: EigenSystem, x: np.ndarray) -> np.ndarray:
    """Matrix of ``w_j^* X v_k``."""
    return es.left.conj().T @ x @ es.right


def _residual(es: EigenSystem, lmat, lam, v) -> float:
    m = es.matrix + lmat
    return float(np.linalg.norm(m @ v - lam * v))


def derivatives(es: EigenSystem, i: int, e) -> EigenDerivatives:
    e = _check_index(es, i, e)
    parts = cartesian_split(e)
    lam, s = es.values, es.cond
    out = es.outside(i)
    gap = np.where(out, lam[i] - lam, 1.0)
    # r_j = 1 / ((lam_i - lam_j) s_j) outside the cluster, 0 inside
    r = np.where(out, 1.0 / (gap * s), 0.0)

    def first(x):
        g = _coupling(es, x)
        dl = g[i, i] / s[i]
        a = r * g[:, i]
        return g, dl, a

    gh, dlh, ah = first(parts.h_part)
    gs, dls, as_ = first(parts.s_part)
    v = es.right
    inv_gap = np.where(out, 1.0 / gap, 0.0)

    def second_v(gx, ay, gy, ax, dlx, dly):
        coeff = r * (gx @ ay + gy @ ax) - (dlx * ay + dly * ax) * inv_gap
        return v @ coeff

    return EigenDerivatives(
        d_lambda_d_alpha=complex(dlh),
        d_lambda_d_beta=complex(dls),
        d_v_d_alpha=v @ ah,
        d_v_d_beta=v @ as_,
        d2_lambda_aa=complex(2 * (gh[i] @ ah) / s[i]),
        d2_lambda_bb=complex(2 * (gs[i] @ as_) / s[i]),
        d2_lambda_ab=complex((gh[i] @ as_ + gs[i] @ ah) / s[i]),
        d2_v_aa=second_v(gh, ah, gh, ah, dlh, dlh),
        d2_v_bb=second_v(gs, as_, gs, as_, dls, dls),
        d2_v_ab=second_v(gh, as_, gs, ah, dlh, dls),
    )


def first_order(es: EigenSystem, i: int, e, p) -> PerturbationApprox:
    """``lam_i + w_i^* L v_i / s_i`` and ``v_i - (A - lam_i I)^+ L v_i``."""
    e = _check_index(es, i, e)
    lmat = transform(e, p)
    v, w, s = es.right[:, i], es.left[:, i], es.cond[i]
    lv = lmat @ v
    lam = es.values[i] + (w.conj() @ lv) / s
    x1 = spectral_geninv(es, es.values[i], 1).matrix
    vec = v - x1 @ lv
    return PerturbationApprox(order=1, lambda_approx=complex(lam), vector_approx=vec,
                              residual_norm=_residual(es, lmat, lam, vec), form="geninv",
                              flags=_flags(es, i))


def second_order_sum(es: EigenSystem, i: int, e, p) -> PerturbationApprox:
    """Second-order pair written as explicit eigen-sums (j = k terms included)."""
    e = _check_index(es, i, e)
    lmat = transform(e, p)
    lam, s = es.values, es.cond
    g = _coupling(es, lmat)
    others = np.flatnonzero(es.outside(i))
    li, si = lam[i], s[i]

    lam_t = li + g[i, i] / si
    for k in others:
        lam_t += g[i, k] * g[k, i] / ((li - lam[k]) * si * s[k])

    vec = es.right[:, i].copy()
    for k in others:
        vec = vec + es.right[:, k] * g[k, i] / ((li - lam[k]) * s[k])
    for j in others:
        acc = 0j
        for k in others:
            acc += g[j, k] * g[k, i] / ((li - lam[k]) * (li - lam[j]) * s[k] * s[j])
        acc -= g[j, i] * g[i, i] / ((li - lam[j]) ** 2 * si * s[j])
        vec = vec + acc * es.right[:, j]
    return PerturbationApprox(order=2, lambda_approx=complex(lam_t), vector_approx=vec,
                              residual_norm=_residual(es, lmat, lam_t, vec), form="sum",
                              flags=_flags(es, i))


def second_order_geninv(es: EigenSystem, i: int, e, p) -> PerturbationApprox:
    """Second-order pair through ``(A - lam_i I)^+`` and ``[(A - lam_i I)^2]^+``."""
    e = _check_index(es, i, e)
    lmat = transform(e, p)
    v, w, s = es.right[:, i], es.left[:, i], es.cond[i]
    x1 = spectral_geninv(es, es.values[i], 1).matrix
    x2 = spectral_geninv(es, es.values[i], 2).matrix
    lv = lmat @ v
    shift = (w.conj() @ lv) / s
    lam = es.values[i] + shift - (w.conj() @ lmat @ x1 @ lv) / s
    x1lv = x1 @ lv
    vec = v - x1lv + x1 @ (lmat @ x1lv) - (x2 @ lv) * shift
    return PerturbationApprox(order=2, lambda_approx=complex(lam), vector_approx=vec,
                              residual_norm=_residual(es, lmat, lam, vec), form="geninv",
                              flags=_flags(es, i))


def residual_prediction(es: EigenSystem, i: int, e, p) -> tuple[float, float]:
    """Actual first-order residual norm and the closed-form prediction.

    The prediction is ``||[(w_i^* L v_i / s_i) I - L] (A - lam_i I)^+ L v_i||``.
    For a simple eigenvalue it coincides with the actual residual up to
    rounding; within a semisimple cluster they generally differ at first order.
    """
    approx = first_order(es, i, e, p)
    lmat = transform(as_square(e), p)
    v, w, s = es.right[:, i], es.left[:, i], es.cond[i]
    lv = lmat @ v
    c = (w.conj() @ lv) / s
    x1 = spectral_geninv(es, es.values[i], 1).matrix
    y = x1 @ lv
    predicted = float(np.linalg.norm(c * y - lmat @ y))
    return approx.residual_norm, predicted


@dataclass(frozen=True)
class KernelCondition:
    """Whether ``L v_i`` lies in the kernel of ``(A - lam_i I)^+``."""

    in_kernel: bool
    norm: float
    conjugate_condition: bool | None = None

    def __bool__(self) -> bool:
        return self.in_kernel


def kernel_condition(es: EigenSystem, i: int, e, p) -> KernelCondition:
    """Kernel membership test; for normal A also checks ``L v_i = conj(v_i)``.

    Threshold ``1e-9 ||L||_F ||v_i||`` for both.
    """
    e = _check_index(es, i, e)
    lmat = transform(e, p)
    v = es.right[:, i]
    lv = lmat @ v
    x1 = spectral_geninv(es, es.values[i], 1).matrix
    nrm = float(np.linalg.norm(x1 @ lv))
    thresh = 1e-9 * float(np.linalg.norm(lmat, "fro")) * float(np.linalg.norm(v))
    conj = None
    if is_normal(es.matrix):
        conj = bool(np.linalg.norm(lv - v.conj()) <= thresh)
    return KernelCondition(in_kernel=nrm <= thresh, norm=nrm, conjugate_condition=conj)


def normal_simplified(es: EigenSystem, i: int, e, p) -> PerturbationApprox:
    """Shortcut pair ``(lam_i + w_i^* conj(v_i) / s_i, v_i)`` when ``L v_i = conj(v_i)``.

    For normal A, w_i is parallel to v_i, so the shift equals
    ``v_i^* conj(v_i) / (v_i^* v_i)``: exactly 1 for a real eigenvector,
    of modulus below 1 otherwise (flagged ``non-real-eigenvector``).
    """
    e = _check_index(es, i, e)
    if not is_normal(es.matrix):
        raise NonNormalError("the shortcut needs a normal A")
    lmat = transform(e, p)
    v, w, s = es.right[:, i], es.left[:, i], es.cond[i]
    scale = max(1.0, float(np.linalg.norm(lmat, "fro")))
    if np.linalg.norm(lmat @ v - v.conj()) > 1e-9 * scale * np.linalg.norm(v):
        raise ConditionNotMetError("L(E, alpha, beta) v_i != conj(v_i)")
    shift = (w.conj() @ v.conj()) / s
    flags = set(_flags(es, i))
    if abs(shift - 1) > 1e-12:
        flags.add("non-real-eigenvector")
    lam = es.values[i] + shift
    vec = v.copy()
    return PerturbationApprox(order=1, lambda_approx=complex(lam), vector_approx=vec,
                              residual_norm=_residual(es, lmat, lam, vec), form="normal-simplified",
                              flags=frozenset(flags))


def exact_eigenpairs(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and normalized eigenvectors of M from the dense solver."""
    m = as_square(m)
    w, v = np.linalg.eig(m)
    v = np.column_stack([normalize_vector(v[:, k]) for k in range(v.shape[1])])
    return w, v


def match_eigenvalues(approx: complex, values, vectors=None, approx_vector=None) -> int:
    """Index of the exact eigenvalue nearest `approx`.

    Near-ties (within 1e-12 relative) go to the eigenvector with the
    largest overlap ``|<u, v>|`` with `approx_vector`, when given.
    """
    values = np.asarray(values, dtype=complex)
    d = np.abs(values - approx)
    best = float(d.min())
    tied = np.flatnonzero(d <= best + 1e-12 * max(1.0, abs(approx)))
    if tied.size == 1 or vectors is None or approx_vector is None:
        return int(tied[0])
    u = normalize_vector(approx_vector)
    vecs = np.asarray(vectors, dtype=complex)
    overlap = [abs(vecs[:, k].conj() @ u) / np.linalg.norm(vecs[:, k]) for k in tied]
    return int(tied[int(np.argmax(overlap))])
