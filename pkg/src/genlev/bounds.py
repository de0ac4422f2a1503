"""Frobenius-norm enclosures for the spectrum of ``L(A, alpha, beta)``, A real.

With ``C = S_A H_A - H_A S_A`` and ``F = alpha^2 ||H_A||^2 + beta^2 ||S_A||^2``
every eigenvalue lam of L satisfies::

    |Re lam - alpha tr(H_A)/n| <= |alpha| sqrt((n-1)/n (||H_A||^2
                                  - beta^2 ||C||^2 / (3F) - tr(H_A)^2/n))
    |Im lam|                   <= |beta| sqrt((n-1)/n (||S_A||^2
                                  - alpha^2 ||C||^2 / (3F)))
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NegativeRadicandError
from .levinger import as_params, transform
from .matrix import as_square, cartesian_split

__all__ = ["EigenBounds", "TraceIdentities", "eigen_bounds", "identity_residuals", "trace_identities"]


@dataclass(frozen=True)
class EigenBounds:
    n: int
    re_center: float
    re_radius: float
    im_radius: float
    h_norm: float
    s_norm: float
    commutator_norm: float
    trace_h: float

    def contains(self, eigenvalues, slack: float = 0.0) -> bool:
        lam = np.asarray(eigenvalues, dtype=complex)
        return bool(np.all(np.abs(lam.real - self.re_center) <= self.re_radius + slack)
                    and np.all(np.abs(lam.imag) <= self.im_radius + slack))


@dataclass(frozen=True)
class TraceIdentities:
    levinger_fnorm_sq: float
    trace_L_squared: float
    nu: float


def _real_square(a) -> np.ndarray:
    m = as_square(a)
    if np.any(m.imag != 0):
        raise DomainError("the eigenvalue bounds are stated for real matrices only")
    return m.real


def _sqrt_clamped(x: float, scale: float, what: str) -> float:
    if x < 0:
        if x < -1e-12 * max(1.0, scale):
            raise NegativeRadicandError(f"{what} radicand is negative ({x:.3g})")
        return 0.0
    return float(np.sqrt(x))


def eigen_bounds(a, p) -> EigenBounds:
    p = as_params(p)
    if p.alpha == 0 and p.beta == 0:
        raise DomainError("(alpha, beta) must not both vanish")
    m = _real_square(a)
    n = m.shape[0]
    parts = cartesian_split(m)
    h, s = parts.h_part.real, parts.s_part.real
    hn2 = float(np.sum(h * h))
    sn2 = float(np.sum(s * s))
    cn2 = float(np.sum((s @ h - h @ s) ** 2))
    tr = float(np.trace(h))
    fsq = p.alpha ** 2 * hn2 + p.beta ** 2 * sn2
    # C vanishes whenever F does, so the quotient is taken as 0 there
    q = cn2 / (3 * fsq) if fsq > 0 else 0.0
    frac = (n - 1) / n
    re_rad = abs(p.alpha) * _sqrt_clamped(frac * (hn2 - p.beta ** 2 * q - tr * tr / n), hn2, "real-part")
    im_rad = abs(p.beta) * _sqrt_clamped(frac * (sn2 - p.alpha ** 2 * q), sn2, "imaginary-part")
    return EigenBounds(n=n, re_center=p.alpha * tr / n, re_radius=re_rad, im_radius=im_rad,
                       h_norm=float(np.sqrt(hn2)), s_norm=float(np.sqrt(sn2)),
                       commutator_norm=float(np.sqrt(cn2)), trace_h=tr)


def trace_identities(a, p) -> TraceIdentities:
    """Direct evaluation of ``||L||_F^2``, ``tr(L^2)`` and ``||L L^T - L^T L||_F``."""
    m = _real_square(a)
    lmat = transform(m, p).real
    return TraceIdentities(
        levinger_fnorm_sq=float(np.sum(lmat * lmat)),
        trace_L_squared=float(np.trace(lmat @ lmat)),
        nu=float(np.linalg.norm(lmat @ lmat.T - lmat.T @ lmat, "fro")),
    )


def identity_residuals(a, p) -> dict[str, float]:
    """Relative residuals of the closed forms against :func:`trace_identities`."""
    p = as_params(p)
    m = _real_square(a)
    ti = trace_identities(m, p)
    parts = cartesian_split(m)
    h, s = parts.h_part.real, parts.s_part.real
    hn2, sn2 = float(np.sum(h * h)), float(np.sum(s * s))
    cn = float(np.linalg.norm(s @ h - h @ s, "fro"))
    a2, b2 = p.alpha ** 2, p.beta ** 2
    scale = max(1.0, a2 * hn2 + b2 * sn2)

    def rel(lhs, rhs):
        return abs(lhs - rhs) / scale

    return {
        "fnorm_sq": rel(ti.levinger_fnorm_sq, a2 * hn2 + b2 * sn2),
        "trace_sq": rel(ti.trace_L_squared, a2 * hn2 - b2 * sn2),
        "nu": rel(ti.nu, 2 * abs(p.alpha * p.beta) * cn),
        "sum": rel(ti.levinger_fnorm_sq + ti.trace_L_squared, 2 * a2 * hn2),
        "difference": rel(ti.levinger_fnorm_sq - ti.trace_L_squared, 2 * b2 * sn2),
    }
