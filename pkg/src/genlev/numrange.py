"""Numerical-range geometry under the generalized Levinger transformation.

Boundaries are computed by the support-function sweep: for a direction
``theta`` the largest eigenvalue of the Hermitian part of
``exp(-i theta) A`` is the support value ``h(theta)`` and its unit
eigenvector ``x`` gives the boundary point ``x* A x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur
from scipy.optimize import minimize_scalar

from .errors import DimensionError, DomainError, NonNormalError, NumericalError
from .levinger import as_params, map_point, transform
from .matrix import as_square, frobenius_norm, is_normal

__all__ = [
    "BoundaryCurve",
    "CompressionPoints",
    "EllipseSpec",
    "boundary_distance",
    "circumscribed_polygon",
    "compress",
    "compression_isometry",
    "compression_points",
    "convex_hull",
    "in_numerical_range",
    "levinger_boundary",
    "levinger_ellipse",
    "levinger_hausdorff",
    "normal_polygon",
    "nr_boundary",
    "real_intersection",
    "support_function",
]


def _rotated_hermitian(a: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    rot = np.exp(-1j * thetas)[:, None, None] * a[None, :, :]
    return (rot + np.conj(np.swapaxes(rot, 1, 2))) / 2


def support_function(a, thetas) -> np.ndarray:
    """``h(theta) = max Re(exp(-i theta) z)`` over z in NR[A], for each theta."""
    a = as_square(a)
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    h = np.linalg.eigvalsh(_rotated_hermitian(a, th))[:, -1]
    return h if np.ndim(thetas) else float(h[0])


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled boundary of a numerical range, one record per direction."""

    theta: np.ndarray
    support: np.ndarray
    points: np.ndarray

    def __len__(self) -> int:
        return self.theta.shape[0]

    def is_convex(self, slack: float = 1e-9) -> bool:
        """True when all turns between consecutive distinct points share one sign."""
        pts = self.points
        keep = np.abs(np.diff(pts, append=pts[:1])) > slack
        pts = pts[keep]
        if pts.size < 3:
            return True
        e = np.diff(pts, append=pts[:1])
        cross = (np.conj(e) * np.roll(e, -1)).imag
        return bool(np.all(cross >= -slack) or np.all(cross <= slack))


def nr_boundary(a, n_samples: int = 360, thetas=None) -> BoundaryCurve:
    """Sample the boundary of NR[A] at ``theta_j = 2 pi j / n_samples``.

    Explicit `thetas` (strictly increasing) override the uniform grid.
    """
    a = as_square(a)
    if thetas is None:
        if n_samples < 3:
            raise DomainError("need at least 3 samples")
        th = 2 * np.pi * np.arange(n_samples) / n_samples
    else:
        th = np.asarray(thetas, dtype=float)
        if th.ndim != 1 or np.any(np.diff(th) <= 0):
            raise DomainError("thetas must be a strictly increasing 1-D sequence")
    try:
        vals, vecs = np.linalg.eigh(_rotated_hermitian(a, th))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    x = vecs[:, :, -1]
    pts = np.einsum("ti,ij,tj->t", x.conj(), a, x)
    return BoundaryCurve(theta=th, support=vals[:, -1], points=pts)


def in_numerical_range(a, points, n_probe: int = 720, slack: float = 1e-9) -> np.ndarray:
    """Support-function membership test at `n_probe` uniform directions."""
    a = as_square(a)
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    th = 2 * np.pi * np.arange(n_probe) / n_probe
    h = support_function(a, th)
    proj = (np.exp(-1j * th)[None, :] * z[:, None]).real
    return np.all(proj <= h[None, :] + slack, axis=1)


def boundary_distance(points, support, n_grid: int = 720) -> np.ndarray:
    """Distance from each point to the boundary of a compact convex set.

    `support` is the set's support function (vectorized over angles).  For
    any z, ``dist(z, boundary) = |min_phi (h(phi) - Re(exp(-i phi) z))|``;
    the minimum is located on a grid and polished with a bounded scalar
    search.
    """
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    grid = 2 * np.pi * np.arange(n_grid) / n_grid
    hg = support(grid)
    gap = hg[None, :] - (np.exp(-1j * grid)[None, :] * z[:, None]).real
    step = 2 * np.pi / n_grid
    out = np.empty(z.shape[0])
    for j, zj in enumerate(z):
        k = int(np.argmin(gap[j]))

        def g(phi, zj=zj):
            return float(support(np.array([phi]))[0] - (np.exp(-1j * phi) * zj).real)

        res = minimize_scalar(g, bounds=(grid[k] - step, grid[k] + step), method="bounded",
                              options={"xatol": 1e-12})
        out[j] = abs(min(res.fun, gap[j, k]))
    return out


def levinger_boundary(curve: BoundaryCurve, p) -> np.ndarray:
    """Image of sampled boundary points under ``x + iy -> alpha x + i beta y``."""
    return map_point(curve.points, p)


def levinger_hausdorff(a, p, n_samples: int = 720) -> float:
    """Hausdorff bound between the mapped boundary of NR[A] and the boundary of NR[L].

    Each side's samples are measured against the other side's exact convex
    set through its support function, so sampling density does not enter
    the result the way it would for a point-to-point distance.
    """
    p = as_params(p)
    a = as_square(a)
    lmat = transform(a, p)
    mapped = levinger_boundary(nr_boundary(a, n_samples), p)
    d1 = boundary_distance(mapped, lambda th: support_function(lmat, th)).max()
    direct = nr_boundary(lmat, n_samples).points

    # the image set T(NR[A]), T = diag(alpha, beta), has h(phi) = h_A(T^T n_phi)
    def mapped_support(th):
        u = p.alpha * np.cos(th) + 1j * p.beta * np.sin(th)
        r = np.abs(u)
        return r * support_function(a, np.angle(u))

    d2 = boundary_distance(direct, mapped_support).max()
    return float(max(d1, d2))


def real_intersection(a, p) -> tuple[float, float] | None:
    """``NR[L(A, alpha, beta)]`` intersected with the real axis as ``(lo, hi)``, or None.

    A real x lies in a convex set K iff ``x cos(phi) <= h(phi)`` for every
    phi, so ``hi = min h(phi)/cos(phi)`` over ``cos(phi) > 0`` and
    ``lo = max h(phi)/cos(phi)`` over ``cos(phi) < 0``.  The intersection is
    empty when the vertical extent of K misses 0.
    """
    lmat = transform(a, p)
    scale = max(1.0, frobenius_norm(lmat))
    top = support_function(lmat, np.pi / 2)
    bottom = support_function(lmat, -np.pi / 2)
    if top < -1e-12 * scale or bottom < -1e-12 * scale:
        return None

    def ratio(phi, offset):
        return support_function(lmat, phi + offset) / np.cos(phi)

    def extreme(offset):
        grid = np.linspace(-np.pi / 2, np.pi / 2, 2049)[1:-1]
        vals = ratio(grid, offset)
        k = int(np.argmin(vals))
        lo_b = grid[max(k - 1, 0)]
        hi_b = grid[min(k + 1, grid.size - 1)]
        res = minimize_scalar(lambda t: float(ratio(np.array([t]), offset)[0]),
                              bounds=(lo_b, hi_b), method="bounded", options={"xatol": 1e-12})
        return min(float(res.fun), float(vals[k]))

    hi = extreme(0.0)
    lo = -extreme(np.pi)
    if lo > hi:
        if lo - hi <= 1e-9 * scale:
            mid = (lo + hi) / 2
            return (mid, mid)
        return None
    return (lo, hi)


# --------------------------------------------------------------------------
# ellipses
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipseSpec:
    semi_real: float
    semi_imag: float
    foci_on_real_axis: bool


def levinger_ellipse(c: float, k: float, p) -> EllipseSpec:
    """Image of the ellipse ``x^2/c^2 + y^2/k^2 <= 1`` (``c > k > 0``)."""
    p = as_params(p)
    if not c > k > 0:
        raise DomainError(f"need c > k > 0, got c={c}, k={k}")
    if p.alpha == 0 or p.beta <= 0:
        raise DomainError("need alpha != 0 and beta > 0")
    bound = p.beta * k / c
    return EllipseSpec(semi_real=abs(p.alpha) * c, semi_imag=abs(p.beta) * k,
                       foci_on_real_axis=not (-bound <= p.alpha <= bound))


# --------------------------------------------------------------------------
# polygons of normal matrices
# --------------------------------------------------------------------------

def convex_hull(points, tol: float = 1e-12) -> np.ndarray:
    """Vertices of the convex hull of complex points, counterclockwise.

    Points on hull edges are dropped.  Degenerate inputs return one vertex
    (all points coincide) or two (collinear).
    """
    z = np.asarray(points, dtype=complex).ravel()
    scale = max(1.0, float(np.abs(z).max()))
    uniq: list[complex] = []
    for w in sorted(z, key=lambda w: (w.real, w.imag)):
        if not uniq or abs(w - uniq[-1]) > tol * scale:
            uniq.append(w)
    if len(uniq) <= 2:
        return np.array(uniq)

    def cross(o, u, v):
        return ((u - o).conjugate() * (v - o)).imag

    lower: list[complex] = []
    for w in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], w) <= tol * scale * scale:
            lower.pop()
        lower.append(w)
    upper: list[complex] = []
    for w in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], w) <= tol * scale * scale:
            upper.pop()
        upper.append(w)
    return np.array(lower[:-1] + upper[:-1])


def _require_normal(a) -> np.ndarray:
    a = as_square(a)
    if not is_normal(a, 1e-9):
        raise NonNormalError("matrix is not normal")
    return a


def normal_polygon(a) -> np.ndarray:
    """Hull vertices of the spectrum of a normal matrix (NR[A] = Co sigma(A)).

    Ordered counterclockwise by argument about the eigenvalue centroid,
    starting from the smallest argument in (-pi, pi]; ties by modulus.
    """
    a = _require_normal(a)
    lam = np.linalg.eigvals(a)
    hull = convex_hull(lam, tol=1e-9)
    centroid = lam.mean()
    d = hull - centroid
    order = np.lexsort((np.abs(d), np.angle(d)))
    return hull[order]


@dataclass(frozen=True)
class CompressionPoints:
    """Tangency points on each polygon edge, before and after the Levinger map."""

    mu_a: np.ndarray
    mu_l: np.ndarray


def compression_points(lambdas, weights, p) -> CompressionPoints:
    """Edge tangency points for the compression to the complement of ``sum w_t x_t``.

    ``mu_t = (|w_{t+1}|^2 lam_t + |w_t|^2 lam_{t+1}) / (|w_{t+1}|^2 + |w_t|^2)``
    with wraparound at the last vertex.  The formula is homogeneous in
    the weights, so they need not be normalized.
    """
    lam = np.asarray(lambdas, dtype=complex)
    w2 = np.abs(np.asarray(weights, dtype=complex)) ** 2
    if lam.shape != w2.shape:
        raise DimensionError("need one weight per vertex")
    if lam.size < 3:
        raise DomainError("need at least 3 polygon vertices")
    if np.any(w2 == 0):
        raise DomainError("weights must all be nonzero")
    lam_next, w2_next = np.roll(lam, -1), np.roll(w2, -1)
    mu_a = (w2_next * lam + w2 * lam_next) / (w2_next + w2)
    return CompressionPoints(mu_a=mu_a, mu_l=map_point(mu_a, p))


def compression_isometry(a, weights) -> tuple[np.ndarray, np.ndarray]:
    """Isometry P onto the complement of ``v = sum w_t x_t`` inside ``span{x_t}``.

    The x_t are unit eigenvectors of the hull vertices of a normal A, taken
    in :func:`normal_polygon` order.  Returns ``(P, vertices)``.
    """
    a = _require_normal(a)
    verts = normal_polygon(a)
    w = np.asarray(weights, dtype=complex)
    if w.shape != verts.shape:
        raise DimensionError(f"need {verts.size} weights, one per hull vertex")
    t, z = schur(a, output="complex")
    diag = np.diag(t)
    cols = []
    for lam in verts:
        j = int(np.argmin(np.abs(diag - lam)))
        cols.append(z[:, j])
    x = np.column_stack(cols)
    v = x @ w
    nv = np.linalg.norm(v)
    if nv == 0:
        raise DomainError("weights give the zero vector")
    v = v / nv
    basis: list[np.ndarray] = []
    for col in x.T:
        u = col - (v.conj() @ col) * v
        for b in basis:
            u = u - (b.conj() @ u) * b
        nu = np.linalg.norm(u)
        if nu > 1e-12:
            basis.append(u / nu)
    if len(basis) != verts.size - 1:
        raise DomainError("weights are dependent; complement has the wrong dimension")
    return np.column_stack(basis), verts


def compress(a, weights) -> np.ndarray:
    """``P* A P`` for the isometry of :func:`compression_isometry`."""
    p_mat, _ = compression_isometry(a, weights)
    a = as_square(a)
    return p_mat.conj().T @ a @ p_mat


def circumscribed_polygon(a, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Polygon cut out by supporting lines of NR[A] at the given directions.

    Returns ``(vertices, contacts)``: vertex j is the intersection of the
    supporting lines at ``thetas[j]`` and ``thetas[j+1]`` (cyclically), and
    contact j is the boundary point of NR[A] on line j.  Consecutive
    directions must differ by less than pi.
    """
    th = np.asarray(thetas, dtype=float)
    curve = nr_boundary(a, thetas=th)
    h = curve.support
    th_next, h_next = np.roll(th, -1), np.roll(h, -1)
    det = np.sin(th_next - th)
    if np.any(np.abs(det) < 1e-12):
        raise DomainError("consecutive supporting lines are parallel")
    x = (h * np.sin(th_next) - h_next * np.sin(th)) / det
    y = (h_next * np.cos(th) - h * np.cos(th_next)) / det
    return x + 1j * y, curve.points
