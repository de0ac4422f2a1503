import numpy as np
import pytest

from conftest import INTRO_A, random_complex, random_unitary
from genlev import DomainError, NonNormalError, transform
from genlev.levinger import map_point
from genlev.numrange import (
    boundary_distance,
    circumscribed_polygon,
    compress,
    compression_isometry,
    compression_points,
    convex_hull,
    in_numerical_range,
    levinger_boundary,
    levinger_ellipse,
    levinger_hausdorff,
    normal_polygon,
    nr_boundary,
    real_intersection,
    support_function,
)

DIAG_TRI = np.diag([0, 1, 1j])


def inside(a, pts, slack=1e-9):
    return bool(np.all(in_numerical_range(a, pts, n_probe=720, slack=slack)))


def test_segment_boundary():
    curve = nr_boundary(np.diag([0.0, 1.0]), 360)
    assert curve.support[0] == pytest.approx(1.0)
    assert curve.points[0] == pytest.approx(1.0)
    np.testing.assert_allclose(curve.support, np.maximum(np.cos(curve.theta), 0), atol=1e-14)
    assert np.all(np.abs(curve.points.imag) < 1e-14)
    assert np.all((curve.points.real > -1e-14) & (curve.points.real < 1 + 1e-14))


def test_nilpotent_disk(rng):
    a = np.array([[0, 2], [0, 0]])
    curve = nr_boundary(a, 720)
    np.testing.assert_allclose(curve.support, 1, atol=1e-13)
    np.testing.assert_allclose(np.abs(curve.points), 1, atol=1e-13)
    # the definition: random unit vectors never leave the unit disk
    x = random_complex(rng, 2, 2000)
    x /= np.linalg.norm(x, axis=0)
    q = np.einsum("it,ij,jt->t", x.conj(), a, x)
    assert np.abs(q).max() <= 1 + 1e-12


def test_boundary_invariants(rng):
    for _ in range(20):
        n = int(rng.integers(2, 7))
        a = random_complex(rng, n)
        curve = nr_boundary(a, 360)
        assert len(curve) == 360
        assert np.all(np.diff(curve.theta) > 0)
        assert 0 <= curve.theta[0] and curve.theta[-1] < 2 * np.pi
        assert curve.is_convex(1e-9)
        proj = (np.exp(-1j * curve.theta)[None, :] * curve.points[:, None]).real
        assert np.all(proj <= curve.support[None, :] + 1e-9)
        np.testing.assert_allclose((np.exp(-1j * curve.theta) * curve.points).real, curve.support,
                                   atol=1e-12 * np.linalg.norm(a))


def test_spectrum_inside(rng):
    for _ in range(20):
        a = random_complex(rng, 5)
        assert inside(a, np.linalg.eigvals(a))


def test_explicit_thetas_validation():
    with pytest.raises(DomainError):
        nr_boundary(np.eye(2), thetas=[0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        nr_boundary(np.eye(2), 2)


def test_levinger_boundary_identity(rng):
    a = random_complex(rng, 4)
    curve = nr_boundary(a, 90)
    np.testing.assert_array_equal(levinger_boundary(curve, (1, 1)), curve.points)


def test_hausdorff_small_case():
    h = levinger_hausdorff(INTRO_A, (0.4, 0.8), 720)
    assert h <= 1e-6 * np.linalg.norm(INTRO_A)


def test_hausdorff_random(rng):
    for _ in range(5):
        a = random_complex(rng, 4)
        p = tuple(rng.uniform(-2, 2, 2))
        assert levinger_hausdorff(a, p, 720) <= 1e-6 * np.linalg.norm(a)


def test_boundary_distance_of_disk():
    z = np.array([0, 0.5, 1j, 2 + 0j])
    d = boundary_distance(z, lambda th: np.ones_like(th))
    np.testing.assert_allclose(d, [1, 0.5, 0, 1], atol=1e-9)


def test_vertical_dilation_nesting():
    inner = nr_boundary(transform(INTRO_A, (0.4, 0.5)), 720).points
    assert inside(transform(INTRO_A, (0.4, 1.2)), inner)


def test_dilation_nesting_random_real(rng):
    # nesting rests on NR[A] being symmetric about the real axis, i.e. A real
    for _ in range(20):
        a = rng.standard_normal((int(rng.integers(2, 7)),) * 2)
        al = rng.uniform(-2, 2)
        b1, b2 = np.sort(rng.uniform(0.05, 2, 2))
        inner = nr_boundary(transform(a, (al, b1)), 720).points
        assert inside(transform(a, (al, b2)), inner)


def test_dilation_nesting_needs_symmetry():
    # a complex A whose range sits above the real axis: shrinking beta moves it down and out
    a = np.diag([1j, 1 + 2j, 2 + 1j])
    inner = nr_boundary(transform(a, (1, 0.5)), 360).points
    assert not inside(transform(a, (1, 1)), inner)


def test_projection_containment(rng):
    for _ in range(30):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, n))
        a = random_complex(rng, n)
        q, _ = np.linalg.qr(random_complex(rng, n, m))
        pts = nr_boundary(q.conj().T @ a @ q, 180).points
        assert inside(a, pts)


def test_real_intersection_hermitian(rng):
    x = random_complex(rng, 4)
    h = x + x.conj().T
    w = np.linalg.eigvalsh(h)
    lo, hi = real_intersection(h, (1, 1))
    assert lo == pytest.approx(w[0], abs=1e-8)
    assert hi == pytest.approx(w[-1], abs=1e-8)


def test_real_intersection_empty():
    assert real_intersection(np.diag([1j, 1j]), (1, 1)) is None
    assert real_intersection(np.diag([1 + 1j, 2 + 1j]), (1, 0.5)) is None


def test_real_intersection_equals_scaled_matrix():
    got = real_intersection(INTRO_A, (1.3, 0.6))
    ref = real_intersection(1.3 * INTRO_A, (1, 1))
    np.testing.assert_allclose(got, ref, atol=1e-6)


def test_real_intersection_dense_sampling_oracle():
    # oracle: boundary crossings of the real axis by a dense polygon
    pts = nr_boundary(1.3 * INTRO_A, 20000).points
    nxt = np.roll(pts, -1)
    flip = np.flatnonzero(np.sign(pts.imag) != np.sign(nxt.imag))
    t = pts.imag[flip] / (pts.imag[flip] - nxt.imag[flip])
    xs = pts.real[flip] + t * (nxt.real[flip] - pts.real[flip])
    lo, hi = real_intersection(INTRO_A, (1.3, 0.6))
    assert lo == pytest.approx(xs.min(), abs=1e-5)
    assert hi == pytest.approx(xs.max(), abs=1e-5)


def test_real_intersection_random(rng):
    for _ in range(10):
        a = random_complex(rng, 3)
        al, be = rng.uniform(0.2, 2), rng.uniform(0.2, 2) * rng.choice([-1, 1])
        got = real_intersection(a, (al, be))
        ref = real_intersection(al * a, (1, 1))
        assert (got is None) == (ref is None)
        if got is not None:
            np.testing.assert_allclose(got, ref, atol=1e-6)


def test_ellipse_spec():
    e = levinger_ellipse(2, 1, (1, 1))
    assert (e.semi_real, e.semi_imag, e.foci_on_real_axis) == (2, 1, True)
    assert levinger_ellipse(2, 1, (0.4, 1)).foci_on_real_axis is False
    assert levinger_ellipse(2, 1, (-0.6, 1)).foci_on_real_axis is True
    for c, k, p in [(1, 2, (1, 1)), (2, 1, (0, 1)), (2, 1, (1, 0)), (2, 1, (1, -1))]:
        with pytest.raises(DomainError):
            levinger_ellipse(c, k, p)


def test_ellipse_matches_boundary():
    # NR of [[a, b], [0, a]] is the disk; [[c0, g], [0, -c0]] gives an ellipse centred 0
    c0, g = 1.0, 1.5
    a = np.array([[c0, g], [0, -c0]])
    c = np.sqrt(c0 ** 2 + g ** 2 / 4)
    k = g / 2
    for p in [(1, 1), (0.4, 1.3), (2.0, 0.5)]:
        spec = levinger_ellipse(c, k, p)
        pts = nr_boundary(transform(a, p), 2880).points
        assert np.abs(pts.real).max() == pytest.approx(spec.semi_real, abs=1e-6)
        assert np.abs(pts.imag).max() == pytest.approx(spec.semi_imag, abs=1e-6)


def test_convex_hull():
    pts = [0, 1, 1j, 0.2 + 0.2j, 0.5, 1 + 1j]
    hull = convex_hull(pts)
    assert sorted(hull, key=lambda z: (z.real, z.imag)) == [0, 1j, 1, 1 + 1j]
    assert convex_hull([1, 1, 1]).size == 1
    assert convex_hull([0, 1, 2]).size == 2


def test_normal_polygon():
    np.testing.assert_allclose(sorted(normal_polygon(DIAG_TRI), key=np.angle), [0, 1, 1j], atol=1e-12)
    verts = normal_polygon(np.diag([0, 1, 0.5 + 0.1j]))
    assert verts.size == 3
    mapped = normal_polygon(transform(np.diag([1 + 1j, -1 + 1j, -1j]), (2, 3)))
    np.testing.assert_allclose(sorted(mapped, key=lambda z: (z.real, z.imag)),
                               [-2 + 3j, -3j, 2 + 3j], atol=1e-12)
    with pytest.raises(NonNormalError):
        normal_polygon([[0, 1], [0, 0]])


def test_normal_polygon_ccw_and_interior_dropped(rng):
    u = random_unitary(rng, 6)
    lam = np.array([3, 3j, -3, -3j, 0.1, 0.2j])
    verts = normal_polygon(u @ np.diag(lam) @ u.conj().T)
    assert verts.size == 4
    e = np.roll(verts, -1) - verts
    assert np.all((np.conj(e) * np.roll(e, -1)).imag > 0)


def test_mapped_vertices():
    verts = map_point(np.array([1 + 1j, -1 + 1j, -1j]), (2, 3))
    np.testing.assert_allclose(verts, [2 + 3j, -2 + 3j, -3j])


def test_compression_points_formula():
    lam = np.array([0, 1, 1j])
    cp = compression_points(lam, np.ones(3) / np.sqrt(3), (1, 1))
    np.testing.assert_allclose(cp.mu_a, [0.5, 0.5 + 0.5j, 0.5j])
    cp = compression_points(lam, np.sqrt([0.5, 0.25, 0.25]), (2, 3))
    assert cp.mu_a[0] == pytest.approx(2 / 3)
    np.testing.assert_allclose(cp.mu_l, map_point(cp.mu_a, (2, 3)))
    assert map_point(0.5 + 0.5j, (2, 3)) == 1 + 1.5j
    with pytest.raises(DomainError):
        compression_points(lam, [1, 0, 1], (1, 1))
    with pytest.raises(DomainError):
        compression_points(lam[:2], [1, 1], (1, 1))


def test_compression_points_on_edges(rng):
    for _ in range(50):
        lam = random_complex(rng, 1, 5).ravel()
        w = random_complex(rng, 1, 5).ravel()
        mu = compression_points(lam, w, (1, 1)).mu_a
        nxt = np.roll(lam, -1)
        t = ((mu - lam) / (nxt - lam))
        assert np.all(np.abs(t.imag) < 1e-12)
        assert np.all((t.real >= -1e-12) & (t.real <= 1 + 1e-12))


def test_compress_two_by_two():
    a = np.diag([0.0, 2.0])
    c = compress(a, np.array([1, 1]) / np.sqrt(2))
    assert c.shape == (1, 1)
    assert c[0, 0] == pytest.approx(1.0)


def test_compression_isometry_orthonormal(rng):
    u = random_unitary(rng, 4)
    a = u @ np.diag([2, 2j, -2, -2j]) @ u.conj().T
    w = random_complex(rng, 1, 4).ravel()
    w /= np.linalg.norm(w)
    p_mat, verts = compression_isometry(a, w)
    assert p_mat.shape == (4, 3)
    np.testing.assert_allclose(p_mat.conj().T @ p_mat, np.eye(3), atol=1e-12)
    with pytest.raises(DimensionError_or_domain()):
        compression_isometry(a, w[:3])


def DimensionError_or_domain():
    from genlev import DimensionError
    return (DimensionError, DomainError)


def _tangency_residuals(a, weights, p):
    p_mat, verts = compression_isometry(a, weights)
    lc = p_mat.conj().T @ transform(a, p) @ p_mat
    lv = map_point(verts, p)
    mu_l = compression_points(verts, weights, p).mu_l
    out = []
    for t in range(verts.size):
        edge = lv[(t + 1) % verts.size] - lv[t]
        phi = np.angle(-1j * edge * np.sign(p[0] * p[1]))
        h_comp = support_function(lc, phi)
        h_poly = (np.exp(-1j * phi) * lv[t]).real
        contact = nr_boundary(lc, thetas=[phi]).points[0]
        out.append((abs(h_comp - h_poly), abs(contact - mu_l[t])))
    return np.array(out)


@pytest.mark.parametrize("p", [(1, 1), (2, 3)])
def test_tangency_diag_triangle(p):
    res = _tangency_residuals(DIAG_TRI, np.ones(3) / np.sqrt(3), p)
    assert res.max() <= 1e-8


def test_tangency_random_weights(rng):
    for _ in range(10):
        w = random_complex(rng, 1, 3).ravel()
        w /= np.linalg.norm(w)
        p = (rng.uniform(0.2, 2), rng.uniform(0.2, 2))
        assert _tangency_residuals(DIAG_TRI, w, p).max() <= 1e-8


def test_compressed_range_inside_polygon(rng):
    w = np.ones(3) / np.sqrt(3)
    c = compress(DIAG_TRI, w)
    for p in [(1, 1), (2, 3)]:
        lc = transform(c, p)
        assert inside(transform(DIAG_TRI, p), nr_boundary(lc, 360).points)
        np.testing.assert_allclose(lc, compress(transform(DIAG_TRI, p), w), atol=1e-14)


def test_circumscription_preserved(rng):
    for _ in range(10):
        a = random_complex(rng, 4)
        thetas = np.sort(rng.uniform(0, 2 * np.pi, 7))
        gaps = np.diff(np.append(thetas, thetas[0] + 2 * np.pi))
        if gaps.max() >= 0.9 * np.pi:
            continue
        verts, contacts = circumscribed_polygon(a, thetas)
        b = np.diag(verts)
        assert inside(b, nr_boundary(a, 360).points)
        p = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        lb = transform(b, p)
        la = transform(a, p)
        assert inside(lb, nr_boundary(la, 360).points, slack=1e-8)
        # images of the common boundary points still touch both boundaries
        mc = map_point(contacts, p)
        d_a = boundary_distance(mc, lambda th: support_function(la, th))
        d_b = _polygon_boundary_distance(mc, map_point(verts, p))
        assert d_a.max() <= 1e-8 and d_b.max() <= 1e-8


def _polygon_boundary_distance(z, verts):
    a, b = verts[None, :], np.roll(verts, -1)[None, :]
    z = z[:, None]
    t = np.clip(((z - a) * np.conj(b - a)).real / np.abs(b - a) ** 2, 0, 1)
    return np.abs(z - (a + t * (b - a))).min(axis=1)


def test_normal_eigenvalue_remark(rng):
    for _ in range(20):
        m = int(rng.integers(1, 3))
        k = int(rng.integers(1, 4))
        lam = complex(*rng.uniform(-2, 2, 2))
        bmat = random_complex(rng, k) + 5
        a = np.zeros((m + k, m + k), dtype=complex)
        a[:m, :m] = lam * np.eye(m)
        a[m:, m:] = bmat
        u = random_unitary(rng, m + k)
        a = u @ a @ u.conj().T
        p = tuple(rng.uniform(-2, 2, 2))
        ev = np.linalg.eigvals(transform(a, p))
        target = map_point(lam, p)
        assert int(np.sum(np.abs(ev - target) <= 1e-9 * max(1, np.linalg.norm(a)))) >= m
