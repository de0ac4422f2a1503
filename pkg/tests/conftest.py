from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"

EX1_A = np.array([[1, 0, 1], [0, 2, 0], [0, 0, 2]], dtype=float)
EX1_E = np.array([[1, 0, 1], [0, 1, 0], [-1, 0, 0]], dtype=float)
EX1_RIGHT = np.array([[1, 1, 0], [0, 0, 1], [0, 1, 0]], dtype=float)
EX1_LEFT = np.array([[1, 0, 0], [0, 0, 1], [-1, 1, 0]], dtype=float)
EX1_P = (0.1, 0.01)

EX2_A = np.array([[2, -2, 0], [-2, 6, -1], [0, -1, 2]], dtype=float)
EX2_E = np.array([[21, 3, -4], [1, 1, 0], [-8, 0, 20]], dtype=float)
EX2_RIGHT = np.array([[1, 2, 2], [0, 1, -5], [-2, 1, 1]], dtype=float)
EX2_P = (0.04, 0.08)

INTRO_A = np.array([[1, 3, 4], [2, 7, -6], [-1, 3, 5]], dtype=float)


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_diagonalizable(rng, n, real=False, min_gap=0.3):
    """V D V^-1 with well-separated eigenvalues and a moderately conditioned V."""
    while True:
        if real:
            d = np.sort(rng.uniform(-3, 3, n))
        else:
            d = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
        gaps = np.abs(d[:, None] - d[None, :]) + np.eye(n) * 1e9
        if gaps.min() > min_gap:
            break
    v = np.eye(n) + 0.4 * (rng.standard_normal((n, n)) if real else random_complex(rng, n) / np.sqrt(2))
    return v @ np.diag(d) @ np.linalg.inv(v)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_real_normal(rng, n, symmetric=False):
    """Q (real block diagonal) Q^T.

    Unless `symmetric`, the leading block is a 2x2 rotation-scaling block,
    so the result is normal but not symmetric (n >= 2).
    """
    blocks = np.zeros((n, n))
    k = 0
    while k < n:
        if symmetric or k == n - 1 or (k > 0 and rng.random() < 0.3):
            blocks[k, k] = rng.uniform(-3, 3)
            k += 1
        else:
            a, b = rng.uniform(-3, 3), rng.uniform(0.5, 3) * rng.choice([-1, 1])
            blocks[k:k + 2, k:k + 2] = [[a, -b], [b, a]]
            k += 2
    q = random_orthogonal(rng, n)
    return q @ blocks @ q.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
