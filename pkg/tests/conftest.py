import numpy as np
import pytest

from noisevol import NoiseMatrix

SEEDS = range(100)


def random_symplectic(rng, n, layers=6):
    """Random symplectic matrix from local squeezers, rotations and beam splitters.

    Built without the library's beam-splitter code so it can serve as an oracle.
    """
    S = np.eye(2 * n)
    for _ in range(layers):
        for k in range(n):
            s, phi = rng.normal(scale=0.5), rng.uniform(0, 2 * np.pi)
            c, si = np.cos(phi), np.sin(phi)
            local = np.array([[c, -si], [si, c]]) @ np.diag([np.exp(-s), np.exp(s)])
            m = np.eye(2 * n)
            m[2 * k:2 * k + 2, 2 * k:2 * k + 2] = local
            S = m @ S
        if n > 1:
            a, b = rng.choice(n, size=2, replace=False)
            t = rng.uniform(0, np.pi)
            m = np.eye(2 * n)
            for q in range(2):
                m[2 * a + q, 2 * a + q] = m[2 * b + q, 2 * b + q] = np.cos(t)
                m[2 * a + q, 2 * b + q] = np.sin(t)
                m[2 * b + q, 2 * a + q] = -np.sin(t)
            S = m @ S
    return S


def random_state(rng, n, mixed=True):
    """Random valid Gaussian noise matrix ``S (+nu_k I) S^T``."""
    nus = 0.5 + (rng.exponential(0.5, size=n) if mixed else np.zeros(n))
    S = random_symplectic(rng, n)
    return NoiseMatrix(S @ np.diag(np.repeat(nus, 2)) @ S.T), np.sort(nus)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
