"""Beam splitters, partial transposition and symplectic spectra."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .gauss import J, NoiseMatrix, omega

log = logging.getLogger(__name__)

PAIR_TOL = 1e-8


class NumericError(ArithmeticError):
    """Eigen-decomposition failed or produced an unpairable spectrum."""


@dataclass(frozen=True)
class BeamSplitter:
    mode_a: int
    mode_b: int
    theta: float

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ValueError("beam splitter needs two distinct modes")
        if self.mode_a < 0 or self.mode_b < 0:
            raise ValueError("mode indices must be non-negative")


@dataclass(frozen=True)
class PartialTransposeMask:
    flipped_modes: frozenset = frozenset()

    def __init__(self, flipped_modes=()):
        object.__setattr__(self, "flipped_modes", frozenset(int(k) for k in flipped_modes))


def bs_symplectic(bs: BeamSplitter, n_modes: int, sign: int = 1) -> np.ndarray:
    """Symplectic (and orthogonal) matrix of a beam splitter on ``n_modes`` modes.

    With ``sign=1``: ``a' = cos(t) a + sin(t) b`` and ``b' = -sin(t) a + cos(t) b``
    for both quadratures. ``sign=-1`` puts the minus on the other output, which
    leaves every spectral quantity unchanged.
    """
    if max(bs.mode_a, bs.mode_b) >= n_modes:
        raise ValueError(f"beam splitter {bs} out of range for {n_modes} modes")
    c, s = np.cos(bs.theta), np.sin(bs.theta) * sign
    S = np.eye(2 * n_modes)
    a, b = 2 * bs.mode_a, 2 * bs.mode_b
    for q in range(2):
        S[a + q, a + q] = c
        S[a + q, b + q] = s
        S[b + q, a + q] = -s
        S[b + q, b + q] = c
    return S


def apply(v: NoiseMatrix, S: np.ndarray) -> NoiseMatrix:
    S = np.asarray(S, dtype=float)
    if S.shape != v.entries.shape:
        raise ValueError(f"dimension mismatch: S is {S.shape}, V is {v.entries.shape}")
    return NoiseMatrix(S @ v.entries @ S.T)


def partial_transpose(v: NoiseMatrix, mask) -> NoiseMatrix:
    """Flip the sign of ``p`` for every mode in ``mask`` (i.e. ``P V P``)."""
    if not isinstance(mask, PartialTransposeMask):
        mask = PartialTransposeMask(mask)
    bad = [k for k in mask.flipped_modes if not 0 <= k < v.n_modes]
    if bad:
        raise IndexError(f"modes {sorted(bad)} out of range for {v.n_modes} modes")
    p = np.ones(2 * v.n_modes)
    for k in mask.flipped_modes:
        p[2 * k + 1] = -1.0
    return NoiseMatrix(v.entries * np.outer(p, p))


def _paired_spectrum(m: np.ndarray, n: int) -> list[float]:
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigen-solver failed: {exc}") from exc
    scale = max(np.max(np.abs(ev)), np.finfo(float).tiny)
    if np.max(np.abs(ev.imag)) > PAIR_TOL * scale:
        raise NumericError("spectrum of i*Omega*V is not real; matrix is not positive definite")
    re = np.sort(ev.real)
    pos, neg = re[n:], -re[:n][::-1]
    if np.any(pos <= 0) or np.any(np.abs(pos - neg) > PAIR_TOL * pos):
        raise NumericError(f"spectrum does not split into +/- pairs: {re}")
    return [float(x) for x in 0.5 * (pos + neg)]


def symplectic_eigenvalues(v: NoiseMatrix) -> list[float]:
    """Symplectic eigenvalues in ascending order, from the spectrum of ``i Omega V``."""
    n = v.n_modes
    return _paired_spectrum(1j * omega(n) @ v.entries, n)


def chi_matrix(k: int, n_modes: int) -> np.ndarray:
    """``Omega`` with the ``k``-th ``J`` block negated."""
    if not 0 <= k < n_modes:
        raise IndexError(f"mode {k} out of range for {n_modes} modes")
    signs = np.ones(n_modes)
    signs[k] = -1.0
    return np.kron(np.diag(signs), J)


def pt_min_eigenvalue(v: NoiseMatrix, k: int) -> float:
    """``2 nu`` for the smallest symplectic eigenvalue after transposing mode ``k``.

    Below 1 certifies that mode ``k`` is inseparable from the rest.
    """
    nus = symplectic_eigenvalues(partial_transpose(v, (k,)))
    below = sum(2.0 * nu < 1.0 for nu in nus)
    if below > 1:
        log.info("partial transpose of mode %d has %d eigenvalues with 2nu < 1", k, below)
    return 2.0 * nus[0]
