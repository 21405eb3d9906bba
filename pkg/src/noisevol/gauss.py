"""Covariance ("noise") matrices of Gaussian states and their canonical constructors.

Units: quadratures are ``x = (a^dag + a)/sqrt(2)``, ``p = i(a^dag - a)/sqrt(2)``,
so the vacuum has variance 1/2 in each quadrature. Rows ``2k, 2k+1`` hold
``(x_k, p_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TOL_PSD = 1e-9
TOL_HERM = 1e-12

KINDS = ("vacuum", "coherent", "squeezed_vacuum", "thermal")

# one C1 = [[1, i], [1, -i]] / sqrt(2) per mode
C1 = np.array([[1.0, 1.0j], [1.0, -1.0j]]) / np.sqrt(2.0)
J = np.array([[0.0, 1.0], [-1.0, 0.0]])


class RepresentationError(ValueError):
    """A complex matrix is not the image of a real noise matrix."""


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


class NoiseMatrix:
    """Real symmetric ``2n x 2n`` covariance matrix with (x1, p1, ..., xn, pn) ordering.

    The input is symmetrized on construction so that ``entries == entries.T``
    holds exactly. Instances are immutable.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        m = np.asarray(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"noise matrix must be square with even size, got {m.shape}")
        if m.shape[0] == 0:
            raise ValueError("noise matrix needs at least one mode")
        self._entries = _frozen(0.5 * (m + m.T))

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n_modes(self) -> int:
        return self._entries.shape[0] // 2

    def block(self, i: int, j: int | None = None) -> np.ndarray:
        """The 2x2 block coupling modes ``i`` and ``j`` (diagonal block if ``j`` is None)."""
        j = i if j is None else j
        return self._entries[2 * i:2 * i + 2, 2 * j:2 * j + 2]

    def submatrix(self, modes) -> "NoiseMatrix":
        """Reduced state of the listed modes, in the order given."""
        idx = np.ravel([[2 * k, 2 * k + 1] for k in modes])
        return NoiseMatrix(self._entries[np.ix_(idx, idx)])

    def __array__(self, dtype=None, copy=None):
        return np.array(self._entries, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, NoiseMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash(self._entries.tobytes())

    def __repr__(self):
        return f"NoiseMatrix(n_modes={self.n_modes})"


class ComplexNoiseMatrix:
    """The image ``C V C^dag`` of a noise matrix, ``C`` block-diagonal in ``C1``."""

    __slots__ = ("_entries",)

    def __init__(self, entries, tol: float = TOL_HERM):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"complex noise matrix must be square with even size, got {m.shape}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > tol:
            raise RepresentationError("complex noise matrix is not Hermitian")
        self._entries = _frozen(m)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n_modes(self) -> int:
        return self._entries.shape[0] // 2

    def __array__(self, dtype=None, copy=None):
        return np.array(self._entries, dtype=dtype)

    def __repr__(self):
        return f"ComplexNoiseMatrix(n_modes={self.n_modes})"


@dataclass(frozen=True)
class ModeSpec:
    """Input state of a single mode.

    ``squeeze_phase`` rotates the squeezed ellipse; 0 squeezes ``x``.
    """

    kind: str = "vacuum"
    r: float = 0.0
    nbar: float = 0.0
    squeeze_phase: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown mode kind {self.kind!r}; expected one of {KINDS}")
        if not self.r >= 0:
            raise ValueError(f"squeezing parameter must be non-negative, got r={self.r}")
        if not self.nbar >= 0:
            raise ValueError(f"thermal photon number must be non-negative, got nbar={self.nbar}")


@dataclass(frozen=True)
class SymplecticForm:
    """Block-diagonal ``J + J + ... + J`` on ``n_modes`` modes."""

    n_modes: int
    entries: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive")
        object.__setattr__(self, "entries", _frozen(np.kron(np.eye(self.n_modes), J)))


def omega(n_modes: int) -> np.ndarray:
    return SymplecticForm(n_modes).entries


def mode_block(spec: ModeSpec) -> np.ndarray:
    """2x2 covariance block of one input mode."""
    if spec.kind in ("vacuum", "coherent"):
        return 0.5 * np.eye(2)
    if spec.kind == "thermal":
        return 0.5 * (1.0 + 2.0 * spec.nbar) * np.eye(2)
    b = 0.5 * np.diag([np.exp(-2.0 * spec.r), np.exp(2.0 * spec.r)])
    c, s = np.cos(spec.squeeze_phase), np.sin(spec.squeeze_phase)
    rot = np.array([[c, -s], [s, c]])
    return rot @ b @ rot.T


def make_state(specs) -> NoiseMatrix:
    """Block-diagonal noise matrix of independent single-mode inputs."""
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one mode spec")
    n = len(specs)
    v = np.zeros((2 * n, 2 * n))
    for k, spec in enumerate(specs):
        v[2 * k:2 * k + 2, 2 * k:2 * k + 2] = mode_block(spec)
    return NoiseMatrix(v)


def vacuum(n_modes: int) -> NoiseMatrix:
    return NoiseMatrix(0.5 * np.eye(2 * n_modes))


def complex_transform(n_modes: int) -> np.ndarray:
    return np.kron(np.eye(n_modes), C1)


def to_complex(v: NoiseMatrix) -> ComplexNoiseMatrix:
    c = complex_transform(v.n_modes)
    vc = c @ v.entries @ c.conj().T
    return ComplexNoiseMatrix(0.5 * (vc + vc.conj().T))


def from_complex(vc: ComplexNoiseMatrix, tol_imag: float = 1e-9) -> NoiseMatrix:
    """Inverse of :func:`to_complex`; raises if the result is not real."""
    c = complex_transform(vc.n_modes)
    v = c.conj().T @ vc.entries @ c
    residue = np.max(np.abs(v.imag))
    if residue > tol_imag:
        raise RepresentationError(
            f"imaginary residue {residue:.3g} exceeds {tol_imag:g}; input is not a valid image")
    return NoiseMatrix(v.real)


def min_mode_noise(v: NoiseMatrix, k: int) -> float:
    """Twice the smallest eigenvalue of mode ``k``'s diagonal block (vacuum -> 1)."""
    if not 0 <= k < v.n_modes:
        raise IndexError(f"mode {k} out of range for {v.n_modes} modes")
    return 2.0 * float(np.linalg.eigvalsh(v.block(k))[0])


def nonclassical_depth_mode(v: NoiseMatrix, k: int) -> float:
    """Single-mode nonclassical depth ``max(0, (1 - lambda_sm) / 2)``."""
    return max(0.0, 0.5 * (1.0 - min_mode_noise(v, k)))


def validate_state(v: NoiseMatrix, tol: float = TOL_PSD):
    """Symplectic spectrum of ``v`` and whether it describes a physical state.

    Returns ``(nus, valid)`` where ``valid`` is False if any ``2 nu < 1 - tol``.
    Never raises on unphysical input; an unpairable spectrum counts as invalid.
    """
    from .symplectic import NumericError, symplectic_eigenvalues

    try:
        nus = symplectic_eigenvalues(v)
    except NumericError:
        return [], False
    return nus, bool(np.all(2.0 * np.asarray(nus) >= 1.0 - tol))
