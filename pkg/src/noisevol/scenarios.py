"""Beam-splitter circuits and parameter sweeps.

``build_fig1`` splits a squeezed vacuum on one beam splitter and splits one
arm again against vacuum (three output modes). ``build_fig3`` splits the
source and then splits *each* arm against vacuum (four output modes); this
balanced-tree wiring is an assumption, and any other wiring can be expressed
as a :class:`Circuit` directly.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .gauss import ModeSpec, NoiseMatrix, make_state
from .measures import MEASURES, EtaOptions, MeasureReport, measure
from .symplectic import BeamSplitter, apply, bs_symplectic

SWEEP = "sweep"  # placeholder angle marking the swept beam splitters


@dataclass(frozen=True)
class Circuit:
    inputs: tuple
    ops: tuple = ()
    tracked_modes: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "ops", tuple(self.ops))
        n = len(self.inputs)
        if n == 0:
            raise ValueError("circuit needs at least one input mode")
        for op in self.ops:
            if max(op.mode_a, op.mode_b) >= n:
                raise ValueError(f"{op} references a mode outside 0..{n - 1}")
        tracked = tuple(range(n)) if self.tracked_modes is None else tuple(self.tracked_modes)
        if len(set(tracked)) != len(tracked) or not tracked:
            raise ValueError(f"tracked modes must be distinct and non-empty, got {tracked}")
        if any(not 0 <= k < n for k in tracked):
            raise ValueError(f"tracked modes {tracked} outside 0..{n - 1}")
        object.__setattr__(self, "tracked_modes", tracked)

    @property
    def n_modes(self) -> int:
        return len(self.inputs)

    @property
    def swept(self) -> list[int]:
        return [i for i, op in enumerate(self.ops) if isinstance(op.theta, str)]

    def with_angle(self, theta: float) -> "Circuit":
        """Copy with every swept beam splitter set to ``theta``."""
        ops = tuple(replace(op, theta=theta) if isinstance(op.theta, str) else op
                    for op in self.ops)
        return replace(self, ops=ops)


def build_fig1(r: float, theta1: float, theta2) -> Circuit:
    """Squeezed vacuum split on BS(0,1), then mode 1 split against vacuum on BS(1,2)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return Circuit(
        inputs=(ModeSpec("squeezed_vacuum", r=r), ModeSpec(), ModeSpec()),
        ops=(BeamSplitter(0, 1, theta1), BeamSplitter(1, 2, theta2)),
    )


def build_fig3(r: float, theta1: float, theta2, theta3) -> Circuit:
    """Squeezed vacuum split on BS(0,1); each arm split again on BS(0,2) and BS(1,3)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return Circuit(
        inputs=(ModeSpec("squeezed_vacuum", r=r),) + (ModeSpec(),) * 3,
        ops=(BeamSplitter(0, 1, theta1), BeamSplitter(0, 2, theta2), BeamSplitter(1, 3, theta3)),
    )


def evolve(c: Circuit) -> NoiseMatrix:
    """Output noise matrix of the tracked modes."""
    if c.swept:
        raise ValueError("circuit still has unset swept angles")
    v = make_state(c.inputs)
    for op in c.ops:
        v = apply(v, bs_symplectic(op, c.n_modes))
    if c.tracked_modes != tuple(range(c.n_modes)):
        v = v.submatrix(c.tracked_modes)
    return v


def run(c: Circuit, measures=MEASURES, eta_options: EtaOptions | None = None):
    """Evolve the circuit and measure the tracked output. Returns ``(V, report)``."""
    v = evolve(c)
    v_in = None
    if c.n_modes == 2 and len(c.tracked_modes) == 2:
        v_in = make_state(c.inputs).submatrix(c.tracked_modes)
    return v, measure(v, measures, eta_options, v_in=v_in)


@dataclass(frozen=True)
class SweepSpec:
    circuit_template: Circuit
    start: float = np.pi / 60
    stop: float = np.pi / 2 - np.pi / 60
    steps: int = 59
    measures: tuple = MEASURES
    eta_options: EtaOptions = field(default_factory=EtaOptions)

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("sweep needs at least 2 steps")
        if not self.start < self.stop:
            raise ValueError("sweep start must be below stop")
        if not self.circuit_template.swept:
            raise ValueError("circuit template has no swept beam splitter")

    @property
    def angles(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


class SweepError(RuntimeError):
    def __init__(self, angle, cause):
        super().__init__(f"sweep failed at angle {angle!r}: {cause}")
        self.angle = angle


def _threads() -> int:
    try:
        cap = int(os.environ.get("NOISEVOL_THREADS", "1"))
    except ValueError:
        cap = 1
    return max(1, cap)


def sweep(s: SweepSpec) -> list[tuple[float, MeasureReport]]:
    """One ``(angle, report)`` row per grid point, in grid order.

    Rows are independent and run on up to ``NOISEVOL_THREADS`` threads; the
    result does not depend on the schedule.
    """

    def row(theta):
        try:
            _, rep = run(s.circuit_template.with_angle(float(theta)), s.measures, s.eta_options)
        except Exception as exc:  # noqa: BLE001 - re-raised with the failing angle
            raise SweepError(float(theta), exc) from exc
        return float(theta), rep

    angles = s.angles
    workers = min(_threads(), len(angles))
    if workers == 1:
        return [row(t) for t in angles]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(row, angles))
