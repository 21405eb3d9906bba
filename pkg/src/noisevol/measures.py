"""Entanglement and single-mode nonclassicality quantifiers.

Two multi-mode entanglement measures are provided:

* :func:`mu_volume`, the product over modes of the smallest partially
  transposed symplectic eigenvalue ``2 nu_k``;
* :func:`eta_ent`, the largest injected-noise volume ``prod(1 - 2 tau_k)`` for
  which per-mode Gaussian noise ``tau_k`` makes the state classical. Applied to
  :func:`wipe_single_mode_nonclassicality` output it measures entanglement
  only (:func:`measure` wipes just the squeezed modes).

:func:`smnc_volume` measures what single-mode nonclassicality is left once
correlations are removed. All three are 1 for classical states and shrink as
nonclassicality grows.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .gauss import (
    NoiseMatrix,
    min_mode_noise,
    nonclassical_depth_mode,
)
from .symplectic import pt_min_eigenvalue

FEAS_TOL = 1e-10
TAU_MAX = 0.5


def mu_volume(v: NoiseMatrix):
    """Return ``(mu, per_mode)`` where ``per_mode[k]`` is the PT minimum for mode ``k``.

    A cut with ``2 nu_k >= 1`` shows no entanglement and contributes 1 to ``mu``,
    so classical states give exactly ``mu = 1``. ``per_mode`` is not clipped.
    """
    per_mode = [pt_min_eigenvalue(v, k) for k in range(v.n_modes)]
    return float(np.prod(np.minimum(per_mode, 1.0))), per_mode


def log_negativity(two_nu: float) -> float:
    """``max(0, -log2(2 nu) / 2)``.

    Note the factor 1/2: this is half the usual logarithmic negativity, kept so
    that it matches the single beam-splitter bound in :func:`max_extractable_en`.
    """
    if not two_nu > 0:
        raise ValueError(f"log_negativity needs a positive argument, got {two_nu}")
    return max(0.0, -0.5 * math.log2(two_nu))


def wipe_single_mode_nonclassicality(v: NoiseMatrix, only_nonclassical: bool = False) -> NoiseMatrix:
    """Replace diagonal 2x2 blocks by the vacuum block, keeping correlations.

    With ``only_nonclassical`` a block is replaced only if its mode is squeezed
    (``lambda_sm < 1``). Classical blocks then keep their excess noise, which
    stops classically correlated thermal light from looking entangled.
    """
    m = np.array(v.entries)
    for k in range(v.n_modes):
        if only_nonclassical and min_mode_noise(v, k) >= 1.0:
            continue
        m[2 * k:2 * k + 2, 2 * k:2 * k + 2] = 0.5 * np.eye(2)
    return NoiseMatrix(m)


def wipe_correlations(v: NoiseMatrix) -> NoiseMatrix:
    """Zero every off-diagonal 2x2 block."""
    m = np.zeros_like(v.entries)
    for k in range(v.n_modes):
        m[2 * k:2 * k + 2, 2 * k:2 * k + 2] = v.block(k)
    return NoiseMatrix(m)


def smnc_volume(v: NoiseMatrix):
    """Return ``(volume, per_mode_tau)`` for the correlation-wiped state."""
    local = wipe_correlations(v)
    taus = [nonclassical_depth_mode(local, k) for k in range(v.n_modes)]
    return float(np.prod([1.0 - 2.0 * t for t in taus])), taus


def _two_mode(v: NoiseMatrix, name: str):
    if v.n_modes != 2:
        raise ValueError(f"{name} is defined for two-mode states, got {v.n_modes} modes")


def noise_area(v: NoiseMatrix) -> float:
    """Product of the per-mode minimal noises of the correlation-wiped state."""
    local = wipe_correlations(v)
    return float(np.prod([min_mode_noise(local, k) for k in range(v.n_modes)]))


def noise_area_change(v_in: NoiseMatrix, v_out: NoiseMatrix) -> float:
    """``log2`` of the output noise area minus that of the input (two modes each)."""
    _two_mode(v_in, "noise_area_change")
    _two_mode(v_out, "noise_area_change")
    return math.log2(noise_area(v_out)) - math.log2(noise_area(v_in))


def max_extractable_en(v_in: NoiseMatrix) -> float:
    """Upper bound on :func:`log_negativity` after any beam splitter acting on ``v_in``."""
    _two_mode(v_in, "max_extractable_en")
    lam = min_mode_noise(v_in, 0) * min_mode_noise(v_in, 1)
    return max(0.0, -0.5 * math.log2(lam))


# ---------------------------------------------------------------------------
# noise injection depth


@dataclass(frozen=True)
class EtaOptions:
    coarse_steps: int = 21
    refine_rounds: int = 3
    shrink: float = 5.0
    resolution: float = 1e-4
    polish: bool = True
    feasibility_tol: float = FEAS_TOL

    def __post_init__(self):
        if self.coarse_steps < 2:
            raise ValueError("coarse_steps must be at least 2")
        if self.shrink <= 1:
            raise ValueError("shrink factor must exceed 1")


@dataclass(frozen=True)
class EtaResult:
    eta: float
    tau: tuple
    converged: bool
    tau_product: float
    min_eigenvalue: float

    def __iter__(self):
        return iter((self.eta, list(self.tau), self.converged))


def injection_margin(v: NoiseMatrix, tau) -> float:
    """Smallest eigenvalue of ``V + T - I/2`` with ``T = diag(tau_1, tau_1, ...)``."""
    t = np.repeat(np.asarray(tau, dtype=float), 2)
    return float(np.linalg.eigvalsh(v.entries + np.diag(t - 0.5))[0])


def _decoupled_vacuum(v: NoiseMatrix, k: int) -> bool:
    m = v.entries
    row = np.delete(m[2 * k:2 * k + 2], [2 * k, 2 * k + 1], axis=1)
    return np.array_equal(v.block(k), 0.5 * np.eye(2)) and not np.any(row)


class _Problem:
    """Feasibility oracle for the free (non-pinned) axes of one eta search."""

    def __init__(self, v: NoiseMatrix, free, tol):
        n = v.n_modes
        self.free = list(free)
        self.base = v.entries - 0.5 * np.eye(2 * n)
        self.n = n
        self.tol = tol
        # selector that spreads free-axis taus over the diagonal
        sel = np.zeros((len(self.free), 2 * n))
        for i, k in enumerate(self.free):
            sel[i, 2 * k] = sel[i, 2 * k + 1] = 1.0
        self.sel = sel

    def margins(self, taus: np.ndarray) -> np.ndarray:
        """Min eigenvalues for a batch of free-axis tau vectors, shape ``(m, d)``."""
        diag = taus @ self.sel
        mats = np.broadcast_to(self.base, (len(taus),) + self.base.shape).copy()
        idx = np.arange(2 * self.n)
        mats[:, idx, idx] += diag
        out = np.empty(len(taus))
        chunk = 65536
        for s in range(0, len(taus), chunk):
            out[s:s + chunk] = np.linalg.eigvalsh(mats[s:s + chunk])[:, 0]
        return out

    def feasible(self, tau) -> bool:
        return self.margins(np.asarray(tau, dtype=float)[None, :])[0] >= -self.tol

    def min_axis(self, tau, i: int) -> float | None:
        """Smallest feasible value of free axis ``i`` with the others fixed."""
        tau = np.array(tau, dtype=float)
        tau[i] = TAU_MAX
        if not self.feasible(tau):
            return None
        tau[i] = 0.0
        if self.feasible(tau):
            return 0.0
        # exact bound from the Schur complement when the rest is positive definite
        m = self.base + np.diag(tau @ self.sel)
        k = 2 * self.free[i]
        blk = [k, k + 1]
        rest = [j for j in range(2 * self.n) if j not in blk]
        mrr = m[np.ix_(rest, rest)]
        if not rest or np.linalg.eigvalsh(mrr)[0] > 1e-9:
            schur = m[np.ix_(blk, blk)]
            if rest:
                mkr = m[np.ix_(blk, rest)]
                schur = schur - mkr @ np.linalg.solve(mrr, mkr.T)
            t = max(0.0, -float(np.linalg.eigvalsh(schur)[0]))
            for bump in (0.0, 1e-14, 1e-12, 1e-10):
                tau[i] = t + bump
                if tau[i] <= TAU_MAX and self.feasible(tau):
                    return float(tau[i])
        lo, hi = 0.0, TAU_MAX
        while hi - lo > 1e-13:
            mid = 0.5 * (lo + hi)
            tau[i] = mid
            if self.feasible(tau):
                hi = mid
            else:
                lo = mid
        return hi


def _objective(taus: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.sum(np.log1p(-2.0 * taus), axis=-1)


def _grid_search(prob: _Problem, opts: EtaOptions):
    d = len(prob.free)
    steps = opts.coarse_steps
    lo = np.zeros(d)
    hi = np.full(d, TAU_MAX * (1 - 1e-12))
    best = None
    rounds = 0
    while True:
        axes = [np.linspace(lo[i], hi[i], steps) for i in range(d)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        ok = prob.margins(pts) >= -prob.tol
        if not np.any(ok):
            if best is None:
                return None
        else:
            obj = np.where(ok, _objective(pts), -np.inf)
            cand = pts[int(np.argmax(obj))]  # first maximal cell wins ties
            if best is None or _objective(cand) > _objective(best):
                best = cand
        spacing = np.max(hi - lo) / (steps - 1)
        rounds += 1
        if rounds > opts.refine_rounds and spacing <= opts.resolution:
            return best
        width = (hi - lo) / opts.shrink
        lo = np.clip(best - width / 2, 0.0, None)
        hi = np.clip(best + width / 2, None, TAU_MAX * (1 - 1e-12))


def _polish(prob: _Problem, tau: np.ndarray, start_step: float) -> np.ndarray:
    """Compass search on the boundary of the feasible set.

    One axis (the largest) is eliminated by moving it to its smallest feasible
    value; the rest take ±h steps, accepted only on strict improvement.
    """
    d = len(tau)
    k = int(np.argmax(tau))

    def lift(t):
        m = prob.min_axis(t, k)
        if m is None:
            return None
        t = np.array(t)
        t[k] = m
        return t

    cur = lift(tau)
    if cur is None:
        return tau
    cur_obj = _objective(cur)
    others = [i for i in range(d) if i != k]
    h = start_step
    while h > 1e-10 and others:
        moved = False
        for i in others:
            for sgn in (-1.0, 1.0):
                t = np.array(cur)
                t[i] = min(max(t[i] + sgn * h, 0.0), TAU_MAX * (1 - 1e-12))
                if t[i] == cur[i]:
                    continue
                t = lift(t)
                if t is None:
                    continue
                obj = _objective(t)
                if obj > cur_obj + 1e-15:
                    cur, cur_obj, moved = t, obj, True
                    break
        if not moved:
            h /= 2
    return cur if _objective(cur) >= _objective(tau) else tau


def eta_ent(v: NoiseMatrix, opts: EtaOptions | None = None) -> EtaResult:
    """Maximize ``prod(1 - 2 tau_k)`` subject to ``V + T - I/2 >= 0``.

    ``T`` places ``tau_k`` on both quadratures of mode ``k``. The search is a
    deterministic coarse-to-fine grid over ``[0, 1/2)`` per free axis followed by
    an optional boundary polish. Modes that are uncorrelated vacuum are pinned
    to ``tau = 0``. If no grid point is feasible the result has
    ``converged=False`` and every free ``tau`` clamped just below 1/2.
    """
    opts = opts or EtaOptions()
    n = v.n_modes
    free = [k for k in range(n) if not _decoupled_vacuum(v, k)]
    tau = np.zeros(n)
    converged = True
    if free:
        # search on margin >= 0 so the post-check at -feasibility_tol has headroom
        prob = _Problem(v, free, 0.0)
        if injection_margin(v, np.zeros(n)) >= -opts.feasibility_tol:
            sol = np.zeros(len(free))
        else:
            sol = _grid_search(prob, opts)
            if sol is None:
                converged = False
                sol = np.full(len(free), TAU_MAX * (1 - 1e-12))
            elif opts.polish:
                sol = _polish(prob, sol, opts.resolution)
        tau[free] = sol
    margin = injection_margin(v, tau)
    if converged and margin < -opts.feasibility_tol:
        raise AssertionError(f"eta search returned an infeasible point (margin {margin:.3g})")
    eta = float(np.prod(1.0 - 2.0 * tau))
    return EtaResult(eta, tuple(float(t) for t in tau), converged, float(np.prod(tau)), margin)


# ---------------------------------------------------------------------------
# reports


@dataclass
class MeasureReport:
    """All quantifiers for one configuration. Unrequested measures are None."""

    n_modes: int
    per_mode_pt: list = field(default_factory=list)
    mu: float | None = None
    log_neg_per_mode: list = field(default_factory=list)
    lambda_sm: list = field(default_factory=list)
    tau_smnc: list = field(default_factory=list)
    smnc_volume: float | None = None
    eta_ent: float | None = None
    eta_converged: bool | None = None
    eta_tau: list | None = None
    tau_product: float | None = None
    s_n: float | None = None
    symplectic_eigenvalues: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


MEASURES = ("mu", "eta", "smnc", "logneg")


def measure(v: NoiseMatrix, measures=MEASURES, eta_options: EtaOptions | None = None,
            v_in: NoiseMatrix | None = None) -> MeasureReport:
    """Compute the requested quantifiers of ``v``.

    ``v_in`` (two-mode only) enables the noise-area change ``s_n``.
    """
    from .symplectic import symplectic_eigenvalues

    measures = set(measures)
    unknown = measures - set(MEASURES)
    if unknown:
        raise ValueError(f"unknown measures {sorted(unknown)}")
    rep = MeasureReport(n_modes=v.n_modes)
    rep.symplectic_eigenvalues = symplectic_eigenvalues(v)
    rep.lambda_sm = [min_mode_noise(v, k) for k in range(v.n_modes)]
    if measures & {"mu", "logneg"}:
        mu, per_mode = mu_volume(v)
        rep.per_mode_pt = per_mode
        if "mu" in measures:
            rep.mu = mu
        if "logneg" in measures:
            rep.log_neg_per_mode = [log_negativity(x) for x in per_mode]
    if "smnc" in measures:
        rep.smnc_volume, rep.tau_smnc = smnc_volume(v)
    if "eta" in measures:
        res = eta_ent(wipe_single_mode_nonclassicality(v, only_nonclassical=True), eta_options)
        rep.eta_ent = res.eta
        rep.eta_converged = res.converged
        rep.eta_tau = list(res.tau)
        rep.tau_product = res.tau_product
    if v_in is not None and v.n_modes == 2 and v_in.n_modes == 2:
        rep.s_n = noise_area_change(v_in, v)
    return rep
