"""Noise-volume quantifiers of multi-mode entanglement in Gaussian beam-splitter networks."""

from .gauss import (
    ComplexNoiseMatrix,
    ModeSpec,
    NoiseMatrix,
    RepresentationError,
    SymplecticForm,
    from_complex,
    make_state,
    min_mode_noise,
    nonclassical_depth_mode,
    to_complex,
    vacuum,
    validate_state,
)
from .measures import (
    EtaOptions,
    EtaResult,
    MeasureReport,
    eta_ent,
    log_negativity,
    max_extractable_en,
    measure,
    mu_volume,
    noise_area_change,
    smnc_volume,
    wipe_correlations,
    wipe_single_mode_nonclassicality,
)
from .scenarios import SWEEP, Circuit, SweepSpec, build_fig1, build_fig3, evolve, run, sweep
from .symplectic import (
    BeamSplitter,
    NumericError,
    PartialTransposeMask,
    apply,
    bs_symplectic,
    chi_matrix,
    partial_transpose,
    pt_min_eigenvalue,
    symplectic_eigenvalues,
)

__version__ = "0.1.0"
