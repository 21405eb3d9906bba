"""
Squeezing into two-mode entanglement on one beam splitter
=========================================================

A squeezed vacuum mixed with vacuum on a beam splitter produces two entangled
outputs. The entanglement never exceeds the bound set by the input noise area,
and mixing with thermal light destroys it once ``lambda_sqz (1 + 2 nbar) >= 1``.
"""

import math

import numpy as np

from noisevol import (
    BeamSplitter,
    ModeSpec,
    apply,
    bs_symplectic,
    log_negativity,
    make_state,
    max_extractable_en,
    noise_area_change,
    pt_min_eigenvalue,
)

r = 0.1
inputs = make_state([ModeSpec("squeezed_vacuum", r=r), ModeSpec("vacuum")])

##############################################################################
# Sweep the beam-splitter angle. ``2nu`` is the smallest symplectic
# eigenvalue after partially transposing one output; below 1 means entangled.

bound = max_extractable_en(inputs)
print(f"bound from the input noise area: E_N <= {bound:.6f}")
print(f"{'theta':>8} {'2nu':>10} {'E_N':>10} {'S_N':>10}")
for theta in np.linspace(0, math.pi / 2, 7):
    out = apply(inputs, bs_symplectic(BeamSplitter(0, 1, theta), 2))
    two_nu = pt_min_eigenvalue(out, 0)
    print(f"{theta:8.4f} {two_nu:10.6f} {log_negativity(two_nu):10.6f} "
          f"{noise_area_change(inputs, out):10.6f}")

##############################################################################
# Replace the vacuum port by thermal light and watch the entanglement vanish
# at nbar = (e^{2r} - 1) / 2.

threshold = (math.exp(2 * r) - 1) / 2
for nbar in (0.0, 0.5 * threshold, threshold, 2 * threshold):
    state = make_state([ModeSpec("squeezed_vacuum", r=r), ModeSpec("thermal", nbar=nbar)])
    out = apply(state, bs_symplectic(BeamSplitter(0, 1, math.pi / 4), 2))
    print(f"nbar = {nbar:.4f}: 2nu = {pt_min_eigenvalue(out, 0):.6f}")
