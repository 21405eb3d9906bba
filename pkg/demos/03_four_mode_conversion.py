"""
Four-mode entanglement from a beam-splitter tree
================================================

The source is split once, then both arms are split against vacuum at the same
angle. ``eta_ent`` needs a four-dimensional search, so it is computed only at
the balanced point, on a coarser grid.
"""

import math

from noisevol import SWEEP, EtaOptions, SweepSpec, build_fig3, run, sweep

spec = SweepSpec(build_fig3(0.1, math.pi / 4, SWEEP, SWEEP), start=math.pi / 60,
                 stop=math.pi / 4, steps=8, measures=("mu", "smnc"))

print(f"{'theta':>8} {'mu':>10} {'N':>10}")
for theta, rep in sweep(spec):
    print(f"{theta:8.4f} {rep.mu:10.6f} {rep.smnc_volume:10.6f}")

_, rep = run(build_fig3(0.1, math.pi / 4, math.pi / 4, math.pi / 4),
             eta_options=EtaOptions(coarse_steps=11))
print("\nbalanced tree: eta_ent =", round(rep.eta_ent, 6), "converged:", rep.eta_converged)
