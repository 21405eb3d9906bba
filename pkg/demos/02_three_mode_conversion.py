"""
Single-mode squeezing converted into three-mode entanglement
============================================================

The source is split on a balanced beam splitter and one arm is split again at
angle ``theta2``. As ``theta2`` grows toward pi/4 the three-mode entanglement
grows (``mu`` and ``eta_ent`` fall) while the squeezing left in the individual
modes shrinks (``N`` rises toward 1).
"""

import math

from noisevol import SWEEP, SweepSpec, build_fig1, run, sweep

##############################################################################
# One configuration in detail.

v, report = run(build_fig1(r=0.1, theta1=math.pi / 4, theta2=math.pi / 4))
print("per-mode 2nu after partial transpose:", [round(x, 6) for x in report.per_mode_pt])
print("mu      =", round(report.mu, 6))
print("eta_ent =", round(report.eta_ent, 6), "with tau =", [round(t, 5) for t in report.eta_tau])
print("N       =", round(report.smnc_volume, 6))

##############################################################################
# The sweep behind the conversion curves. Each row is independent, so
# ``NOISEVOL_THREADS`` can spread them over several threads.

spec = SweepSpec(build_fig1(0.1, math.pi / 4, SWEEP), start=math.pi / 60,
                 stop=math.pi / 4, steps=10)
print(f"\n{'theta2':>8} {'mu':>10} {'eta_ent':>10} {'N':>10}")
for theta2, rep in sweep(spec):
    print(f"{theta2:8.4f} {rep.mu:10.6f} {rep.eta_ent:10.6f} {rep.smnc_volume:10.6f}")
