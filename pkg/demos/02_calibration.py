"""Printed momentum maps versus the exact axiom d mu(zeta) = omega(zeta_M, .).

A printed formula is often off by a constant.  calibrate_scale fits that
constant by least squares; a negative fit means the orientation is flipped.
"""
import numpy as np

from crsub import InconsistentScale, build
from crsub.levelset import sample_manifold
from crsub.momentum import MomentumMapSpec, calibrate_scale

for sid in ("S1", "S3", "S6", "S7", "S8"):
    inst = build(sid)
    pts = sample_manifold(inst.manifold, seed=1, count=20)
    kappa = calibrate_scale(inst.momentum, inst.action, inst.manifold, pts)
    print(f"{sid}: kappa = {kappa:.12f}   {inst.momentum.formula}")

# The para-Hermitian hyperboloid: the printed map has the wrong sign under
# omega(X, Y) = g(X, F Y), so the fit comes out negative.
inst = build("S2")
declared = inst.momentum
printed = MomentumMapSpec(1, eval=lambda x: -declared.eval(x), jacobian=lambda x: -declared.jacobian(x))
pts = sample_manifold(inst.manifold, seed=1, count=20)
try:
    calibrate_scale(printed, inst.action, inst.manifold, pts)
except InconsistentScale as exc:
    print(f"\nS2 printed form: {exc} (kappa = {exc.kappa:.6f})")

# A map with no relation to the action cannot be calibrated at all.
zero = MomentumMapSpec(1, eval=lambda x: np.zeros(1), jacobian=lambda x: np.zeros((1, x.size)))
try:
    calibrate_scale(zero, inst.action, inst.manifold, pts)
except InconsistentScale as exc:
    print("zero map:", exc)
