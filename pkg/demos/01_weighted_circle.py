"""Weighted circle action on the Sasakian 7-sphere.

Samples the zero level of mu(z) = sum lambda_a |z_a|^2 with weights
(1, 1, -1, -1), checks that it is a product of two 3-spheres of equal
radii, and prints the CR decomposition at one point.
"""
import numpy as np

from crsub import analyze, build, sample
from crsub import hypercomplex as hc

inst = build("S1", {"n": 4, "weights": [1, 1, -1, -1]})
man, act, mm, level = inst.manifold, inst.action, inst.momentum, inst.level

points = sample(man, mm, level, seed=0, count=5)
for x in points:
    z = hc.as_complex(x)
    print("block sums:", np.round([np.sum(abs(z[:2]) ** 2), np.sum(abs(z[2:]) ** 2)], 12))

rep = analyze(man, act, mm, level, points[0])
print("\ndim TN  =", rep.dim_TN)
print("dim D   =", rep.dim_D, " (invariant part, contains the Reeb field)")
print("dim D^perp =", rep.dim_orbit, " (the orbit direction)")
print("genericity:", rep.genericity)
print("Reeb field tangent:", rep.reeb_tangent)
for name, value in rep.to_dict()["residuals"].items():
    print(f"  {name:22s} {value:.2e}")
