"""Zero levels give generic CR-submanifolds; ray levels do not.

Runs the full suite on every scenario and tabulates dimensions, genericity
and the worst mandatory residual.  The degenerate torus level (S4) shows
up with regularity failing at every point, as expected.
"""
from crsub import suite
from crsub.crverify import MANDATORY

cases = [("S1", {}), ("S2", {}), ("S3", {}), ("S4", {})]
cases += [("S5", {"variant": v}) for v in (1, 2, 3, 4)]
cases += [("S6", {}), ("S7", {}), ("S8", {})]

print(f"{'case':12s} {'TN':>3s} {'D':>3s} {'Dperp':>5s} {'FDperp':>6s}  {'genericity':10s} {'regular':>8s} {'max res':>9s} ok")
for sid, params in cases:
    res = suite(sid, params, seed=42, count=30)
    r = res.reports[0]
    worst = max(getattr(rep, m) for rep in res.reports for m in MANDATORY)
    regular = sum(g.is_regular for g in res.regularities)
    label = sid + (f".{params['variant']}" if params else "")
    print(f"{label:12s} {r.dim_TN:3d} {r.dim_D:3d} {r.dim_orbit:5d} {r.dim_FDperp:6d}  "
          f"{r.genericity:10s} {regular:5d}/30 {worst:9.1e} {res.passed}")
