import numpy as np
import pytest

from crsub import scenarios
from crsub.crverify import MANDATORY, analyze, bracket_tolerance, level_tangent, suite
from crsub.levelset import sample
from crsub.numlin import DEFAULT_TOL, ToleranceProfile


def _reports(sid, params=None, count=10, seed=42):
    inst = scenarios.build(sid, params or {})
    pts = sample(inst.manifold, inst.momentum, inst.level, seed, count)
    return [analyze(inst.manifold, inst.action, inst.momentum, inst.level, x) for x in pts]


def test_s1_report():
    for r in _reports("S1", {"n": 4, "weights": [1, 1, -1, -1]}):
        assert (r.dim_TN, r.dim_orbit, r.dim_D) == (6, 1, 5)
        assert r.genericity == "Generic" and r.reeb_tangent and r.passed
        assert max(getattr(r, m) for m in MANDATORY) <= 1e-8


def test_first_ray_variant_report():
    for r in _reports("S5", {"variant": 1}):
        assert (r.dim_TN, r.dim_orbit, r.dim_FDperp) == (3, 1, 0)
        assert r.genericity == "NonGeneric" and r.passed


def test_su2_report():
    for r in _reports("S3"):
        assert (r.dim_TN, r.dim_orbit, r.dim_D) == (4, 3, 1)
        assert r.genericity == "Generic" and r.passed
        assert r.residual_bracket_closure <= bracket_tolerance(DEFAULT_TOL)


@pytest.mark.parametrize("sid", ["S1", "S2", "S3", "S6", "S7", "S8"])
def test_splitting_identity(sid):
    for r in _reports(sid, count=5):
        assert not r.degenerate_metric_on_orbit
        assert r.dim_D + r.dim_orbit == r.dim_TN
        assert all(v >= 0 for v in r.to_dict()["residuals"].values())


def test_degenerate_level_tangent_uses_second_order():
    inst = scenarios.build("S4")
    x = sample(inst.manifold, inst.momentum, inst.level, 1, 1)[0]
    tn, n_deg = level_tangent(inst.manifold, inst.momentum, inst.level, x)
    assert tn.dim == 3 and n_deg == 2


def test_report_serializes():
    d = _reports("S6", count=1)[0].to_dict()
    assert d["dims"]["TN"] == 6 and d["genericity"] == "Generic"
    assert set(d["residuals"]) >= {m[len("residual_"):] for m in MANDATORY}


def test_suite_accepts_id_and_instance():
    a = suite("S6", {"m": 2, "r": 3.0}, seed=1, count=5)
    b = suite(scenarios.build("S6", {"m": 2, "r": 3.0}), seed=1, count=5)
    assert a.passed and b.passed
    assert [c.max_residual for c in a.checks] == [c.max_residual for c in b.checks]
    assert a.check("cr.points_failed").max_residual == 0
    assert a.fact("level_dim").passed


def test_tight_tolerance_produces_failures():
    res = suite("S3", seed=42, count=5, tol=ToleranceProfile(check_tol=1e-15))
    assert not res.passed
    assert any(not c.passed for c in res.checks)
