import numpy as np
import pytest

from crsub import scenarios
from crsub.crverify import suite
from crsub.errors import InvalidParams, UnknownScenario


def test_registry_ids():
    assert list(scenarios.REGISTRY) == [f"S{i}" for i in range(1, 9)]


def test_build_schema():
    inst = scenarios.build("S1", {"n": 4, "weights": [1, 1, -1, -1]})
    assert inst.lie_dim == 1 and inst.ambient_dim == 8


def test_same_sign_weights_are_rejected():
    with pytest.raises(InvalidParams):
        scenarios.build("S1", {"n": 2, "weights": [1, 1]})


def test_unknown_scenario_and_param():
    with pytest.raises(UnknownScenario):
        scenarios.build("S9")
    with pytest.raises(InvalidParams):
        scenarios.build("S1", {"colour": 3})
    with pytest.raises(InvalidParams):
        scenarios.parse_param("S1", "weights=a,b")


@pytest.mark.parametrize("r", [0.0, 1.0, -1.0])
def test_hirzebruch_rejects_singular_values(r):
    with pytest.raises(InvalidParams):
        scenarios.build("S6", {"m": 1, "r": r})


def test_parse_param_kinds():
    assert scenarios.parse_param("S1", "weights=1,1,-1,-1") == ("weights", [1, 1, -1, -1])
    assert scenarios.parse_param("S6", "r=2.5") == ("r", 2.5)
    assert scenarios.parse_param("S8", "lam=1,0;0,2") == ("lam", [[1.0, 0.0], [0.0, 2.0]])


def test_stiefel_with_one_column_is_a_sphere():
    inst = scenarios.build("S7", {"n": 2, "k": 1})
    assert inst.ambient_dim == 6
    res = suite(inst, seed=42, count=10)
    assert res.passed
    for x in res.points:
        assert abs(np.linalg.norm(x) - 1.0) <= 1e-10


def test_singular_taub_nut_matrix_is_rejected():
    with pytest.raises(InvalidParams):
        scenarios.build("S8", {"n": 2, "lam": [[1.0, 1.0], [1.0, 1.0]]})


def test_formulas_are_recorded():
    for sid in scenarios.REGISTRY:
        inst = scenarios.build(sid)
        assert "mu" in inst.momentum.formula


@pytest.mark.parametrize("weights", [[1, -1], [1, 1, -1, -1], [2, 2, -3, -3], [1, -2, 3], [3, 1, -1, -5, 2]])
def test_weight_sweep(weights):
    assert suite("S1", {"weights": weights}, seed=42, count=20).passed


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("r", [3.0, 5.0])
def test_hirzebruch_sweep(m, r):
    res = suite("S6", {"m": m, "r": r}, seed=42, count=20)
    assert res.passed and res.fact("level_dim").passed


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_stiefel_sweep(n, k):
    res = suite("S7", {"n": n, "k": k}, seed=42, count=20)
    assert res.passed
    assert {r.dim_TN for r in res.reports} == {2 * k * (n + k) - k * k}
    assert {r.dim_orbit for r in res.reports} == {k * k}


@pytest.mark.parametrize("variant", [1, 2, 3, 4])
def test_ray_variants(variant):
    res = suite("S5", {"variant": variant}, seed=42, count=20)
    assert res.passed
    assert all(r.genericity == "NonGeneric" for r in res.reports)


def test_taub_nut_general_matrix():
    res = suite("S8", {"n": 2, "lam": [[1.0, 2.0], [-0.5, 1.5]]}, seed=3, count=20)
    assert res.passed
