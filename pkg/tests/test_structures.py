import numpy as np
import pytest

from crsub import hypercomplex as hc
from crsub.errors import OffManifold
from crsub.numlin import inclusion_residual, nullspace, SubspaceBasis
from crsub.structures import (
    StructureClass,
    check_compatibility,
    check_contact_data,
    check_tangency,
    classify_structure,
    flat_manifold,
    omega,
    omega_rank,
    sasakian_sphere,
    tangent_space,
)


def para_hermitian(n):
    f = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    g = np.diag(np.r_[np.ones(n), -np.ones(n)])
    return flat_manifold(f, g)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_tangent_space_of_s3_at_pole():
    s3 = sasakian_sphere(hc.left_mult_operator(1j, 2))
    t = tangent_space(s3, np.eye(4)[0])
    assert t.dim == 3
    assert inclusion_residual(t, SubspaceBasis(np.eye(4)[:, 1:], 4)) < 1e-14


def test_tangent_space_of_open_set_is_everything(rng):
    c2 = flat_manifold(hc.left_mult_operator(1j, 2))
    assert tangent_space(c2, rng.standard_normal(4)).dim == 4


def test_tangent_space_of_s7():
    s7 = sasakian_sphere(hc.left_mult_operator(1j, 4))
    x = unit(np.eye(8)[0] + np.eye(8)[1])
    t = tangent_space(s7, x)
    assert t.dim == 7
    ref = nullspace((np.eye(8)[0] + np.eye(8)[1])[None, :])
    assert max(inclusion_residual(t, ref), inclusion_residual(ref, t)) < 1e-14


def test_off_manifold_point_is_rejected():
    s3 = sasakian_sphere(hc.left_mult_operator(1j, 2))
    with pytest.raises(OffManifold):
        tangent_space(s3, np.array([1.1, 0.0, 0.0, 0.0]))


def test_flat_complex_compatibility_is_exact(rng):
    c2 = flat_manifold(hc.left_mult_operator(1j, 2))
    assert check_compatibility(c2, rng.standard_normal(4)) <= 1e-15


def test_para_hermitian_compatibility(rng):
    man = para_hermitian(3)
    for _ in range(10):
        assert check_compatibility(man, rng.standard_normal(6), rng=rng) <= 1e-14


def test_corrupted_structure_fails_compatibility(rng):
    f = hc.left_mult_operator(1j, 2).copy()
    f[0, 1] = -f[0, 1]
    bad = flat_manifold(f)
    assert check_compatibility(bad, rng.standard_normal(4)) > 0.1


def test_classification():
    x4 = np.arange(1.0, 9.0)
    assert classify_structure(flat_manifold(hc.left_mult_operator(1j, 4)), x4) is StructureClass.ALMOST_HERMITIAN
    s7 = sasakian_sphere(hc.left_mult_operator(1j, 4))
    assert classify_structure(s7, unit(x4)) is StructureClass.ALMOST_CONTACT
    assert classify_structure(para_hermitian(3), x4[:6]) is StructureClass.ALMOST_PRODUCT


def test_sasakian_identity_on_tangent_vectors(rng):
    jm = hc.left_mult_operator(1j, 4)
    s7 = sasakian_sphere(jm)
    x = unit(rng.standard_normal(8))
    t = tangent_space(s7, x).vectors
    phi = s7.F(x)
    xi = jm @ x
    assert np.allclose(phi @ phi @ t, -t + np.outer(xi, xi @ t), atol=1e-13)
    assert max(check_contact_data(s7, x)) < 1e-14
    assert check_tangency(s7, x) < 1e-14


def test_omega_ranks(rng):
    assert omega_rank(flat_manifold(hc.left_mult_operator(1j, 2)), rng.standard_normal(4)) == 4
    assert omega_rank(sasakian_sphere(hc.left_mult_operator(1j, 4)), unit(rng.standard_normal(8))) == 6
    assert omega_rank(para_hermitian(3), rng.standard_normal(6)) == 6


def test_omega_is_skew(rng):
    man = para_hermitian(2)
    x, X, Y = rng.standard_normal((3, 4))
    assert omega(man, x, X, Y) == pytest.approx(-omega(man, x, Y, X))


def test_signature():
    assert para_hermitian(3).signature == (3, 3)
    assert not para_hermitian(3).is_contact
