import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from crsub import hypercomplex as hc

quats = arrays(np.float64, 4, elements=st.floats(-5, 5))


def su2(q):
    """Independent oracle: q as a 2x2 complex matrix."""
    a, b, c, d = q
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def test_units():
    assert np.allclose(hc.qmul(hc.I, hc.J), hc.K)
    assert np.allclose(hc.qmul(hc.J, hc.K), hc.I)
    assert np.allclose(hc.qmul(hc.K, hc.I), hc.J)
    for u in (hc.I, hc.J, hc.K):
        assert np.allclose(hc.qmul(u, u), -hc.ONE)


@settings(max_examples=1000, deadline=None)
@given(quats, quats)
def test_hamilton_product_matches_matrix_oracle(p, q):
    assert np.allclose(su2(hc.qmul(p, q)), su2(p) @ su2(q), atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(quats, quats)
def test_conjugate_reverses_products(p, q):
    lhs = hc.qconj(hc.qmul(p, q))
    rhs = hc.qmul(hc.qconj(q), hc.qconj(p))
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_complex_left_mult_by_i():
    assert np.array_equal(hc.left_mult_operator(1j, 1), np.array([[0.0, -1.0], [1.0, 0.0]]))


def test_quaternion_left_mult_by_i():
    t, x, y, z = 1.0, 2.0, 3.0, 4.0
    out = hc.left_mult_operator(hc.I, 1) @ np.array([t, x, y, z])
    assert np.array_equal(out, [-x, t, -z, y])


def test_right_mult_by_one_is_identity():
    assert np.array_equal(hc.right_mult_operator(hc.ONE, 3), np.eye(12))


@settings(max_examples=100, deadline=None)
@given(quats, quats, quats)
def test_left_and_right_operators_agree_with_qmul_and_commute(c, d, v):
    lm = hc.left_mult_operator(c, 1)
    rm = hc.right_mult_operator(d, 1)
    assert np.allclose(lm @ v, hc.qmul(c, v), atol=1e-9)
    assert np.allclose(rm @ v, hc.qmul(v, d), atol=1e-9)
    assert np.allclose(lm @ rm, rm @ lm, atol=1e-9)


def test_imaginary_part():
    assert np.array_equal(hc.imaginary_part(hc.ONE), [0.0, 0.0, 0.0])
    q = hc.ONE
    assert np.allclose(hc.imaginary_part(hc.qmul(hc.qmul(q, hc.I), hc.qconj(q))), [1, 0, 0])


def test_conjugation_by_one_plus_j():
    q = (hc.ONE + hc.J) / np.sqrt(2)
    out = hc.imaginary_part(hc.qmul(hc.qmul(q, hc.I), hc.qconj(q)))
    assert np.allclose(out, [0.0, 0.0, -1.0], atol=1e-15)


def test_qexp_is_unit_and_matches_series():
    from scipy.linalg import expm
    v = np.array([0.3, -0.2, 0.5])
    q = hc.qexp(v)
    assert np.isclose(np.linalg.norm(q), 1.0)
    assert np.allclose(su2(q), expm(su2(np.concatenate([[0.0], v]))))


def test_layout_round_trips(rng):
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    x = hc.from_complex(z)
    assert np.array_equal(x[:2], [z[0].real, z[0].imag])
    assert np.array_equal(hc.as_complex(x), z)
    q = rng.standard_normal((2, 4))
    assert np.array_equal(hc.as_quaternions(hc.from_quaternions(q)), q)
