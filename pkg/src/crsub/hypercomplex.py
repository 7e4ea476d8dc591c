"""Realification of complex and quaternionic coordinates.

Layouts
-------
complex:    (x0, y0, x1, y1, ...) with z_a = x_a + i y_a
quaternion: (t, x, y, z) per coordinate, q = t + x i + y j + z k, ij = k

Conjugation negates the imaginary part.
"""
from __future__ import annotations

import numbers

import numpy as np

__all__ = [
    "ONE", "I", "J", "K",
    "qmul", "qconj", "qexp", "imaginary_part",
    "left_mult_operator", "right_mult_operator",
    "as_complex", "from_complex", "as_quaternions", "from_quaternions",
]

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])


def qmul(p, q):
    """Hamilton product; broadcasts over leading axes."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a, b, c, d = np.moveaxis(p, -1, 0)
    t, x, y, z = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a * t - b * x - c * y - d * z,
            a * x + b * t + c * z - d * y,
            a * y - b * z + c * t + d * x,
            a * z + b * y - c * x + d * t,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.array(q, dtype=float)
    q[..., 1:] *= -1.0
    return q


def qexp(v):
    """exp of the imaginary quaternion v[0] i + v[1] j + v[2] k."""
    v = np.asarray(v, dtype=float)
    theta = np.linalg.norm(v)
    if theta == 0.0:
        return ONE.copy()
    return np.concatenate([[np.cos(theta)], np.sin(theta) * v / theta])


def imaginary_part(q):
    return np.asarray(q, dtype=float)[..., 1:].copy()


def _left_block(p):
    a, b, c, d = p
    return np.array(
        [[a, -b, -c, -d],
         [b, a, -d, c],
         [c, d, a, -b],
         [d, -c, b, a]]
    )


def _right_block(p):
    a, b, c, d = p
    return np.array(
        [[a, -b, -c, -d],
         [b, a, d, -c],
         [c, -d, a, b],
         [d, c, -b, a]]
    )


def _complex_block(c):
    return np.array([[c.real, -c.imag], [c.imag, c.real]])


def _is_scalar(c):
    return isinstance(c, numbers.Number)


def left_mult_operator(c, n: int) -> np.ndarray:
    """Real matrix of v -> c v on C^n (c a number) or H^n (c a length-4 array)."""
    if _is_scalar(c):
        return np.kron(np.eye(n), _complex_block(complex(c)))
    return np.kron(np.eye(n), _left_block(np.asarray(c, dtype=float)))


def right_mult_operator(c, n: int) -> np.ndarray:
    """Real matrix of v -> v c.  For complex c this coincides with left multiplication."""
    if _is_scalar(c):
        return left_mult_operator(c, n)
    return np.kron(np.eye(n), _right_block(np.asarray(c, dtype=float)))


def as_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 0::2] + 1j * x[..., 1::2]


def from_complex(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def as_quaternions(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x.reshape(x.shape[:-1] + (-1, 4))


def from_quaternions(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return q.reshape(q.shape[:-2] + (-1,))
