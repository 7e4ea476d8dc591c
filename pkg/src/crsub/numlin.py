"""Rank-revealing dense linear algebra on real coordinates.

Subspaces are always stored with a Euclidean-orthonormal basis, even when the
metric of interest is indefinite; metric structure only enters through an
explicit Gram matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRestriction

__all__ = [
    "ToleranceProfile",
    "SubspaceBasis",
    "numerical_rank",
    "nullspace",
    "span",
    "metric_complement",
    "inclusion_residual",
    "maximal_invariant_subspace",
]


@dataclass(frozen=True)
class ToleranceProfile:
    rank_rel_tol: float = 1e-8
    check_tol: float = 1e-7
    fd_step: float = 1e-5
    newton_tol: float = 1e-12
    newton_max_iter: int = 100

    def __post_init__(self):
        for name in ("rank_rel_tol", "check_tol", "fd_step", "newton_tol", "newton_max_iter"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    def replace(self, **changes) -> "ToleranceProfile":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return ToleranceProfile(**values)


DEFAULT_TOL = ToleranceProfile()


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace of R^N, stored as the columns of ``vectors``."""

    vectors: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2:
            raise ValueError("vectors must be an (N, k) array")
        n = v.shape[0] if self.ambient_dim < 0 else self.ambient_dim
        if v.shape[0] != n:
            raise ValueError("vector length does not match ambient_dim")
        if v.shape[1] > n:
            raise ValueError("more basis vectors than the ambient dimension")
        if v.shape[1] and np.max(np.abs(v.T @ v - np.eye(v.shape[1]))) > 1e-12:
            raise ValueError("basis vectors are not Euclidean-orthonormal")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "ambient_dim", n)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.vectors @ self.vectors.T

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(np.eye(n))

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(np.zeros((n, 0)), n)

    def __len__(self):
        return self.dim


def _orthonormalize(q: np.ndarray) -> np.ndarray:
    # QR of an already-orthonormal set only cleans up rounding
    if q.shape[1] == 0:
        return q
    q, r = np.linalg.qr(q)
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def _cutoff(s: np.ndarray, tol: ToleranceProfile, scale: float | None) -> float:
    ref = scale if scale is not None else (s[0] if s.size else 0.0)
    return tol.rank_rel_tol * ref


def numerical_rank(matrix, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> int:
    """Rank with singular values below ``rank_rel_tol * scale`` treated as zero.

    ``scale`` defaults to the largest singular value of ``matrix``.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > _cutoff(s, tol, scale)))


def nullspace(matrix, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> SubspaceBasis:
    """Orthonormal basis of ``{x : matrix @ x = 0}``.

    A zero matrix (or one with no rows) yields the whole space.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = a.shape[1]
    if a.shape[0] == 0 or not np.any(a):
        return SubspaceBasis.full(n)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    rank = int(np.sum(s > _cutoff(s, tol, scale)))
    return SubspaceBasis(_orthonormalize(vh[rank:].T.copy()), n)


def span(vectors, tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> SubspaceBasis:
    """Orthonormal basis of the column span of ``vectors`` (N x k).

    The dimension is the numerical rank, so it can be smaller than k.
    """
    a = np.asarray(vectors, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    n = a.shape[0]
    if a.shape[1] == 0 or not np.any(a):
        return SubspaceBasis.zero(n)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > _cutoff(s, tol, scale)))
    return SubspaceBasis(_orthonormalize(u[:, :rank].copy()), n)


def inclusion_residual(a: SubspaceBasis, b: SubspaceBasis) -> float:
    """max over basis vectors v of ``a`` of ``||(I - P_b) v||``; zero iff a is inside b."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if a.dim == 0:
        return 0.0
    # whole-subspace worst case: largest singular value of (I - P_b) A
    r = a.vectors - b.vectors @ (b.vectors.T @ a.vectors)
    return float(np.linalg.norm(r, 2))


def metric_complement(
    sub: SubspaceBasis,
    within: SubspaceBasis,
    gram,
    tol: ToleranceProfile = DEFAULT_TOL,
) -> SubspaceBasis:
    """The ``gram``-orthogonal complement of ``sub`` inside ``within``.

    Raises DegenerateRestriction when ``gram`` restricted to ``sub`` is
    singular; the splitting ``within = sub + complement`` does not exist then.
    """
    g = np.asarray(gram, dtype=float)
    if np.max(np.abs(g - g.T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(g))):
        raise ValueError("gram matrix is not symmetric")
    if inclusion_residual(sub, within) > tol.check_tol:
        raise ValueError("sub is not contained in within")
    if sub.dim == 0:
        return within
    w = within.vectors
    coupling = sub.vectors.T @ g @ w
    c = nullspace(coupling, tol)
    result = SubspaceBasis(_orthonormalize(w @ c.vectors), within.ambient_dim)
    restricted = sub.vectors.T @ g @ sub.vectors
    ev = np.abs(np.linalg.eigvalsh(0.5 * (restricted + restricted.T)))
    ref = max(np.linalg.norm(g, 2), ev.max())
    if ev.min() <= tol.rank_rel_tol * ref or ref == 0.0:
        raise DegenerateRestriction(
            f"metric restricted to a {sub.dim}-dimensional subspace is singular "
            f"(|eigenvalues| in [{ev.min():.3e}, {ev.max():.3e}])",
            basis=result,
        )
    return result


def maximal_invariant_subspace(
    start: SubspaceBasis, operator, tol: ToleranceProfile = DEFAULT_TOL
) -> SubspaceBasis:
    """Largest V inside ``start`` with ``operator @ V`` contained in V.

    Iterates V <- V n operator^-1(V) until the dimension stops dropping.
    """
    f = np.asarray(operator, dtype=float)
    v = start
    while v.dim:
        # coefficients c with F V c in V: (I - P_V) F V c = 0
        fv = f @ v.vectors
        off = fv - v.vectors @ (v.vectors.T @ fv)
        scale = max(np.linalg.norm(fv, 2), 1.0)
        c = nullspace(off, tol, scale=scale)
        if c.dim == v.dim:
            break
        v = SubspaceBasis(_orthonormalize(v.vectors @ c.vectors), v.ambient_dim)
    return v
