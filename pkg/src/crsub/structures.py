"""Structured manifolds (M, g, F) with the 2-form omega(X, Y) = g(X, F Y).

Manifolds are embedded extrinsically in R^N: an optional constraint map
c: R^N -> R^m cuts out M, the metric is a constant symmetric matrix, and the
structure field is evaluated lazily per point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConstraintSingular, OffManifold
from .numlin import DEFAULT_TOL, SubspaceBasis, ToleranceProfile, inclusion_residual, nullspace, numerical_rank, span

__all__ = [
    "StructureClass",
    "StructuredManifold",
    "flat_manifold",
    "sasakian_sphere",
    "omega",
    "tangent_space",
    "check_compatibility",
    "check_tangency",
    "check_contact_data",
    "classify_structure",
    "omega_rank",
]

Field = Callable[[np.ndarray], np.ndarray]


class StructureClass(str, enum.Enum):
    ALMOST_HERMITIAN = "AlmostHermitian"
    ALMOST_CONTACT = "AlmostContact"
    F_STRUCTURE = "FStructure"
    ALMOST_PRODUCT = "AlmostProduct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class StructuredManifold:
    """M inside R^N with constant metric ``metric`` and structure field ``structure``.

    ``constraint``/``constraint_jacobian`` are None for open subsets of R^N.
    ``reeb`` and ``contact_form`` are set only for almost-contact structures;
    ``contact_form(x)`` returns the covector of eta at x.
    """

    dim: int
    metric: np.ndarray
    structure: Field
    constraint: Optional[Field] = None
    constraint_jacobian: Optional[Field] = None
    reeb: Optional[Field] = None
    contact_form: Optional[Field] = None
    name: str = ""

    def __post_init__(self):
        g = np.array(self.metric, dtype=float)
        if g.shape != (self.dim, self.dim):
            raise ValueError("metric has the wrong shape")
        if not np.allclose(g, g.T, atol=1e-14):
            raise ValueError("metric must be symmetric")
        if abs(np.linalg.det(g)) < 1e-12:
            raise ValueError("metric must be invertible")
        g.setflags(write=False)
        object.__setattr__(self, "metric", g)
        if (self.constraint is None) != (self.constraint_jacobian is None):
            raise ValueError("constraint and its Jacobian come together")

    @property
    def codim(self) -> int:
        if self.constraint is None:
            return 0
        return len(np.atleast_1d(self.constraint(np.zeros(self.dim))))

    @property
    def is_contact(self) -> bool:
        return self.reeb is not None

    @property
    def signature(self) -> tuple[int, int]:
        ev = np.linalg.eigvalsh(self.metric)
        return int(np.sum(ev > 0)), int(np.sum(ev < 0))

    def constraint_value(self, x) -> np.ndarray:
        if self.constraint is None:
            return np.zeros(0)
        return np.atleast_1d(self.constraint(x))

    def constraint_jac(self, x) -> np.ndarray:
        if self.constraint_jacobian is None:
            return np.zeros((0, self.dim))
        return np.atleast_2d(self.constraint_jacobian(x))

    def F(self, x) -> np.ndarray:
        return np.asarray(self.structure(x), dtype=float)

    def inner(self, u, v) -> float:
        return float(u @ self.metric @ v)


def flat_manifold(structure_matrix, metric=None, name: str = "") -> StructuredManifold:
    """R^N with a constant structure tensor (Euclidean metric by default)."""
    f = np.array(structure_matrix, dtype=float)
    f.setflags(write=False)
    g = np.eye(f.shape[0]) if metric is None else metric
    return StructuredManifold(dim=f.shape[0], metric=g, structure=lambda x: f, name=name)


def sasakian_sphere(complex_structure, name: str = "") -> StructuredManifold:
    """Unit sphere in R^N with the standard extrinsic Sasakian structure.

    phi_x X = J X - <J X, x> x, xi(x) = J x, eta(X) = <X, J x>, where J is a
    Euclidean-orthogonal complex structure on R^N.
    """
    jm = np.array(complex_structure, dtype=float)
    jm.setflags(write=False)
    n = jm.shape[0]

    def phi(x):
        return (np.eye(n) - np.outer(x, x)) @ jm

    return StructuredManifold(
        dim=n,
        metric=np.eye(n),
        structure=phi,
        constraint=lambda x: np.array([x @ x - 1.0]),
        constraint_jacobian=lambda x: 2.0 * x[None, :],
        reeb=lambda x: jm @ x,
        contact_form=lambda x: jm @ x,
        name=name,
    )


def omega(man: StructuredManifold, x, X, Y) -> float:
    return float(X @ man.metric @ man.F(x) @ Y)


def tangent_space(man: StructuredManifold, x, tol: ToleranceProfile = DEFAULT_TOL) -> SubspaceBasis:
    """T_x M as the kernel of the constraint Jacobian."""
    x = np.asarray(x, dtype=float)
    c = man.constraint_value(x)
    if c.size and np.linalg.norm(c) > tol.newton_tol * max(1.0, np.linalg.norm(x)):
        raise OffManifold(f"|c(x)| = {np.linalg.norm(c):.3e} exceeds newton_tol")
    dc = man.constraint_jac(x)
    if dc.shape[0] == 0:
        return SubspaceBasis.full(man.dim)
    if numerical_rank(dc, tol) < dc.shape[0]:
        raise ConstraintSingular("constraint Jacobian is rank deficient")
    return nullspace(dc, tol)


def _random_unit_tangents(basis: SubspaceBasis, rng, count: int) -> np.ndarray:
    c = rng.standard_normal((basis.dim, count))
    v = basis.vectors @ c
    return v / np.linalg.norm(v, axis=0)


def check_compatibility(man: StructuredManifold, x, trials: int = 20, tol: ToleranceProfile = DEFAULT_TOL, rng=None) -> float:
    """max |g(X, F Y) + g(F X, Y)| over random unit tangent pairs."""
    rng = np.random.default_rng(0) if rng is None else rng
    t = tangent_space(man, x, tol)
    if t.dim == 0:
        return 0.0
    X = _random_unit_tangents(t, rng, trials)
    Y = _random_unit_tangents(t, rng, trials)
    g, f = man.metric, man.F(x)
    vals = np.einsum("it,ij,jt->t", X, g @ f, Y) + np.einsum("it,ij,jt->t", f @ X, g, Y)
    return float(np.max(np.abs(vals)))


def check_tangency(man: StructuredManifold, x, tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """Inclusion residual of F_x(T_x M) in T_x M."""
    t = tangent_space(man, x, tol)
    image = span(man.F(x) @ t.vectors, tol, scale=1.0)
    return inclusion_residual(image, t)


def check_contact_data(man: StructuredManifold, x) -> tuple[float, float]:
    """(|F xi|, |eta(xi) - 1|) at x."""
    xi = man.reeb(x)
    return float(np.linalg.norm(man.F(x) @ xi)), float(abs(man.contact_form(x) @ xi - 1.0))


def classify_structure(man: StructuredManifold, x, tol: ToleranceProfile = DEFAULT_TOL) -> StructureClass:
    """First identity that holds on T_x M, in the order
    F^2 = -1, F^2 = -1 + eta (x) xi, F^3 + F = 0, F^2 = 1 (indefinite g)."""
    t = tangent_space(man, x, tol).vectors
    f = man.F(x)
    ft = f @ t
    f2t = f @ ft
    eps = tol.check_tol

    def small(a):
        return a.size == 0 or np.max(np.abs(a)) <= eps

    if small(f2t + t):
        return StructureClass.ALMOST_HERMITIAN
    if man.is_contact:
        xi, eta = man.reeb(x), man.contact_form(x)
        if small(f2t + t - np.outer(xi, eta @ t)):
            return StructureClass.ALMOST_CONTACT
    if small(f @ f2t + ft):
        return StructureClass.F_STRUCTURE
    p, q = man.signature
    if p and q and small(f2t - t):
        return StructureClass.ALMOST_PRODUCT
    return StructureClass.UNKNOWN


def omega_rank(man: StructuredManifold, x, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    t = tangent_space(man, x, tol).vectors
    w = t.T @ man.metric @ man.F(x) @ t
    return numerical_rank(w, tol)


def is_maximal_rank(rank: int, tangent_dim: int) -> bool:
    return rank == (tangent_dim if tangent_dim % 2 == 0 else tangent_dim - 1)
