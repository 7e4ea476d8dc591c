"""Momentum maps and the numerical checks of their two defining identities.

A :class:`MomentumMapSpec` carries a *declared* map (a printed formula, with
any orientation sign folded in) together with a positive constant ``scale``
such that ``exact = declared / scale`` satisfies d mu(zeta) = zeta_M -| omega
on the nose.  Constant rescaling leaves zero level sets unchanged; non-zero
level values are transported through the same constant.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .actions import GroupAction
from .errors import InconsistentScale
from .numlin import DEFAULT_TOL, SubspaceBasis, ToleranceProfile, inclusion_residual, nullspace
from .structures import StructuredManifold, tangent_space

__all__ = [
    "MomentumMapSpec",
    "jacobian_fd_residual",
    "omega_rows",
    "verify_hamiltonian_identity",
    "calibrate_scale",
    "verify_equivariance",
    "kernel_equivalence",
]


@dataclass(frozen=True)
class MomentumMapSpec:
    lie_dim: int
    eval: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    scale: float = 1.0
    formula: str = ""
    note: str = ""

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def exact(self, x) -> np.ndarray:
        return np.atleast_1d(self.eval(x)) / self.scale

    def exact_jacobian(self, x) -> np.ndarray:
        return np.atleast_2d(self.jacobian(x)) / self.scale


def jacobian_fd_residual(mm: MomentumMapSpec, x, tol: ToleranceProfile = DEFAULT_TOL) -> float:
    x = np.asarray(x, dtype=float)
    h = tol.fd_step
    jac = np.atleast_2d(mm.jacobian(x))
    fd = np.empty_like(jac)
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        fd[:, j] = (np.atleast_1d(mm.eval(x + e)) - np.atleast_1d(mm.eval(x - e))) / (2 * h)
    return float(np.max(np.abs(fd - jac)))


def omega_rows(act: GroupAction, man: StructuredManifold, x) -> np.ndarray:
    """d x N matrix whose row a is the covector omega(zeta_a(x), .)."""
    return act.fields(x).T @ man.metric @ man.F(x)


def _pairs(mm, act, man, x, tol):
    t = tangent_space(man, x, tol).vectors
    dmu = np.atleast_2d(mm.jacobian(x)) @ t
    om = omega_rows(act, man, x) @ t
    return dmu, om


def verify_hamiltonian_identity(mm: MomentumMapSpec, act: GroupAction, man: StructuredManifold, x,
                                tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """max over generators a and tangent basis W of |d mu_exact(W)_a - omega(zeta_a, W)|."""
    dmu, om = _pairs(mm, act, man, x, tol)
    return float(np.max(np.abs(dmu / mm.scale - om), initial=0.0))


def calibrate_scale(mm: MomentumMapSpec, act: GroupAction, man: StructuredManifold, points: Sequence,
                    tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """Least-squares constant kappa with d mu_declared = kappa * (zeta_M -| omega).

    Raises InconsistentScale if the fit leaves a residual above check_tol
    or if kappa is not positive.
    """
    if len(points) < 5:
        raise ValueError("need at least 5 sample points")
    dmu, om = zip(*(_pairs(mm, act, man, x, tol) for x in points))
    dmu = np.concatenate([d.ravel() for d in dmu])
    om = np.concatenate([o.ravel() for o in om])
    denom = float(om @ om)
    if denom <= 0.0:
        raise ValueError("action is trivial at the sample points")
    kappa = float(dmu @ om) / denom
    residual = float(np.max(np.abs(dmu - kappa * om)))
    if residual > tol.check_tol:
        raise InconsistentScale(
            f"no constant reconciles the declared map with the action (residual {residual:.3e})",
            kappa=kappa, residual=residual,
        )
    if abs(kappa) <= tol.check_tol:
        raise InconsistentScale("declared map does not vary along the action (fitted scale 0)",
                                kappa=kappa, residual=residual)
    if kappa <= 0.0:
        raise InconsistentScale(f"fitted scale {kappa:.6g} is not positive; flip the orientation",
                                kappa=kappa, residual=residual)
    return kappa


def verify_equivariance(mm: MomentumMapSpec, act: GroupAction, params, x) -> float:
    """|| mu(a . x) - Ad*_a mu(x) || for the exact map."""
    lhs = mm.exact(act.apply(params, x))
    rhs = np.asarray(act.coadjoint(params, mm.exact(x)))
    return float(np.linalg.norm(lhs - rhs))


def kernel_equivalence(mm: MomentumMapSpec, act: GroupAction, man: StructuredManifold, x,
                       tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> float:
    """Mutual inclusion residual of ker(d mu) and the omega-annihilator of the orbit,
    both taken inside T_x M."""
    t = tangent_space(man, x, tol)
    dmu = mm.exact_jacobian(x) @ t.vectors
    om = omega_rows(act, man, x) @ t.vectors
    k1 = SubspaceBasis(t.vectors @ nullspace(dmu, tol, scale).vectors, t.ambient_dim)
    k2 = SubspaceBasis(t.vectors @ nullspace(om, tol, scale).vectors, t.ambient_dim)
    return max(inclusion_residual(k1, k2), inclusion_residual(k2, k1))
