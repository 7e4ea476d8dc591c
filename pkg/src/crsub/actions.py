"""Group actions by structure automorphisms.

Group elements are written in exponential coordinates p in R^d.  Every
registered action is affine in x, x -> A(p) x + b(p), generated by
exp(sum_a p_a (A_a, b_a)); ``linear_action`` builds such actions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from .numlin import DEFAULT_TOL, ToleranceProfile
from .structures import StructuredManifold, _random_unit_tangents, tangent_space

__all__ = [
    "GroupAction",
    "linear_action",
    "fundamental_fd_residual",
    "check_isometry",
    "check_F_equivariance",
    "bracket_fd",
]


def _identity_coadjoint(params, covector):
    return np.asarray(covector, dtype=float)


@dataclass(frozen=True)
class GroupAction:
    lie_dim: int
    apply: Callable[[np.ndarray, np.ndarray], np.ndarray]
    fundamental: Callable[[int, np.ndarray], np.ndarray]
    pushforward: Callable[[np.ndarray, np.ndarray], np.ndarray]
    coadjoint: Callable[[np.ndarray, np.ndarray], np.ndarray] = _identity_coadjoint
    bracket_table: Optional[np.ndarray] = None
    name: str = ""

    def fields(self, x) -> np.ndarray:
        """N x d matrix whose columns are the fundamental fields at x."""
        x = np.asarray(x, dtype=float)
        if self.lie_dim == 0:
            return np.zeros((x.size, 0))
        return np.stack([self.fundamental(a, x) for a in range(self.lie_dim)], axis=1)

    @property
    def is_abelian(self) -> bool:
        return self.bracket_table is None or not np.any(self.bracket_table)


def linear_action(
    generators: Sequence[np.ndarray],
    translations: Optional[Sequence[np.ndarray]] = None,
    coadjoint=None,
    bracket_table=None,
    name: str = "",
) -> GroupAction:
    """Action x -> exp(sum p_a X_a) . x for affine generators X_a = (A_a, b_a)."""
    gens = np.array([np.asarray(g, dtype=float) for g in generators])
    d, n = gens.shape[0], gens.shape[1]
    trans = np.zeros((d, n)) if translations is None else np.array(translations, dtype=float)
    # augmented (n+1)x(n+1) generators so translations exponentiate exactly
    aug = np.zeros((d, n + 1, n + 1))
    aug[:, :n, :n] = gens
    aug[:, :n, n] = trans
    for arr in (gens, trans, aug):
        arr.setflags(write=False)

    def group_matrix(params):
        p = np.asarray(params, dtype=float)
        return expm(np.tensordot(p, aug, axes=1))

    def apply(params, x):
        m = group_matrix(params)
        return m[:n, :n] @ x + m[:n, n]

    def fundamental(a, x):
        return gens[a] @ x + trans[a]

    def pushforward(params, x):
        return group_matrix(params)[:n, :n]

    return GroupAction(
        lie_dim=d,
        apply=apply,
        fundamental=fundamental,
        pushforward=pushforward,
        coadjoint=coadjoint or _identity_coadjoint,
        bracket_table=bracket_table,
        name=name,
    )


def fundamental_fd_residual(act: GroupAction, x, tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """max_a |zeta_a(x) - (apply(t e_a, x) - apply(-t e_a, x)) / 2t|."""
    h = tol.fd_step
    worst = 0.0
    for a in range(act.lie_dim):
        e = np.zeros(act.lie_dim)
        e[a] = h
        fd = (act.apply(e, x) - act.apply(-e, x)) / (2 * h)
        worst = max(worst, float(np.max(np.abs(fd - act.fundamental(a, x)))))
    return worst


def check_isometry(act: GroupAction, man: StructuredManifold, params, x, trials: int = 20,
                   tol: ToleranceProfile = DEFAULT_TOL, rng=None) -> float:
    """max |g(AX, AY) - g(X, Y)| over random unit tangent pairs, A the pushforward."""
    rng = np.random.default_rng(0) if rng is None else rng
    t = tangent_space(man, x, tol)
    if t.dim == 0:
        return 0.0
    a = act.pushforward(params, x)
    X = _random_unit_tangents(t, rng, trials)
    Y = _random_unit_tangents(t, rng, trials)
    g = man.metric
    diff = np.einsum("it,ij,jt->t", a @ X, g, a @ Y) - np.einsum("it,ij,jt->t", X, g, Y)
    return float(np.max(np.abs(diff)))


def check_F_equivariance(act: GroupAction, man: StructuredManifold, params, x,
                         tol: ToleranceProfile = DEFAULT_TOL) -> float:
    """max column norm of (A F_x - F_y A) on a basis of T_x M, y = a . x."""
    t = tangent_space(man, x, tol).vectors
    y = act.apply(params, x)
    tangent_space(man, y, tol)  # y must lie on M as well
    a = act.pushforward(params, x)
    r = (a @ man.F(x) - man.F(y) @ a) @ t
    return float(np.max(np.linalg.norm(r, axis=0), initial=0.0))


def bracket_fd(act: GroupAction, a: int, b: int, x, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Lie bracket [zeta_a, zeta_b](x) by central differences along the flows.

    [X, Y](x) = d/dt Y(phi^X_t x) - d/dt X(phi^Y_t x) at t = 0.
    """
    x = np.asarray(x, dtype=float)
    if a == b:
        return np.zeros_like(x)
    h = tol.fd_step

    def along(flow_idx, field_idx):
        e = np.zeros(act.lie_dim)
        e[flow_idx] = h
        plus = act.fundamental(field_idx, act.apply(e, x))
        minus = act.fundamental(field_idx, act.apply(-e, x))
        return (plus - minus) / (2 * h)

    return along(a, b) - along(b, a)
