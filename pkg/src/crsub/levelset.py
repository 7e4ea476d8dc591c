"""Points of mu^{-1}(v) and mu^{-1}(R_+ zeta) on M, and regularity reports."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OffLevel, SamplingExhausted
from .momentum import MomentumMapSpec
from .numlin import DEFAULT_TOL, ToleranceProfile, nullspace, numerical_rank
from .structures import StructuredManifold

__all__ = [
    "LevelSpec",
    "RegularityReport",
    "level_residual",
    "level_rows",
    "sample",
    "sample_manifold",
    "regularity",
]

MAX_RETRIES = 50


@dataclass(frozen=True)
class LevelSpec:
    """Either a value v (``kind == "value"``) or an open ray R_+ zeta (``kind == "ray"``).

    Ray directions are normalized on construction.
    """

    kind: str
    vector: tuple

    def __post_init__(self):
        if self.kind not in ("value", "ray"):
            raise ValueError("kind must be 'value' or 'ray'")
        v = np.asarray(self.vector, dtype=float)
        if self.kind == "ray":
            norm = np.linalg.norm(v)
            if norm == 0.0:
                raise ValueError("ray direction must be nonzero")
            v = v / norm
        object.__setattr__(self, "vector", tuple(float(c) for c in v))

    @classmethod
    def value(cls, v) -> "LevelSpec":
        return cls("value", tuple(np.atleast_1d(np.asarray(v, dtype=float))))

    @classmethod
    def ray(cls, zeta) -> "LevelSpec":
        return cls("ray", tuple(np.atleast_1d(np.asarray(zeta, dtype=float))))

    @property
    def is_ray(self) -> bool:
        return self.kind == "ray"

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vector)

    def released_basis(self) -> np.ndarray:
        """d x r matrix whose columns span the constrained directions of g*.

        For a value level this is the identity; for a ray it is an orthonormal
        basis of the complement of zeta.
        """
        d = len(self.vector)
        if not self.is_ray:
            return np.eye(d)
        return nullspace(self.array[None, :]).vectors

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vector": list(self.vector)}


@dataclass(frozen=True)
class RegularityReport:
    point: np.ndarray
    stacked_rank: int
    expected_rank: int
    is_regular: bool
    level_dim: int

    def to_dict(self) -> dict:
        return {
            "stacked_rank": self.stacked_rank,
            "expected_rank": self.expected_rank,
            "is_regular": self.is_regular,
            "level_dim": self.level_dim,
        }


def level_rows(mm: MomentumMapSpec, level: LevelSpec, x) -> np.ndarray:
    """Jacobian rows of the level-defining components of the exact map."""
    return level.released_basis().T @ mm.exact_jacobian(x)


def level_residual(man: StructuredManifold, mm: MomentumMapSpec, level: LevelSpec, x) -> tuple[float, float]:
    """(|c(x)|, distance of mu(x) from the level).  For rays the second entry is
    the distance from the line R zeta; positivity is checked separately."""
    c = man.constraint_value(x)
    mu = mm.exact(x)
    if level.is_ray:
        off = level.released_basis().T @ mu
    else:
        off = mu - level.array
    return float(np.linalg.norm(c)), float(np.linalg.norm(off))


def _newton(man, mm, level, y, tol):
    n = man.dim
    ray = level.is_ray
    zeta = level.array

    def residual(y):
        x = y[:n]
        mu = mm.exact(x)
        target = y[n] * zeta if ray else level.array
        return np.concatenate([man.constraint_value(x), mu - target])

    def jac(y):
        x = y[:n]
        rows = np.vstack([man.constraint_jac(x), mm.exact_jacobian(x)])
        if ray:
            extra = np.concatenate([np.zeros(man.codim), -zeta])[:, None]
            rows = np.hstack([rows, extra])
        return rows

    for _ in range(tol.newton_max_iter):
        step = np.linalg.lstsq(jac(y), -residual(y), rcond=None)[0]
        y = y + step
        if not np.all(np.isfinite(y)) or np.linalg.norm(y) > 1e8:
            return None
        # the step criterion keeps polishing degenerate (zero-gradient) components,
        # where Newton only converges linearly
        if np.linalg.norm(residual(y)) <= tol.newton_tol and np.linalg.norm(step) <= 100 * tol.newton_tol:
            return y
    return None


def sample(man: StructuredManifold, mm: MomentumMapSpec, level: LevelSpec, seed: int, count: int,
           tol: ToleranceProfile = DEFAULT_TOL) -> list[np.ndarray]:
    """``count`` points of the level set by Newton iteration from Gaussian starts.

    Point i is produced by a generator seeded with (seed, i), so the list is
    reproducible and its entries independent of one another.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    return [_sample_one(man, mm, level, seed, i, tol) for i in range(count)]


def _sample_one(man, mm, level, seed, index, tol):
    rng = np.random.default_rng([seed, index])
    n = man.dim
    for _ in range(MAX_RETRIES):
        y0 = rng.standard_normal(n)
        if level.is_ray:
            y0 = np.append(y0, abs(rng.standard_normal()))
        y = _newton(man, mm, level, y0, tol)
        if y is None:
            continue
        if level.is_ray and not y[n] > tol.rank_rel_tol:
            continue
        return y[:n]
    raise SamplingExhausted(
        f"no point of the level set found for sample {index} after {MAX_RETRIES} starts"
    )


def sample_manifold(man: StructuredManifold, seed: int, count: int,
                    tol: ToleranceProfile = DEFAULT_TOL) -> list[np.ndarray]:
    """Points of M itself (no level condition), by Newton on the constraints."""
    points = []
    for i in range(count):
        rng = np.random.default_rng([seed, i, 2])
        x = rng.standard_normal(man.dim)
        for _ in range(tol.newton_max_iter):
            c = man.constraint_value(x)
            if np.linalg.norm(c) <= tol.newton_tol:
                break
            x = x + np.linalg.lstsq(man.constraint_jac(x), -c, rcond=None)[0]
        points.append(x)
    return points


def regularity(man: StructuredManifold, mm: MomentumMapSpec, level: LevelSpec, x,
               tol: ToleranceProfile = DEFAULT_TOL, slack: float = 1e3) -> RegularityReport:
    """Rank of the stacked Jacobian [Dc; level rows] at a point of the level set.

    ``slack`` widens newton_tol for the on-level precondition.
    """
    x = np.asarray(x, dtype=float)
    c_res, mu_res = level_residual(man, mm, level, x)
    if max(c_res, mu_res) > slack * tol.newton_tol:
        raise OffLevel(f"point is off the level set (|c| = {c_res:.3e}, |mu - level| = {mu_res:.3e})")
    if level.is_ray and not mm.exact(x) @ level.array > 0:
        raise OffLevel("point maps to the wrong half of the ray's line")
    stacked = np.vstack([man.constraint_jac(x), level_rows(mm, level, x)])
    rank = numerical_rank(stacked, tol)
    expected = stacked.shape[0]
    return RegularityReport(
        point=x,
        stacked_rank=rank,
        expected_rank=expected,
        is_regular=rank == expected,
        level_dim=man.dim - rank,
    )
