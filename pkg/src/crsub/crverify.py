"""Pointwise certification that a momentum level set is a CR-submanifold.

``analyze`` runs each step of the argument at one point of the level set and
returns a :class:`CRReport`; ``suite`` samples a registered scenario and runs
every structure, action, momentum and CR check over the sample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import actions as act_mod
from . import structures as st
from .errors import DegenerateRestriction
from .levelset import LevelSpec, level_rows, regularity, sample, sample_manifold
from .momentum import (
    MomentumMapSpec,
    calibrate_scale,
    jacobian_fd_residual,
    kernel_equivalence,
    verify_equivariance,
    verify_hamiltonian_identity,
)
from .numlin import (
    DEFAULT_TOL,
    SubspaceBasis,
    ToleranceProfile,
    inclusion_residual,
    maximal_invariant_subspace,
    metric_complement,
    nullspace,
    span,
)

__all__ = ["CRReport", "level_tangent", "analyze", "SuiteResult", "suite", "MANDATORY"]

MANDATORY = (
    "residual_orbit_in_TN",
    "residual_split_orthogonality",
    "residual_FD_in_D",
    "residual_FDperp_in_normal",
    "residual_totally_real",
    "residual_kernel_equivalence",
)


@dataclass
class CRReport:
    point: np.ndarray
    dim_TM: int = 0
    dim_TN: int = 0
    dim_orbit: int = 0
    dim_D: int = 0
    dim_FD: int = 0
    dim_FDperp: int = 0
    dim_normal_in_M: int = 0
    degenerate_level_rows: int = 0
    residual_orbit_in_TN: float = 0.0
    residual_FD_in_D: float = 0.0
    residual_FDperp_in_normal: float = 0.0
    residual_totally_real: float = 0.0
    residual_split_orthogonality: float = 0.0
    residual_kernel_equivalence: float = 0.0
    residual_bracket_closure: float = 0.0
    genericity: str = "NonGeneric"
    genericity_residuals: tuple = (0.0, 0.0)
    chen_maximal_dim: int = 0
    reeb_tangent: Optional[bool] = None
    reeb_residual: Optional[float] = None
    degenerate_metric_on_orbit: bool = False
    passed: bool = False

    def to_dict(self) -> dict:
        return {
            "dims": {
                "TM": self.dim_TM,
                "TN": self.dim_TN,
                "orbit": self.dim_orbit,
                "D": self.dim_D,
                "FD": self.dim_FD,
                "FDperp": self.dim_FDperp,
                "normal_in_M": self.dim_normal_in_M,
                "chen_maximal": self.chen_maximal_dim,
                "degenerate_level_rows": self.degenerate_level_rows,
            },
            "residuals": {
                "orbit_in_TN": self.residual_orbit_in_TN,
                "FD_in_D": self.residual_FD_in_D,
                "FDperp_in_normal": self.residual_FDperp_in_normal,
                "totally_real": self.residual_totally_real,
                "split_orthogonality": self.residual_split_orthogonality,
                "kernel_equivalence": self.residual_kernel_equivalence,
                "bracket_closure": self.residual_bracket_closure,
            },
            "genericity": self.genericity,
            "genericity_residuals": list(self.genericity_residuals),
            "reeb_tangent": self.reeb_tangent,
            "reeb_residual": self.reeb_residual,
            "degenerate_metric_on_orbit": self.degenerate_metric_on_orbit,
            "passed": self.passed,
        }


def _point_scale(man, mm, x) -> float:
    # reference magnitude for rank cutoffs of quantities that can vanish
    # identically at degenerate points (fields, level rows)
    stacked = np.vstack([man.constraint_jac(x), mm.exact_jacobian(x)])
    s = np.linalg.norm(stacked, 2) if stacked.size else 0.0
    return s if s > 0 else 1.0


def _hessian_fd(grad, x, h):
    n = x.size
    hess = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        hess[:, j] = (grad(x + e) - grad(x - e)) / (2 * h)
    return 0.5 * (hess + hess.T)


def level_tangent(man: st.StructuredManifold, mm: MomentumMapSpec, level: LevelSpec, x,
                  tol: ToleranceProfile = DEFAULT_TOL, scale: float | None = None) -> tuple[SubspaceBasis, int]:
    """Tangent space of the level set at x, and the number of degenerate level rows.

    First order: T_x M intersected with the kernels of the level rows.  Level
    components whose gradient vanishes on T_x M (e.g. |z|^2 at z = 0) carry no
    first-order information; for those the kernel of their Hessian on the
    first-order space is used instead (Lagrange-corrected for the remaining
    constraints).  This is exact when such components are semidefinite, which
    is the case for sums of squared moduli.
    """
    x = np.asarray(x, dtype=float)
    scale = _point_scale(man, mm, x) if scale is None else scale
    tm = st.tangent_space(man, x, tol)
    basis = level.released_basis()
    rows = level_rows(mm, level, x)
    r = rows @ tm.vectors
    u, s, vh = np.linalg.svd(r, full_matrices=True)
    rank = int(np.sum(s > tol.rank_rel_tol * scale))
    v1 = SubspaceBasis(tm.vectors @ vh[rank:].T, man.dim) if rank < tm.dim else SubspaceBasis.zero(man.dim)
    degenerate = u[:, rank:]
    if degenerate.shape[1] == 0 or v1.dim == 0:
        return v1, 0

    h = tol.fd_step
    # first-order rows kept: constraints plus the non-degenerate level combinations
    kept = np.vstack([man.constraint_jac(x), u[:, :rank].T @ rows])

    def kept_grad(i):
        def g(y):
            return np.vstack([man.constraint_jac(y), u[:, :rank].T @ level_rows(mm, level, y)])[i]
        return g

    kept_hess = None
    blocks = []
    for c in degenerate.T:
        def grad(y, c=c):
            return c @ level_rows(mm, level, y)
        hess = _hessian_fd(grad, x, h)
        if kept.shape[0]:
            lam = np.linalg.lstsq(kept.T, grad(x), rcond=None)[0]
            if np.any(np.abs(lam) > 0):
                if kept_hess is None:
                    kept_hess = [_hessian_fd(kept_grad(i), x, h) for i in range(kept.shape[0])]
                hess = hess - np.tensordot(lam, np.array(kept_hess), axes=1)
        blocks.append(v1.vectors.T @ hess @ v1.vectors)
    stacked = np.vstack(blocks)
    null = nullspace(stacked, tol, scale=max(np.linalg.norm(stacked, 2), scale))
    tn = SubspaceBasis(v1.vectors @ null.vectors, man.dim)
    return tn, degenerate.shape[1]


def _projected(sub: SubspaceBasis, onto: SubspaceBasis, tol) -> SubspaceBasis:
    return span(onto.projector @ sub.vectors, tol, scale=1.0)


def analyze(man: st.StructuredManifold, act: act_mod.GroupAction, mm: MomentumMapSpec, level: LevelSpec, x,
            tol: ToleranceProfile = DEFAULT_TOL) -> CRReport:
    """Certify the CR splitting of the level set at x.

    For value levels D_perp is the orbit tangent.  For ray levels it is the
    span of the fields of the annihilator of zeta, plus the Reeb field on
    almost-contact manifolds; the directions along zeta are released.
    """
    x = np.asarray(x, dtype=float)
    regularity(man, mm, level, x, tol)  # raises OffLevel
    rep = CRReport(point=x)
    g = man.metric
    f = man.F(x)
    scale = _point_scale(man, mm, x)

    tm = st.tangent_space(man, x, tol)
    tn, rep.degenerate_level_rows = level_tangent(man, mm, level, x, tol, scale)
    rep.dim_TM, rep.dim_TN = tm.dim, tn.dim

    gens = level.released_basis()  # coefficients of the generators spanning D_perp
    fields = act.fields(x) @ gens
    if level.is_ray and man.is_contact:
        fields = np.hstack([fields, man.reeb(x)[:, None]])
    dperp = span(fields, tol, scale=scale)
    rep.dim_orbit = dperp.dim
    rep.residual_orbit_in_TN = inclusion_residual(dperp, tn)
    if rep.residual_orbit_in_TN > tol.check_tol:
        dperp = _projected(dperp, tn, tol)

    try:
        d = metric_complement(dperp, tn, g, tol)
    except DegenerateRestriction:
        rep.degenerate_metric_on_orbit = True
        rep.passed = False
        return rep
    rep.dim_D = d.dim

    fd = span(f @ d.vectors, tol, scale=1.0)
    rep.dim_FD = fd.dim
    rep.residual_FD_in_D = inclusion_residual(fd, d)

    try:
        normal = metric_complement(tn, tm, g, tol)
    except DegenerateRestriction:
        rep.degenerate_metric_on_orbit = True
        rep.passed = False
        return rep
    rep.dim_normal_in_M = normal.dim
    fdperp = span(f @ dperp.vectors, tol, scale=1.0)
    rep.dim_FDperp = fdperp.dim
    rep.residual_FDperp_in_normal = inclusion_residual(fdperp, normal)

    if dperp.dim and tn.dim:
        rep.residual_totally_real = float(np.max(np.abs(tn.vectors.T @ g @ f @ dperp.vectors)))
    if dperp.dim and d.dim:
        rep.residual_split_orthogonality = float(np.max(np.abs(dperp.vectors.T @ g @ d.vectors)))
    rep.residual_kernel_equivalence = kernel_equivalence(mm, act, man, x, tol, scale)
    rep.residual_bracket_closure = _bracket_closure(act, gens, dperp, x, tol)

    r1 = inclusion_residual(fdperp, normal)
    r2 = inclusion_residual(normal, fdperp)
    rep.genericity_residuals = (r1, r2)
    rep.chen_maximal_dim = maximal_invariant_subspace(tn, f, tol).dim
    generic = (
        max(r1, r2) <= tol.check_tol
        and fdperp.dim == normal.dim
        and rep.chen_maximal_dim == d.dim
    )
    rep.genericity = "Generic" if generic else "NonGeneric"

    if man.is_contact:
        xi = man.reeb(x)
        xi = xi / np.linalg.norm(xi)
        rep.reeb_residual = float(np.linalg.norm(xi - tn.projector @ xi))
        rep.reeb_tangent = rep.reeb_residual <= tol.check_tol

    rep.passed = (
        all(getattr(rep, name) <= tol.check_tol for name in MANDATORY)
        and rep.residual_bracket_closure <= bracket_tolerance(tol)
    )
    return rep


def bracket_tolerance(tol: ToleranceProfile) -> float:
    return 100 * tol.fd_step ** 2


def _bracket_closure(act, gens, dperp, x, tol) -> float:
    """max over pairs of D_perp generators of |(I - P_Dperp)[X, Y](x)|.

    The raw bracket vector is used rather than its normalized span, which is
    meaningless when the bracket vanishes up to rounding.
    """
    d = act.lie_dim
    if d < 2:
        return 0.0
    brackets = np.zeros((d, d, x.size))
    for a in range(d):
        for b in range(a + 1, d):
            brackets[a, b] = act_mod.bracket_fd(act, a, b, x, tol)
            brackets[b, a] = -brackets[a, b]
    worst = 0.0
    k = gens.shape[1]
    for i in range(k):
        for j in range(i + 1, k):
            v = np.einsum("a,b,abn->n", gens[:, i], gens[:, j], brackets)
            worst = max(worst, float(np.linalg.norm(v - dperp.projector @ v)))
    return worst


# ---------------------------------------------------------------------------
# suite


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.passed = bool(self.max_residual <= self.tolerance)

    def to_dict(self):
        return {"name": self.name, "max_residual": self.max_residual,
                "tolerance": self.tolerance, "passed": self.passed}


@dataclass
class Fact:
    name: str
    passed: bool
    detail: str

    def to_dict(self):
        return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}


@dataclass
class SuiteResult:
    scenario: object
    seed: int
    points: list
    tol: ToleranceProfile
    calibration_scale: float
    structure_class: str
    checks: list
    facts: list
    reports: list
    regularities: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(f.passed for f in self.facts)

    @property
    def points_passed(self) -> int:
        return sum(r.passed for r in self.reports)

    def check(self, name) -> Check:
        return next(c for c in self.checks if c.name == name)

    def fact(self, name) -> Fact:
        return next(f for f in self.facts if f.name == name)


def _random_params(rng, d):
    if d == 0:
        return np.zeros(0)
    p = rng.standard_normal(d)
    return p / np.linalg.norm(p) * rng.uniform(0.0, 1.0)


def suite(scenario, params=None, seed: int = 42, count: int = 100,
          tol: ToleranceProfile = DEFAULT_TOL) -> SuiteResult:
    """Sample ``count`` points and run every check of a scenario.

    ``scenario`` is a scenario id or an already built instance.
    """
    from .scenarios import build, evaluate_facts

    inst = build(scenario, params or {}) if isinstance(scenario, str) else scenario
    man, act, mm, level = inst.manifold, inst.action, inst.momentum, inst.level
    pts = sample(man, mm, level, seed, count, tol)
    trials = 20

    worst = {}

    def record(name, value):
        worst[name] = max(worst.get(name, 0.0), float(value))

    classes, ranks_bad, class_bad = [], 0, 0
    reports, regs = [], []
    for i, x in enumerate(pts):
        rng = np.random.default_rng([seed, i, 1])
        record("structure.compatibility", st.check_compatibility(man, x, trials, tol, rng))
        record("structure.F_preserves_TM", st.check_tangency(man, x, tol))
        if man.is_contact:
            record("structure.contact_data", max(st.check_contact_data(man, x)))
        cls = st.classify_structure(man, x, tol)
        classes.append(cls.value)
        class_bad += cls.value != inst.structure_class
        tdim = st.tangent_space(man, x, tol).dim
        ranks_bad += not st.is_maximal_rank(st.omega_rank(man, x, tol), tdim)

        p = _random_params(rng, act.lie_dim)
        record("action.fundamental_fd", act_mod.fundamental_fd_residual(act, x, tol))
        record("action.isometry", act_mod.check_isometry(act, man, p, x, trials, tol, rng))
        record("action.F_equivariance", act_mod.check_F_equivariance(act, man, p, x, tol))

        record("momentum.jacobian_fd", jacobian_fd_residual(mm, x, tol))
        record("momentum.hamiltonian_identity", verify_hamiltonian_identity(mm, act, man, x, tol))
        record("momentum.equivariance", verify_equivariance(mm, act, p, x))

        regs.append(regularity(man, mm, level, x, tol))
        rep = analyze(man, act, mm, level, x, tol)
        reports.append(rep)
        for name in MANDATORY:
            record("cr." + name[len("residual_"):], getattr(rep, name))
        record("cr.bracket_closure", rep.residual_bracket_closure)

    # calibrate on generic points of M: the action may be trivial along the level set
    kappa = calibrate_scale(mm, act, man, sample_manifold(man, seed, 20, tol), tol)

    checks = []
    for name, value in worst.items():
        t = bracket_tolerance(tol) if name == "cr.bracket_closure" else tol.check_tol
        checks.append(Check(name, value, t))
    checks.append(Check("structure.classification_mismatches", class_bad, 0))
    checks.append(Check("structure.omega_rank_not_maximal", ranks_bad, 0))
    checks.append(Check("momentum.calibration_scale", abs(kappa - mm.scale), tol.check_tol))
    checks.append(Check("cr.points_failed", len(pts) - sum(r.passed for r in reports), 0))

    observed_class = max(sorted(set(classes)), key=classes.count)
    facts = evaluate_facts(inst, pts, reports, regs, tol)
    return SuiteResult(
        scenario=inst, seed=seed, points=pts, tol=tol, calibration_scale=kappa,
        structure_class=observed_class, checks=checks, facts=facts,
        reports=reports, regularities=regs,
    )
