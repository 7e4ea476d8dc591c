"""Registry of the scenario families S1-S8.

Each scenario builds a structured manifold, an action by automorphisms, a
momentum map and a level, and lists the facts expected of the level set.
Momentum maps are declared in their printed form (up to an orientation sign
where noted) with the positive constant that makes them exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.linalg import expm

from . import hypercomplex as hc
from .actions import linear_action
from .crverify import Fact
from .errors import InvalidParams, UnknownScenario
from .levelset import LevelSpec
from .momentum import MomentumMapSpec
from .structures import StructureClass, StructuredManifold, flat_manifold, sasakian_sphere

__all__ = ["ParamSpec", "ScenarioDef", "ScenarioInstance", "REGISTRY", "build", "parse_param", "evaluate_facts"]


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # int | float | ints | floats | matrix
    default: object
    doc: str = ""

    def parse(self, text: str):
        try:
            if self.kind == "int":
                return int(text)
            if self.kind == "float":
                return float(text)
            if self.kind == "ints":
                return [int(t) for t in text.split(",")]
            if self.kind == "floats":
                return [float(t) for t in text.split(",")]
            if self.kind == "matrix":
                return [[float(t) for t in row.split(",")] for row in text.split(";")]
        except ValueError as exc:
            raise InvalidParams(f"cannot parse {self.name}={text!r} as {self.kind}") from exc
        raise ValueError(f"unknown parameter kind {self.kind}")

    def describe(self) -> str:
        return f"{self.name}:{self.kind}={_fmt(self.default)}"


def _fmt(v):
    if isinstance(v, list) and v and isinstance(v[0], list):
        return ";".join(",".join(_fmt(c) for c in row) for row in v)
    if isinstance(v, list):
        return ",".join(_fmt(c) for c in v)
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


@dataclass(frozen=True)
class PointFact:
    name: str
    residual: Callable[[np.ndarray], float]
    tolerance: float


@dataclass
class ScenarioInstance:
    id: str
    params: dict
    manifold: StructuredManifold
    action: object
    momentum: MomentumMapSpec
    level: LevelSpec
    structure_class: str
    printed_level: str
    expected: dict = field(default_factory=dict)
    point_facts: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def lie_dim(self) -> int:
        return self.action.lie_dim

    @property
    def ambient_dim(self) -> int:
        return self.manifold.dim


@dataclass(frozen=True)
class ScenarioDef:
    id: str
    title: str
    description: str
    formula: str
    params: tuple
    builder: Callable[[dict, bool], ScenarioInstance]

    def defaults(self) -> dict:
        return {p.name: p.default for p in self.params}

    def param(self, name) -> ParamSpec:
        for p in self.params:
            if p.name == name:
                return p
        raise InvalidParams(f"{self.id} has no parameter {name!r} (known: {', '.join(p.name for p in self.params)})")


# ---------------------------------------------------------------------------
# shared pieces

def _weight_generator(weights) -> np.ndarray:
    """Real generator of z_a -> exp(i w_a t) z_a in the interleaved layout."""
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.diag(np.asarray(weights, dtype=float)), rot)


def _quadratic_moduli(weight_rows, kappa, formula, note=""):
    """Declared map x -> (sum_a W[c, a] |z_a|^2)_c on C^n, interleaved layout."""
    w = np.asarray(weight_rows, dtype=float)
    w2 = np.repeat(w, 2, axis=1)  # weight per real coordinate

    def ev(x):
        return w2 @ (x * x)

    def jac(x):
        return 2.0 * w2 * x[None, :]

    return MomentumMapSpec(lie_dim=w.shape[0], eval=ev, jacobian=jac, scale=kappa, formula=formula, note=note)


def _torus_sphere(weight_rows, name):
    n = len(weight_rows[0])
    man = sasakian_sphere(hc.left_mult_operator(1j, n), name=f"S^{2 * n - 1}")
    act = linear_action([_weight_generator(w) for w in weight_rows], name=name)
    return man, act


def _moduli(x):
    return np.abs(hc.as_complex(x)) ** 2


# ---------------------------------------------------------------------------
# S1

def _s1(p, validate):
    weights = [int(w) for w in p["weights"]]
    n = int(p["n"])
    if validate:
        if n < 2:
            raise InvalidParams("S1 needs n >= 2")
        if len(weights) != n:
            raise InvalidParams(f"S1 needs {n} weights, got {len(weights)}")
        if not (any(w > 0 for w in weights) and any(w < 0 for w in weights)):
            raise InvalidParams("S1 weights must not all have the same sign (the zero level would be empty)")
    man, act = _torus_sphere([weights], "weighted circle")
    mm = _quadratic_moduli([weights], 2.0, "mu(z) = sum_a lambda_a |z_a|^2")
    facts = [PointFact("weighted_sum_zero", lambda x: abs(np.dot(weights, _moduli(x))), 1e-10)]
    values = sorted(set(weights))
    if len(values) == 2 and values[0] < 0 < values[1]:
        a, b = values[1], -values[0]
        pos = np.array(weights) > 0

        def blocks(x):
            m = _moduli(x)
            return max(abs(m[pos].sum() - b / (a + b)), abs(m[~pos].sum() - a / (a + b)))

        facts.append(PointFact(f"block_sums=({b}/{a + b},{a}/{a + b})", blocks, 1e-10))
    return ScenarioInstance(
        id="S1", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.value([0.0]),
        structure_class=StructureClass.ALMOST_CONTACT.value, printed_level="0",
        expected={"level_dim": 2 * n - 2, "dim_orbit": 1, "genericity": "Generic",
                  "regular": True, "reeb_tangent": True},
        point_facts=facts,
        notes=["Block sums follow from a S1 = b S2, S1 + S2 = 1: the positive-weight block has "
               "squared radius b/(a+b), the reverse of the printed radius labels."],
    )


def _s1_defaults(p, given):
    if "weights" in given and "n" not in given:
        p["n"] = len(p["weights"])
    elif "n" in given and "weights" not in given:
        n = int(p["n"])
        p["weights"] = [1] * ((n + 1) // 2) + [-1] * (n // 2)
    return p


# ---------------------------------------------------------------------------
# S2

def _s2(p, validate):
    n = int(p["n"])
    if validate and n < 1:
        raise InvalidParams("S2 needs n >= 1")
    eye, zero = np.eye(n), np.zeros((n, n))
    swap = np.block([[zero, eye], [eye, zero]])
    g = np.block([[eye, zero], [zero, -eye]])
    man = flat_manifold(swap, g, name=f"R^{n} x R^{n}")
    act = linear_action([swap], name="boost")  # d/dt (x cosh t + y sinh t, x sinh t + y cosh t) = (y, x)
    sign = np.concatenate([np.ones(n), -np.ones(n)])

    def printed(x):
        return float(sign @ (x * x))

    mm = MomentumMapSpec(
        lie_dim=1,
        eval=lambda x: np.array([-printed(x)]),
        jacobian=lambda x: (-2.0 * sign * x)[None, :],
        scale=2.0,
        formula="mu(x, y) = sum_j (x_j^2 - y_j^2)",
        note="declared with the orientation sign folded in: exact mu = -(1/2) sum (x_j^2 - y_j^2)",
    )

    def zeta_norm(x):
        z = act.fundamental(0, x)
        return abs(z @ g @ z + 0.5)

    return ScenarioInstance(
        id="S2", params=p, manifold=man, action=act, momentum=mm,
        level=LevelSpec.value([-0.5 / 2.0]),
        structure_class=StructureClass.ALMOST_PRODUCT.value, printed_level="1/2",
        expected={"level_dim": 2 * n - 1, "dim_orbit": 1, "genericity": "Generic", "regular": True},
        point_facts=[
            PointFact("printed_mu=1/2", lambda x: abs(printed(x) - 0.5), 1e-10),
            PointFact("g(zeta,zeta)=-1/2", zeta_norm, 1e-8),
        ],
        notes=["The printed map differs from the exact one by the factor -2 under "
               "omega(X, Y) = g(X, F Y); the printed level 1/2 becomes -1/4."],
    )


# ---------------------------------------------------------------------------
# S3

def _su2_coadjoint(params, v):
    u = hc.qexp(params)
    w = hc.qmul(hc.qmul(hc.qconj(u), np.concatenate([[0.0], v])), u)
    return hc.imaginary_part(w)


def _s3(p, validate):
    n = int(p["n"])
    if validate and n < 2:
        raise InvalidParams("S3 needs n >= 2 (the zero level is empty on S^3)")
    man = sasakian_sphere(hc.left_mult_operator(hc.I, n), name=f"S^{4 * n - 1}")
    units = (hc.I, hc.J, hc.K)
    table = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        table[a, b, c], table[b, a, c] = 2.0, -2.0
    act = linear_action([hc.right_mult_operator(e, n) for e in units],
                        coadjoint=_su2_coadjoint, bracket_table=table, name="SU(2) right multiplication")
    conj = np.diag([1.0, -1.0, -1.0, -1.0])

    def ev(x):
        q = hc.as_quaternions(x)
        return hc.imaginary_part(hc.qmul(hc.qmul(hc.qconj(q), hc.I), q)).sum(axis=0)

    def jac(x):
        q = hc.as_quaternions(x)
        blocks = []
        for qa in q:
            # w -> conj(q) i w + conj(w) i q
            lin = hc.left_mult_operator(hc.qmul(hc.qconj(qa), hc.I), 1) \
                + hc.right_mult_operator(hc.qmul(hc.I, qa), 1) @ conj
            blocks.append(lin[1:])
        return np.hstack(blocks)

    mm = MomentumMapSpec(
        lie_dim=3, eval=ev, jacobian=jac, scale=2.0,
        formula="mu(q) = sum_a q_a i conj(q_a)",
        note="implemented as sum_a conj(q_a) i q_a, the form compatible with right multiplication",
    )
    return ScenarioInstance(
        id="S3", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.value([0.0] * 3),
        structure_class=StructureClass.ALMOST_CONTACT.value, printed_level="0",
        expected={"level_dim": 4 * n - 4, "dim_orbit": 3, "dim_D": 4 * n - 7, "genericity": "Generic",
                  "regular": True, "reeb_tangent": True},
        point_facts=[PointFact("sum conj(q) i q = 0", lambda x: float(np.max(np.abs(ev(x)))), 1e-10)],
        notes=["The printed q i conj(q) fails the momentum identity for right multiplication; "
               "conj(q) i q passes it with constant 2."],
    )


# ---------------------------------------------------------------------------
# S4

def _s4(p, validate):
    l0, l1 = float(p["lam0"]), float(p["lam1"])
    if validate and (l0 == 0.0 or l1 == 0.0):
        raise InvalidParams("S4 weights must be nonzero")
    rows = [[l0, 0, 0, 0], [0, l1, 0, 0]]
    man, act = _torus_sphere(rows, "weighted T^2")
    mm = _quadratic_moduli(rows, 2.0, "mu(z) = (lambda_0 |z_0|^2, lambda_1 |z_1|^2)")
    return ScenarioInstance(
        id="S4", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.value([0.0, 0.0]),
        structure_class=StructureClass.ALMOST_CONTACT.value, printed_level="0",
        expected={"level_dim": 3, "dim_orbit": 0, "regular": False, "reeb_tangent": True,
                  "TN_F_invariant": True},
        point_facts=[PointFact("|z0|^2+|z1|^2=0", lambda x: float(_moduli(x)[:2].sum()), 1e-10)],
        notes=["0 is not a regular value: both level rows vanish on the zero level S^3. "
               "Regularity failure is the expected outcome."],
    )


# ---------------------------------------------------------------------------
# S5

def _s5(p, validate):
    v = int(p["variant"])
    l0, l1 = float(p["lam0"]), float(p["lam1"])
    if validate and v not in (1, 2, 3, 4):
        raise InvalidParams("S5 variant must be 1, 2, 3 or 4")
    if validate and v == 4 and not (l0 > 0 and l1 > 0):
        raise InvalidParams("S5 variant 4 needs positive weights lam0, lam1")
    if v == 1:
        rows, ray, formula = [[1, 1, 0, 0], [0, 0, 1, 1]], (1, 0), "mu(z) = (|z0|^2+|z1|^2, |z2|^2+|z3|^2)"
        facts = [PointFact("|z2|^2+|z3|^2=0", lambda x: float(_moduli(x)[2:].sum()), 1e-10)]
        expected = {"level_dim": 3, "dim_orbit": 1, "dim_FDperp": 0}
    elif v == 2:
        rows, ray = [[1, 0, 0, 0], [0, 1, 1, 1]], (0, 1)
        formula = "mu(z) = (|z0|^2, |z1|^2+|z2|^2+|z3|^2)"
        facts = [PointFact("|z0|^2=0", lambda x: float(_moduli(x)[0]), 1e-10)]
        expected = {"level_dim": 5, "dim_orbit": 1, "dim_FDperp": 0}
    elif v == 3:
        rows, ray = [[-1, 1, 0, 0], [0, 0, 1, 1]], (1, 1)
        formula = "mu(z) = (|z1|^2-|z0|^2, |z2|^2+|z3|^2)"

        def balance(x):
            m = _moduli(x)
            return abs(m[1] - m[0] - m[2] - m[3])

        facts = [
            PointFact("|z1|^2-|z0|^2=|z2|^2+|z3|^2", balance, 1e-10),
            PointFact("|z2|^2+|z3|^2>0", lambda x: float(_moduli(x)[2:].sum() <= 0), 0.0),
        ]
        expected = {"level_dim": 6, "dim_orbit": 2}
    else:
        rows, ray = [[l0, 0, 0, 0], [0, l1, 0, 0]], (1, 1)
        formula = "mu(z) = (lambda_0 |z0|^2, lambda_1 |z1|^2)"

        def ellipsoid(x):
            m = _moduli(x)
            return abs(m[1] * (1 + l1 / l0) + m[2] + m[3] - 1.0)

        facts = [
            PointFact("ellipsoid |z1|^2(1+l1/l0)+|z2|^2+|z3|^2=1", ellipsoid, 1e-10),
            PointFact("z0 != 0", lambda x: float(_moduli(x)[0] <= 0), 0.0),
        ]
        expected = {"level_dim": 6, "dim_orbit": 2}
    man, act = _torus_sphere(rows, f"T^2 variant {v}")
    note = ""
    if v == 2:
        note = "printed map repeats variant 1; this one is derived from the variant 2 action"
    elif v == 3:
        note = "printed first component |z0|^2-|z1|^2 has the opposite sign to the action's exact map"
    mm = _quadratic_moduli(rows, 2.0, formula, note)
    expected.update({"genericity": "NonGeneric", "reeb_tangent": True})
    return ScenarioInstance(
        id="S5", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.ray(ray),
        structure_class=StructureClass.ALMOST_CONTACT.value, printed_level=f"R_+ {ray}",
        expected=expected, point_facts=facts,
        notes=["Ray level: D_perp is spanned by the fields of the annihilator of zeta and the Reeb field."]
        + ([note] if note else []),
    )


# ---------------------------------------------------------------------------
# S6

def _s6(p, validate):
    m, r = int(p["m"]), float(p["r"])
    if validate:
        if m < 1:
            raise InvalidParams("S6 needs an integer m >= 1")
        if r in (0.0, float(m)):
            raise InvalidParams(f"(r, 1) is not a regular value for r in {{0, m}} (r={_fmt(r)}, m={m})")
        if r < 0:
            raise InvalidParams("S6 level is empty for r < 0")
    rows = [[m, 0, 1, 1], [1, 1, 0, 0]]
    man = flat_manifold(hc.left_mult_operator(1j, 4), name="C^4")
    act = linear_action([_weight_generator(w) for w in rows], name="Hirzebruch T^2")
    mm = _quadratic_moduli(np.array(rows) / 2.0, 1.0,
                           "mu(z) = 1/2 (m|z1|^2 + |z3|^2 + |z4|^2, |z1|^2 + |z2|^2)")
    return ScenarioInstance(
        id="S6", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.value([r, 1.0]),
        structure_class=StructureClass.ALMOST_HERMITIAN.value, printed_level=f"({_fmt(r)}, 1)",
        expected={"level_dim": 6, "dim_orbit": 2, "genericity": "Generic", "regular": True},
    )


# ---------------------------------------------------------------------------
# S7

def _u_basis(k):
    basis = []
    for a in range(k):
        e = np.zeros((k, k), dtype=complex)
        e[a, a] = 1j
        basis.append(e)
    for a in range(k):
        for b in range(a + 1, k):
            e = np.zeros((k, k), dtype=complex)
            e[a, b], e[b, a] = 1.0, -1.0
            basis.append(e)
            e = np.zeros((k, k), dtype=complex)
            e[a, b], e[b, a] = 1j, 1j
            basis.append(e)
    return basis


def _pair(h, zeta):
    """<H, zeta> = -1/2 Im Tr(zeta H)."""
    return -0.5 * np.trace(zeta @ h).imag


def _s7(p, validate):
    n, k = int(p["n"]), int(p["k"])
    if validate and (n < 1 or k < 1):
        raise InvalidParams("S7 needs n >= 1 and k >= 1")
    rows_c = n + k
    size = rows_c * k
    basis = _u_basis(k)

    def to_mat(x):
        return hc.as_complex(x).reshape(rows_c, k)

    def from_mat(a):
        return hc.from_complex(a.ravel())

    def right_mult_matrix(zeta):
        cols = [from_mat(to_mat(e) @ zeta) for e in np.eye(2 * size)]
        return np.array(cols).T

    gens = [right_mult_matrix(z) for z in basis]
    # u(k) structure constants in this basis
    flat = np.array([z.ravel() for z in basis]).T
    flat_r = np.vstack([flat.real, flat.imag])
    table = np.zeros((k * k,) * 3)
    for a, za in enumerate(basis):
        for b, zb in enumerate(basis):
            c = za @ zb - zb @ za
            table[a, b] = np.linalg.lstsq(flat_r, np.concatenate([c.ravel().real, c.ravel().imag]), rcond=None)[0]
    herm = [1j * z for z in basis]
    pairing = np.array([[_pair(h, z) for h in herm] for z in basis])

    def coadjoint(params, comps):
        u = expm(sum(pa * z for pa, z in zip(params, basis)))
        h = sum(c * hb for c, hb in zip(np.linalg.solve(pairing, comps), herm))
        h2 = u.conj().T @ h @ u
        return np.array([_pair(h2, z) for z in basis])

    act = linear_action(gens, coadjoint=coadjoint, bracket_table=table, name="U(k) right multiplication")
    man = flat_manifold(hc.left_mult_operator(-1j, size), name=f"(C^{rows_c})^{k}")

    def ev(x):
        a = to_mat(x)
        h = a.conj().T @ a
        return np.array([_pair(h, z) for z in basis])

    def jac(x):
        a = to_mat(x)
        out = np.empty((len(basis), 2 * size))
        for i, z in enumerate(basis):
            b = (z @ a.conj().T).T  # b[r, c] multiplies W[r, c] in Tr(zeta A* W)
            out[i, 0::2] = -b.ravel().imag
            out[i, 1::2] = -b.ravel().real
        return out

    mm = MomentumMapSpec(
        lie_dim=k * k, eval=ev, jacobian=jac, scale=1.0, formula="mu(A) = conj(A)^t A",
        note="u(k)* paired with Hermitian H through <H, zeta> = -1/2 Im Tr(zeta H)",
    )
    ident = np.array([_pair(np.eye(k), z) for z in basis])

    def stiefel(x):
        a = to_mat(x)
        return float(np.max(np.abs(a.conj().T @ a - np.eye(k))))

    return ScenarioInstance(
        id="S7", params=p, manifold=man, action=act, momentum=mm, level=LevelSpec.value(ident),
        structure_class=StructureClass.ALMOST_HERMITIAN.value, printed_level="Id",
        expected={"level_dim": 2 * k * (n + k) - k * k, "dim_orbit": k * k, "genericity": "Generic",
                  "regular": True},
        point_facts=[PointFact("|conj(A)^t A - I| (Stiefel)", stiefel, 1e-10)],
        notes=["omega(X, Y) = Im Tr(conj(X)^t Y) = g(X, F Y) for the Euclidean g forces F = -i."],
    )


# ---------------------------------------------------------------------------
# S8

def _s8(p, validate):
    n = int(p["n"])
    lam = p.get("lam")
    lam = np.eye(n) if lam is None else np.array(lam, dtype=float)
    if validate:
        if n < 1:
            raise InvalidParams("S8 needs n >= 1")
        if lam.shape != (n, n):
            raise InvalidParams(f"S8 lam must be {n}x{n}")
        if abs(np.linalg.det(lam)) < 1e-12:
            raise InvalidParams("S8 lam must be nondegenerate")
    size = 8 * n
    man = flat_manifold(hc.left_mult_operator(hc.I, 2 * n), name=f"H^{n} x H^{n}")
    gens, trans = [], []
    rot = hc.right_mult_operator(hc.I, 1)
    for a in range(n):
        g = np.zeros((size, size))
        g[4 * a:4 * a + 4, 4 * a:4 * a + 4] = rot
        t = np.zeros(size)
        for b in range(n):
            t[4 * n + 4 * b] = -lam[b, a]  # w_b -> w_b - lam[b, a] t_a
        gens.append(g)
        trans.append(t)
    act = linear_action(gens, trans, name="R^n Taub-NUT action")

    def ev(x):
        q = hc.as_quaternions(x)
        qq, w = q[:n], q[n:]
        # i-component of q i conj(q) is t^2 + x^2 - y^2 - z^2
        rot_i = qq[:, 0] ** 2 + qq[:, 1] ** 2 - qq[:, 2] ** 2 - qq[:, 3] ** 2
        return 0.5 * rot_i + lam.T @ w[:, 1]

    def jac(x):
        q = hc.as_quaternions(x)
        out = np.zeros((n, size))
        for a in range(n):
            t, xi, y, z = q[a]
            out[a, 4 * a:4 * a + 4] = [t, xi, -y, -z]
            for b in range(n):
                out[a, 4 * n + 4 * b + 1] = lam[b, a]
        return out

    mm = MomentumMapSpec(
        lie_dim=n, eval=ev, jacobian=jac, scale=1.0,
        formula="mu_a = i-part of (1/2) q_a i conj(q_a) + (1/2) sum_b lambda_a^b (w_b - conj(w_b))",
        note="the translation term pairs with the transpose of lambda; identical for symmetric lambda",
    )
    return ScenarioInstance(
        id="S8", params={**p, "lam": lam.tolist()}, manifold=man, action=act, momentum=mm,
        level=LevelSpec.value([0.0] * n),
        structure_class=StructureClass.ALMOST_HERMITIAN.value, printed_level="0",
        expected={"level_dim": 7 * n, "dim_orbit": n, "dim_D": 6 * n, "genericity": "Generic", "regular": True},
    )


def _s8_defaults(p, given):
    if "lam" not in given:
        p["lam"] = np.eye(int(p["n"])).tolist()
    return p


REGISTRY: dict[str, ScenarioDef] = {}


def _register(sid, title, description, formula, params, builder, fill=None):
    def wrapped(p, validate, given=()):
        if fill is not None:
            p = fill(p, given)
        return builder(p, validate)

    REGISTRY[sid] = ScenarioDef(sid, title, description, formula, tuple(params), wrapped)


_register("S1", "weighted-circle-sphere",
          "weighted circle action on the Sasakian sphere S^{2n-1}, zero level",
          "mu(z) = sum_a lambda_a |z_a|^2",
          [ParamSpec("n", "int", 4, "complex dimension"),
           ParamSpec("weights", "ints", [1, 1, -1, -1], "integer weights, mixed signs")],
          _s1, _s1_defaults)
_register("S2", "para-hyperboloid",
          "boosts on para-Hermitian R^n x R^n, level 1/2",
          "mu(x, y) = sum_j (x_j^2 - y_j^2)",
          [ParamSpec("n", "int", 3)], _s2)
_register("S3", "su2-sphere",
          "SU(2) right multiplication on S^{4n-1} in H^n, zero level",
          "mu(q) = sum_a q_a i conj(q_a)",
          [ParamSpec("n", "int", 2, "quaternionic dimension")], _s3)
_register("S4", "torus-weighted-s7-zero",
          "weighted T^2 on S^7, degenerate zero level S^3",
          "mu(z) = (lambda_0 |z_0|^2, lambda_1 |z_1|^2)",
          [ParamSpec("lam0", "float", 1.0), ParamSpec("lam1", "float", 2.0)], _s4)
_register("S5", "torus-s7-ray",
          "T^2 actions on S^7 with ray levels mu^{-1}(R_+ zeta), four variants",
          "variant-specific, see describe",
          [ParamSpec("variant", "int", 1, "1: S^3, 2: S^5, 3: S^1 x S^5 piece, 4: ellipsoid"),
           ParamSpec("lam0", "float", 1.0, "variant 4 weight"),
           ParamSpec("lam1", "float", 2.0, "variant 4 weight")], _s5)
_register("S6", "hirzebruch-c4",
          "Hirzebruch T^2 action on flat C^4, level (r, 1)",
          "mu(z) = 1/2 (m|z1|^2 + |z3|^2 + |z4|^2, |z1|^2 + |z2|^2)",
          [ParamSpec("m", "int", 1), ParamSpec("r", "float", 2.0)], _s6)
_register("S7", "stiefel",
          "U(k) on complex (n+k) x k matrices, level Id = Stiefel manifold",
          "mu(A) = conj(A)^t A",
          [ParamSpec("n", "int", 2), ParamSpec("k", "int", 2)], _s7)
_register("S8", "taubnut-hk",
          "R^n action on H^n x H^n with complex structure i, zero level",
          "mu_a = i-part of (1/2) q_a i conj(q_a) + (1/2) sum_b lambda_a^b (w_b - conj(w_b))",
          [ParamSpec("n", "int", 2), ParamSpec("lam", "matrix", None, "nondegenerate n x n, default identity")],
          _s8, _s8_defaults)


def get(sid: str) -> ScenarioDef:
    try:
        return REGISTRY[sid]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {sid!r} (known: {', '.join(REGISTRY)})") from None


def parse_param(sid: str, assignment: str):
    """Parse one ``key=value`` override for scenario ``sid``."""
    if "=" not in assignment:
        raise InvalidParams(f"expected key=value, got {assignment!r}")
    key, text = assignment.split("=", 1)
    return key.strip(), get(sid).param(key.strip()).parse(text.strip())


def build(sid: str, params: Optional[dict] = None, validate: bool = True) -> ScenarioInstance:
    """Build scenario ``sid`` with ``params`` over its defaults.

    ``validate=False`` skips the parameter predicates; it exists for negative
    controls such as sampling an empty level set.
    """
    spec = get(sid)
    given = dict(params or {})
    for key in given:
        spec.param(key)
    p = {**spec.defaults(), **given}
    return spec.builder(p, validate, tuple(given))


# ---------------------------------------------------------------------------
# facts

def _dims_fact(name, values, want):
    seen = sorted(set(values))
    return Fact(name, seen == [want], f"expected {want}, observed {seen}")


def evaluate_facts(inst: ScenarioInstance, points, reports, regs, tol) -> list:
    exp = inst.expected
    facts = []
    for key, attr in (("level_dim", "dim_TN"), ("dim_orbit", "dim_orbit"), ("dim_D", "dim_D"),
                      ("dim_FDperp", "dim_FDperp")):
        if key in exp:
            facts.append(_dims_fact(key, [getattr(r, attr) for r in reports], exp[key]))
    if "genericity" in exp:
        got = [r.genericity for r in reports]
        facts.append(Fact("genericity", all(g == exp["genericity"] for g in got),
                          f"expected {exp['genericity']} at all points; "
                          f"{sum(g == exp['genericity'] for g in got)}/{len(got)} match"))
    if "regular" in exp:
        regular = sum(r.is_regular for r in regs)
        if exp["regular"]:
            facts.append(Fact("regularity", regular == len(regs), f"{regular}/{len(regs)} points regular"))
        else:
            facts.append(Fact("regularity_fails_as_expected", regular == 0,
                              f"regularity fails as expected at {len(regs) - regular}/{len(regs)} points"))
    if exp.get("reeb_tangent"):
        ok = sum(bool(r.reeb_tangent) for r in reports)
        worst = max((r.reeb_residual or 0.0) for r in reports)
        facts.append(Fact("reeb_tangent", ok == len(reports), f"{ok}/{len(reports)} points, max residual {worst:.3e}"))
    if exp.get("TN_F_invariant"):
        ok = sum(r.chen_maximal_dim == r.dim_TN for r in reports)
        facts.append(Fact("TN_F_invariant", ok == len(reports), f"{ok}/{len(reports)} points"))
    for pf in inst.point_facts:
        worst = max(pf.residual(x) for x in points)
        facts.append(Fact(pf.name, worst <= pf.tolerance, f"max residual {worst:.3e} (tolerance {pf.tolerance:g})"))
    return facts
