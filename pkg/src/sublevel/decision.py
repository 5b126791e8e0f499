"""Preference relations, domination structures and minimal elements.

A relation ``y1 ≻ y2`` can come from a domination set D (``y2 in y1 + D``),
from the built-in Euclidean-norm rule, or from an explicit table. Properties
of a relation induced by D are read off set properties of D.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import _config
from ._validation import as_cloud, as_vector
from .efficiency import eff
from .exceptions import PreconditionError
from .sets import (
    LinealityStripped,
    as_polyhedral,
    lp_min,
    member,
    member_many,
    sample_set,
    set_dim,
)

SAMPLED = "sampled: no counterexample"


# -- relations ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DominationRelation:
    """``y1 ≻ y2`` iff ``y2 - y1 in D``; with ``strip_zero`` the difference must be nonzero."""

    D: object
    strip_zero: bool = True

    def holds(self, y1, y2):
        d = as_vector(y2) - as_vector(y1)
        if self.strip_zero and not np.any(d != 0):
            return False
        return member(self.D, d)

    def matrix(self, F):
        """``M[i, j] = F[i] ≻ F[j]``."""
        diff = F[None, :, :] - F[:, None, :]
        M = member_many(self.D, diff)
        if self.strip_zero:
            M &= np.any(diff != 0, axis=-1)
        return M


@dataclass(frozen=True)
class Norm2Weak:
    """``y1 ≻ y2`` iff ``||y1||_2 <= ||y2||_2``."""

    def holds(self, y1, y2):
        return bool(np.linalg.norm(as_vector(y1)) <= np.linalg.norm(as_vector(y2)))

    def matrix(self, F):
        r = np.linalg.norm(F, axis=1)
        return r[:, None] <= r[None, :]


@dataclass(frozen=True, eq=False)
class TableRelation:
    """Relation given explicitly on a finite cloud by a boolean matrix."""

    points: np.ndarray
    table: np.ndarray

    def __post_init__(self):
        P = as_cloud(self.points)
        T = np.asarray(self.table, dtype=bool)
        if T.shape != (P.shape[0], P.shape[0]):
            raise ValueError(f"table must be {P.shape[0]}x{P.shape[0]}, got {T.shape}")
        P.flags.writeable = False
        T.flags.writeable = False
        object.__setattr__(self, "points", P)
        object.__setattr__(self, "table", T)

    def index_of(self, y):
        y = as_vector(y, self.points.shape[1])
        hit = np.flatnonzero(np.all(self.points == y, axis=1))
        if hit.size == 0:
            raise PreconditionError(f"point {y.tolist()} is not in the table's cloud")
        return int(hit[0])

    def knows(self, y):
        y = np.asarray(y, dtype=float)
        return bool(np.any(np.all(self.points == y, axis=1)))

    def holds(self, y1, y2):
        return bool(self.table[self.index_of(y1), self.index_of(y2)])

    def matrix(self, F):
        idx = [self.index_of(y) for y in F]
        return self.table[np.ix_(idx, idx)]


def holds(rel, y1, y2):
    return rel.holds(y1, y2)


@dataclass(frozen=True)
class StructureQuery:
    """``pre=False``: is d a domination factor at y (y ≻ y + d)?
    ``pre=True``: is d a pre-domination factor at y (y - d ≻ y)?"""

    y: tuple
    d: tuple
    pre: bool = False


def structure_member(rel, q):
    y, d = as_vector(q.y, name="y"), as_vector(q.d, name="d")
    if y.size != d.size:
        raise PreconditionError("y and d must have the same dimension")
    if q.pre:
        return rel.holds(y - d, y)
    return rel.holds(y, y + d)


def min_relation(F, rel):
    """``Min(F, ≻) = {y0 : for all y in F, y ≻ y0 implies y0 ≻ y}``."""
    F = as_cloud(F)
    M = np.asarray(rel.matrix(F), dtype=bool)
    ok = ~np.any(M & ~M.T, axis=0)
    return tuple(int(i) for i in np.flatnonzero(ok))


# -- properties of the induced relation -------------------------------------------

@dataclass(frozen=True)
class PropertyReport:
    """Each value is True, False or the string ``SAMPLED``."""

    properties: dict
    methods: dict
    counterexamples: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "properties": dict(self.properties),
            "methods": dict(self.methods),
            "counterexamples": {k: np.asarray(v).tolist() for k, v in self.counterexamples.items()},
        }


def _lp_feasible(A_ub, b_ub, n, A_eq=None, b_eq=None):
    res = linprog(np.zeros(n), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(None, None)] * n, method="highs")
    return res.status == 0


def _polyhedral_props(P):
    eps = _config.eps_feas()
    W, c, n = P.normals, P.offsets, P.dim
    reflexive = bool(np.all(c <= 0))
    # D ∩ (-D) = {d : c <= W d <= -c}
    sym_A = np.vstack([-W, W])
    sym_b = np.concatenate([-c, -c])
    meets = _lp_feasible(sym_A, sym_b, n)
    asymmetric = not meets
    if not meets:
        antisymmetric = True
    elif not reflexive:
        antisymmetric = False  # D ∩ (-D) is nonempty and misses 0
    else:
        antisymmetric = _only_zero(sym_A, sym_b, n)
    mins = np.array([lp_min(P, w) for w in W])
    transitive = bool(np.all(2.0 * mins >= c - eps))
    cone = bool(np.all(c <= eps) and np.all(mins >= -eps))
    return {
        "reflexive": reflexive,
        "asymmetric": asymmetric,
        "antisymmetric": antisymmetric,
        "transitive": transitive,
        "cone": cone,
        "convex_cone": cone,  # a polyhedral set is convex
    }


def _only_zero(A, b, n):
    """Whether {x : A x <= b} is exactly {0} (assumed to contain 0)."""
    for i in range(n):
        for s in (1.0, -1.0):
            obj = np.zeros(n)
            obj[i] = -s
            res = linprog(obj, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
            if res.status == 3 or (res.status == 0 and -res.fun > _config.eps_feas()):
                return False
    return True


def _sampled_props(D, samples, seed):
    rng = np.random.default_rng(seed)
    n = set_dim(D)
    d1 = sample_set(D, rng, samples)
    d2 = sample_set(D, rng, samples)
    lam = rng.choice([0.1, 0.5, 2.0, 7.0], samples)
    mu = rng.uniform(0.0, 1.0, samples)[:, None]
    props, cx = {}, {}

    reflexive = member(D, np.zeros(n))
    props["reflexive"] = reflexive

    neg_in = member_many(D, -d1)
    if reflexive:
        props["asymmetric"] = False
        cx["asymmetric"] = np.zeros(n)
    elif neg_in.any():
        props["asymmetric"] = False
        cx["asymmetric"] = d1[np.argmax(neg_in)]
    else:
        props["asymmetric"] = SAMPLED

    bad = neg_in & (np.linalg.norm(d1, axis=1) > _config.eps_feas())
    if bad.any():
        props["antisymmetric"] = False
        cx["antisymmetric"] = d1[np.argmax(bad)]
    else:
        props["antisymmetric"] = SAMPLED

    not_closed = ~member_many(D, d1 + d2)
    if not_closed.any():
        props["transitive"] = False
        cx["transitive"] = np.stack([d1[np.argmax(not_closed)], d2[np.argmax(not_closed)]])
    else:
        props["transitive"] = SAMPLED

    scaled = lam[:, None] * d1
    not_cone = ~member_many(D, scaled) & np.any(scaled != 0, axis=1)
    if not_cone.any():
        props["cone"] = False
        cx["cone"] = d1[np.argmax(not_cone)]
    else:
        props["cone"] = SAMPLED

    not_convex = ~member_many(D, mu * d1 + (1 - mu) * d2)
    if props["cone"] is False:
        props["convex_cone"] = False
    elif not_convex.any():
        props["convex_cone"] = False
        cx["convex_cone"] = np.stack([d1[np.argmax(not_convex)], d2[np.argmax(not_convex)]])
    else:
        props["convex_cone"] = props["cone"] if props["transitive"] is not False else False
    return props, cx


def _and(*vals):
    if any(v is False for v in vals):
        return False
    if all(v is True for v in vals):
        return True
    return SAMPLED


def check_relation_props(D, samples=256, seed=42):
    """Properties of ``y1 ≻ y2 :⟺ y2 in y1 + D`` via set properties of D.

    reflexive ⟺ 0 in D; asymmetric ⟺ D ∩ (-D) empty; antisymmetric ⟺
    D ∩ (-D) ⊆ {0}; transitive ⟺ D + D ⊆ D; scaling invariance ⟺ D ∪ {0}
    is a cone. Polyhedral data is decided exactly by linear programming,
    anything else by seeded sampling.
    """
    P = as_polyhedral(D)
    if P is not None:
        props = _polyhedral_props(P)
        methods = {k: "exact" for k in props}
        cx = {}
    else:
        props, cx = _sampled_props(D, samples, seed)
        methods = {k: ("exact" if k == "reflexive" else "sampled") for k in props}
    props["partial_order"] = _and(props["reflexive"], props["antisymmetric"], props["transitive"])
    props["partial_order_scaling"] = _and(props["partial_order"], props["cone"])
    methods["partial_order"] = methods["partial_order_scaling"] = (
        "exact" if P is not None else "sampled")
    return PropertyReport(props, methods, cx)


# -- bridges -----------------------------------------------------------------------

@dataclass(frozen=True)
class BridgeReport:
    min_indices: tuple
    eff_stripped: tuple
    equal: bool
    antisymmetric: object
    eff_plain: tuple = None
    min_equals_eff: bool = None

    @property
    def ok(self):
        return self.equal and self.min_equals_eff is not False


def min_eff_bridge(F, D):
    """Compare ``Min(F, ≻_D)`` with ``Eff(F, D \\ (-D))``, and with ``Eff(F, D)``
    when D ∩ (-D) ⊆ {0}."""
    F = as_cloud(F, set_dim(D))
    mins = min_relation(F, DominationRelation(D, strip_zero=False))
    stripped = eff(F, LinealityStripped(D)).efficient_indices
    anti = check_relation_props(D).properties["antisymmetric"]
    plain = same = None
    if anti is True or anti == SAMPLED:
        plain = eff(F, D).efficient_indices
        same = plain == mins
    return BridgeReport(mins, stripped, mins == stripped, anti, plain, same)


@dataclass(frozen=True)
class ConstancyReport:
    constant: bool
    violation: tuple = None
    checked: int = 0
    skipped: int = 0


def predomination_constancy_check(rel, grid, probes):
    """Test whether the pre-domination set ``{d : y - d ≻ y}`` is the same for all grid points.

    Table relations skip pairs whose points fall outside the table's cloud.
    """
    grid, probes = as_cloud(grid), as_cloud(probes)
    checked = skipped = 0
    for d in probes:
        seen = None
        for y in grid:
            if isinstance(rel, TableRelation) and not (rel.knows(y - d) and rel.knows(y)):
                skipped += 1
                continue
            v = structure_member(rel, StructureQuery(tuple(y), tuple(d), pre=True))
            checked += 1
            if seen is None:
                seen = (y, v)
            elif v != seen[1]:
                return ConstancyReport(False, (seen[0].tolist(), y.tolist(), d.tolist()),
                                       checked, skipped)
    return ConstancyReport(True, None, checked, skipped)


__all__ = [
    "DominationRelation",
    "Norm2Weak",
    "TableRelation",
    "StructureQuery",
    "holds",
    "structure_member",
    "min_relation",
    "check_relation_props",
    "PropertyReport",
    "min_eff_bridge",
    "BridgeReport",
    "predomination_constancy_check",
    "ConstancyReport",
    "SAMPLED",
]
