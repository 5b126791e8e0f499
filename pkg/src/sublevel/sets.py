"""Closed subsets of R^n used as H, D, C and F+D.

Four representations compose structurally:

* :class:`PolyhedralSet` -- ``{h : <w_i, h> >= c_i for all i}``
* :class:`Shifted` -- ``base + shift``
* :class:`UnionTranslates` -- ``union_j (t_j + base)``
* :class:`ParabolaEpigraph` -- ``{h : h_n >= h_1^2 + ... + h_{n-1}^2}``

plus :class:`LinealityStripped` (``D \\ (-D)``), which only answers
non-strict membership and exists for the preference-relation bridges.

Polyhedral representations are assumed irredundant. Several exact tests
(interior of the recession cone, ``H + D`` inclusions) rely on every
halfspace supporting a facet.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import _config
from ._validation import as_cloud, as_vector
from .exceptions import DimensionError, HypothesisError, PreconditionError, UnsupportedSetError


@dataclass(frozen=True, eq=False)
class PolyhedralSet:
    normals: np.ndarray
    offsets: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        W = np.array(self.normals, dtype=float, ndmin=2)
        c = np.array(self.offsets, dtype=float, ndmin=1).ravel()
        if W.ndim != 2 or W.shape[0] == 0 or W.shape[1] == 0:
            raise DimensionError(f"normals must have shape (m, n) with m, n >= 1, got {W.shape}")
        if c.shape[0] != W.shape[0]:
            raise DimensionError(f"{W.shape[0]} normals but {c.shape[0]} offsets")
        if not (np.all(np.isfinite(W)) and np.all(np.isfinite(c))):
            raise ValueError("normals and offsets must be finite")
        if np.any(np.all(W == 0, axis=1)):
            raise ValueError("every normal must be nonzero")
        W.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "normals", W)
        object.__setattr__(self, "offsets", c)
        if self.check and not _nonempty(W, c):
            raise ValueError("polyhedral set is empty")

    @property
    def dim(self):
        return self.normals.shape[1]

    @property
    def n_halfspaces(self):
        return self.normals.shape[0]

    @classmethod
    def orthant(cls, n):
        """The nonnegative orthant of R^n."""
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def cone(cls, normals):
        W = np.array(normals, dtype=float, ndmin=2)
        return cls(W, np.zeros(W.shape[0]))

    def __repr__(self):
        return f"PolyhedralSet(normals={self.normals.tolist()}, offsets={self.offsets.tolist()})"


@dataclass(frozen=True, eq=False)
class Shifted:
    base: object
    shift: np.ndarray

    def __post_init__(self):
        s = as_vector(self.shift, set_dim(self.base), name="shift")
        s.flags.writeable = False
        object.__setattr__(self, "shift", s)


@dataclass(frozen=True, eq=False)
class UnionTranslates:
    base: object
    translates: np.ndarray

    def __post_init__(self):
        T = as_cloud(self.translates, set_dim(self.base), name="translates")
        T.flags.writeable = False
        object.__setattr__(self, "translates", T)


@dataclass(frozen=True)
class ParabolaEpigraph:
    dim: int

    def __post_init__(self):
        if int(self.dim) < 1:
            raise DimensionError("ParabolaEpigraph needs dim >= 1")


@dataclass(frozen=True, eq=False)
class LinealityStripped:
    """``base \\ (-base)``: d is a member iff d in base and -d not in base."""

    base: object


SET_TYPES = (PolyhedralSet, Shifted, UnionTranslates, ParabolaEpigraph, LinealityStripped)


def set_dim(S):
    if isinstance(S, (PolyhedralSet, ParabolaEpigraph)):
        return S.dim
    if isinstance(S, (Shifted, UnionTranslates, LinealityStripped)):
        return set_dim(S.base)
    raise UnsupportedSetError(f"not a supported set: {type(S).__name__}")


def _nonempty(W, c):
    # cheap probes first: a single halfspace, or 0 feasible
    if W.shape[0] == 1 or np.all(c <= 0):
        return True
    res = linprog(np.zeros(W.shape[1]), A_ub=-W, b_ub=-c, bounds=[(None, None)] * W.shape[1],
                  method="highs")
    return res.status == 0


# -- membership ---------------------------------------------------------------

def _contains(S, Y, eps, strict):
    """Vectorized membership over the last axis of ``Y``."""
    if isinstance(S, PolyhedralSet):
        slack = Y @ S.normals.T - S.offsets
        return np.all(slack > eps, axis=-1) if strict else np.all(slack >= -eps, axis=-1)
    if isinstance(S, Shifted):
        return _contains(S.base, Y - S.shift, eps, strict)
    if isinstance(S, UnionTranslates):
        out = np.zeros(Y.shape[:-1], dtype=bool)
        for t in S.translates:
            out |= _contains(S.base, Y - t, eps, strict)
        return out
    if isinstance(S, ParabolaEpigraph):
        gap = Y[..., -1] - np.sum(Y[..., :-1] ** 2, axis=-1)
        return gap > eps if strict else gap >= -eps
    if isinstance(S, LinealityStripped):
        if strict:
            raise UnsupportedSetError("interior queries are not supported for D \\ (-D)")
        return _contains(S.base, Y, eps, False) & ~_contains(S.base, -Y, eps, False)
    raise UnsupportedSetError(f"not a supported set: {type(S).__name__}")


def _points(S, Y):
    Y = np.asarray(Y, dtype=float)
    if Y.shape[-1] != set_dim(S):
        raise DimensionError(f"point dimension {Y.shape[-1]} does not match set dimension {set_dim(S)}")
    return Y


def member(S, y, eps=None):
    """True iff ``y`` lies in ``S`` up to the feasibility tolerance."""
    eps = _config.eps_feas() if eps is None else eps
    return bool(_contains(S, _points(S, as_vector(y)), eps, False))


def interior_member(S, y, eps=None):
    """True iff ``y`` lies in the interior of ``S`` with margin > eps.

    For a union of translates this is the union of the translates' interiors,
    which under-approximates the interior of the union.
    """
    eps = _config.eps_feas() if eps is None else eps
    return bool(_contains(S, _points(S, as_vector(y)), eps, True))


def member_many(S, Y, eps=None):
    eps = _config.eps_feas() if eps is None else eps
    return _contains(S, _points(S, Y), eps, False)


def interior_member_many(S, Y, eps=None):
    eps = _config.eps_feas() if eps is None else eps
    return _contains(S, _points(S, Y), eps, True)


def has_interior(S):
    if isinstance(S, PolyhedralSet):
        # Chebyshev-ball LP: max r s.t. <w_i, x> - r ||w_i|| >= c_i, r <= 1
        W, c = S.normals, S.offsets
        norms = np.linalg.norm(W, axis=1)
        A = np.hstack([-W, norms[:, None]])
        obj = np.zeros(S.dim + 1)
        obj[-1] = -1.0
        res = linprog(obj, A_ub=A, b_ub=-c, bounds=[(None, None)] * S.dim + [(None, 1.0)],
                      method="highs")
        return res.status == 0 and -res.fun > _config.eps_feas()
    if isinstance(S, (Shifted, UnionTranslates)):
        return has_interior(S.base)
    if isinstance(S, ParabolaEpigraph):
        return True
    raise UnsupportedSetError(f"interior queries unsupported for {type(S).__name__}")


# -- structural transforms ----------------------------------------------------

def as_polyhedral(S):
    """Flatten a chain of shifts over a polyhedral set; None when impossible."""
    if isinstance(S, PolyhedralSet):
        return S
    if isinstance(S, Shifted):
        base = as_polyhedral(S.base)
        if base is None:
            return None
        return PolyhedralSet(base.normals, base.offsets + base.normals @ S.shift, check=False)
    return None


def negate(S):
    """The reflected set ``-S``."""
    if isinstance(S, PolyhedralSet):
        return PolyhedralSet(-S.normals, S.offsets, check=False)
    if isinstance(S, Shifted):
        return Shifted(negate(S.base), -S.shift)
    if isinstance(S, UnionTranslates):
        return UnionTranslates(negate(S.base), -S.translates)
    raise UnsupportedSetError(f"cannot negate {type(S).__name__}")


def recession_cone(P):
    """``0+P`` of a polyhedral set: same normals, zero offsets."""
    if not isinstance(P, PolyhedralSet):
        flat = as_polyhedral(P)
        if flat is None:
            raise UnsupportedSetError("recession_cone expects a polyhedral set")
        P = flat
    return PolyhedralSet(P.normals, np.zeros(P.n_halfspaces), check=False)


def in_recession_cone(S, u, eps=None):
    eps = _config.eps_feas() if eps is None else eps
    u = np.asarray(u, dtype=float)
    if isinstance(S, PolyhedralSet):
        return bool(np.all(S.normals @ u >= -eps))
    if isinstance(S, (Shifted, UnionTranslates)):
        # for unions this is the base cone, a subset of the true recession cone
        return in_recession_cone(S.base, u, eps)
    if isinstance(S, ParabolaEpigraph):
        return bool(np.all(np.abs(u[:-1]) <= eps) and u[-1] >= -eps)
    raise UnsupportedSetError(f"recession cone unavailable for {type(S).__name__}")


def in_recession_interior(S, u, eps=None):
    eps = _config.eps_feas() if eps is None else eps
    u = np.asarray(u, dtype=float)
    if isinstance(S, PolyhedralSet):
        return bool(np.all(S.normals @ u > eps))
    if isinstance(S, (Shifted, UnionTranslates)):
        return in_recession_interior(S.base, u, eps)
    if isinstance(S, ParabolaEpigraph):
        # the recession cone is a ray: empty interior unless n == 1
        return S.dim == 1 and bool(u[0] > eps)
    raise UnsupportedSetError(f"recession cone unavailable for {type(S).__name__}")


# -- hypotheses ---------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisReport:
    h1_ok: bool
    h2_ok: bool
    k_in_recession: bool
    k_in_recession_interior: bool
    lineality_hit: bool
    messages: tuple = ()

    def to_dict(self):
        return {
            "h1_ok": self.h1_ok,
            "h2_ok": self.h2_ok,
            "k_in_recession": self.k_in_recession,
            "k_in_recession_interior": self.k_in_recession_interior,
            "lineality_hit": self.lineality_hit,
            "messages": list(self.messages),
        }


def _h2_violations(S, k, eps):
    """Messages for every place where H + R_> k is not inside int H."""
    if isinstance(S, PolyhedralSet):
        wk = S.normals @ k
        return [f"(H2): H+R>k ⊆ int H violated at row {i} (<w,k> = {wk[i]:.17g})"
                for i in np.flatnonzero(wk <= eps)]
    if isinstance(S, (Shifted, UnionTranslates)):
        return _h2_violations(S.base, k, eps)
    if isinstance(S, ParabolaEpigraph):
        if np.all(k[:-1] == 0) and k[-1] > eps:
            return []
        return ["(H2): H+R>k ⊆ int H needs k = (0, ..., 0, kappa) with kappa > 0 for a parabola epigraph"]
    raise UnsupportedSetError(f"hypotheses cannot be checked for {type(S).__name__}")


def _report(H, k):
    eps = _config.eps_feas()
    k = as_vector(k, set_dim(H), name="k")
    messages = []
    nonzero = bool(np.any(k != 0))
    if not nonzero:
        messages.append("(H1): k must be nonzero")
    rec = in_recession_cone(H, k, eps)
    if not rec:
        messages.append("(H1): k ∈ 0+H violated")
        poly = as_polyhedral(H.base if isinstance(H, UnionTranslates) else H)
        if poly is not None:
            for i in np.flatnonzero(poly.normals @ k < -eps):
                messages.append(f"(H1): <w,k> < 0 at row {i}")
    lineality = rec and in_recession_cone(H, -k, eps)
    if lineality:
        messages.append("k and -k both lie in 0+H: the functional does not attain any real value")
    h1 = nonzero and rec
    h2_msgs = _h2_violations(H, k, eps)
    h2 = h1 and not h2_msgs
    if h1:
        messages.extend(h2_msgs)
    rec_int = rec and in_recession_interior(H, k, eps)
    return HypothesisReport(h1, h2, rec, rec_int, lineality, tuple(messages))


def validate_h1(H, k):
    """Check (H1): k nonzero and in the recession cone of the proper closed set H."""
    return _report(H, k)


def validate_h2(H, k):
    """Check (H2): (H1) and H + R_> k inside int H.

    Polyhedral H: every <w_i, k> > 0. Parabola epigraph: k = (0, ..., 0, kappa).
    """
    return _report(H, k)


def require(report, which="h1"):
    ok = report.h1_ok if which == "h1" else report.h2_ok
    if not ok:
        tag = "(H1)" if which == "h1" else "(H2)"
        detail = "; ".join(report.messages) or f"{tag} does not hold"
        raise HypothesisError(detail, report)
    return report


def build_f_plus_d(F, D):
    """``F + D`` as a union of translates of D."""
    F = as_cloud(F, set_dim(D), allow_empty=True)
    if F.shape[0] == 0:
        raise PreconditionError("F + D needs a nonempty point cloud")
    return UnionTranslates(D, F)


# -- polyhedral cone utilities --------------------------------------------------

def is_cone(P, eps=None):
    """Offsets all zero (up to eps), i.e. an irredundant polyhedral cone."""
    eps = _config.eps_feas() if eps is None else eps
    return bool(np.all(np.abs(P.offsets) <= eps))


def require_cone(S, name="D"):
    P = as_polyhedral(S)
    if P is None or not is_cone(P):
        raise PreconditionError(f"{name} must be a polyhedral cone (zero offsets)")
    return PolyhedralSet(P.normals, np.zeros(P.n_halfspaces), check=False)


def lineality_dim(P):
    """Dimension of {u : <w_i, u> = 0 for all i}."""
    return P.dim - int(np.linalg.matrix_rank(P.normals))


def is_pointed(P):
    return lineality_dim(P) == 0


def lp_min(P, w):
    """min <w, d> over d in P; -inf when unbounded."""
    res = linprog(np.asarray(w, dtype=float), A_ub=-P.normals, b_ub=-P.offsets,
                  bounds=[(None, None)] * P.dim, method="highs")
    if res.status == 3:
        return -np.inf
    if res.status != 0:
        raise ValueError(f"linear program failed: {res.message}")
    return float(res.fun)


def contained_in_recession(D, H):
    """Polyhedral test of ``H + D ⊆ H``, i.e. D inside 0+H."""
    eps = _config.eps_feas()
    return all(lp_min(D, w) >= -eps for w in H.normals)


def contained_in_recession_interior(D, H):
    """Polyhedral test of ``H + (D \\ {0}) ⊆ int H``.

    Equivalent to <w_i, d> > 0 for all rows of H and all nonzero d in D.
    When 0 lies in D only the tangent cone of D at 0 matters; it must be
    pointed, and the test runs over the slice {sum_j <v_j, d> = 1}.
    """
    eps = _config.eps_feas()
    if not member(D, np.zeros(D.dim)):
        return all(lp_min(D, w) > eps for w in H.normals)
    V = D.normals[np.abs(D.offsets) <= eps]
    if V.shape[0] == 0 or np.linalg.matrix_rank(V) < D.dim:
        # a line through 0 stays in D: both d and -d cannot be strictly positive
        return False
    s = V.sum(axis=0)
    for w in H.normals:
        res = linprog(w, A_ub=-V, b_ub=np.zeros(V.shape[0]), A_eq=s[None, :], b_eq=[1.0],
                      bounds=[(None, None)] * D.dim, method="highs")
        if res.status == 2:
            return True  # D = {0}
        if res.status != 0 or res.fun <= eps:
            return False
    return True


def interior_contained_in_recession(D, H):
    """Polyhedral test of ``H + int D ⊆ H`` (vacuous when int D is empty)."""
    if not has_interior(D):
        return True
    return contained_in_recession(D, H)


# -- sampling -------------------------------------------------------------------

def sample_polyhedral(P, rng, count, scale=1.0):
    """Random points of a polyhedral set along rays from a feasible anchor.

    Unbounded directions get an exponential step of mean ``scale``.
    """
    anchor = _anchor(P)
    G = rng.standard_normal((count, P.dim))
    WG = G @ P.normals.T
    slack = anchor @ P.normals.T - P.offsets
    with np.errstate(divide="ignore", invalid="ignore"):
        limits = np.where(WG < 0, slack / -WG, np.inf)
    tmax = limits.min(axis=1)
    steps = np.where(np.isfinite(tmax), rng.uniform(0, 1, count) * tmax,
                     rng.exponential(scale, count))
    return anchor + steps[:, None] * G


def _anchor(P):
    """A point of P, deep inside when P has interior (Chebyshev centre, radius <= 1)."""
    norms = np.linalg.norm(P.normals, axis=1)
    A = np.hstack([-P.normals, norms[:, None]])
    obj = np.zeros(P.dim + 1)
    obj[-1] = -1.0
    res = linprog(obj, A_ub=A, b_ub=-P.offsets, bounds=[(None, None)] * P.dim + [(0.0, 1.0)],
                  method="highs")
    if res.status != 0:
        raise ValueError(f"cannot find a point of the polyhedral set: {res.message}")
    return np.asarray(res.x[:-1], dtype=float)


def sample_set(S, rng, count, scale=1.0):
    """Random members of S (polyhedral-based or parabola epigraph)."""
    if isinstance(S, PolyhedralSet):
        return sample_polyhedral(S, rng, count, scale)
    if isinstance(S, Shifted):
        return sample_set(S.base, rng, count, scale) + S.shift
    if isinstance(S, UnionTranslates):
        base = sample_set(S.base, rng, count, scale)
        return base + S.translates[rng.integers(0, len(S.translates), count)]
    if isinstance(S, ParabolaEpigraph):
        X = rng.standard_normal((count, S.dim - 1)) * scale
        top = np.sum(X ** 2, axis=1) + rng.exponential(scale, count)
        return np.hstack([X, top[:, None]])
    raise UnsupportedSetError(f"cannot sample {type(S).__name__}")
