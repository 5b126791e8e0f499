"""The functional with uniform sublevel sets.

``phi_{a-H,k}(y) = inf{t in R : y in a - H + t k}``

All level sets are translates ``a - H + t k`` of one closed set along k.
Evaluation works on ``z = y - a`` throughout, so shifting the reference point
is the same floating-point computation as shifting the argument.

Polyhedral H and parabola epigraphs with an axis-aligned k have exact closed
forms; shifts fold into z and a union of translates takes the minimum over
its members. :func:`eval_phi_bisect` is an independent route through the
membership oracle only.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _config
from ._validation import as_cloud, as_vector
from .exceptions import BisectionError, UnsupportedSetError
from .extvalue import NEG_INF, NU, ExtValue, from_array
from .sets import (
    HypothesisReport,
    LinealityStripped,
    ParabolaEpigraph,
    PolyhedralSet,
    Shifted,
    UnionTranslates,
    _contains,
    as_polyhedral,
    member,
    require,
    set_dim,
    validate_h1,
)

T_MAX = 1e15
BISECT_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class PhiInstance:
    """``phi_{a-H,k}``; construction fails unless (H1) holds."""

    H: object
    k: np.ndarray
    a: np.ndarray = None
    hypothesis: HypothesisReport = field(init=False, repr=False)

    def __post_init__(self):
        n = set_dim(self.H)
        k = as_vector(self.k, n, name="k")
        a = np.zeros(n) if self.a is None else as_vector(self.a, n, name="a")
        k.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "hypothesis", require(validate_h1(self.H, k), "h1"))

    @property
    def dim(self):
        return self.k.size

    def with_reference(self, a):
        return PhiInstance(self.H, self.k, a)

    def with_direction(self, k):
        return PhiInstance(self.H, k, self.a)


# -- closed forms ---------------------------------------------------------------

def _phi_raw(S, Z, k, eps):
    """inf{t : t k - z in S} for every row z of Z (nan = nu)."""
    if isinstance(S, PolyhedralSet):
        W, c = S.normals, S.offsets
        wk = W @ k
        pos = wk > eps
        g = -(Z @ W.T)  # <w_i, a - y>
        if pos.any():
            out = np.max((c[pos] - g[:, pos]) / wk[pos], axis=1)
        else:
            out = np.full(Z.shape[0], -np.inf)
        zero = ~pos
        if zero.any():
            stuck = np.any(g[:, zero] < c[zero] - eps, axis=1)
            out = np.where(stuck, np.nan, out)
        return out
    if isinstance(S, Shifted):
        return _phi_raw(S.base, Z + S.shift, k, eps)
    if isinstance(S, UnionTranslates):
        vals = np.stack([_phi_raw(S.base, Z + t, k, eps) for t in S.translates])
        return np.fmin.reduce(vals, axis=0)
    if isinstance(S, ParabolaEpigraph):
        if np.all(k[:-1] == 0) and k[-1] > 0:
            return (Z[:, -1] + np.sum(Z[:, :-1] ** 2, axis=1)) / k[-1]
        return np.array([_bisect(lambda t, z=z: bool(_contains(S, t * k - z, 0.0, False)))
                         .to_float() for z in Z])
    if isinstance(S, LinealityStripped):
        raise UnsupportedSetError("phi needs a closed set; D \\ (-D) is not closed")
    raise UnsupportedSetError(f"not a supported set: {type(S).__name__}")


def _phi_complement_raw(S, Z, k, eps):
    """inf{t : a - y - t k not in int S}, the functional of Y \\ (a - int S) along -k."""
    if isinstance(S, PolyhedralSet):
        W, c = S.normals, S.offsets
        wk = W @ k
        pos = wk > eps
        g = -(Z @ W.T)
        if pos.any():
            out = np.min((g[:, pos] - c[pos]) / wk[pos], axis=1)
        else:
            out = np.full(Z.shape[0], np.nan)
        zero = ~pos
        if zero.any():
            out = np.where(np.any(g[:, zero] <= c[zero] + eps, axis=1), -np.inf, out)
        return out
    if isinstance(S, Shifted):
        return _phi_complement_raw(S.base, Z + S.shift, k, eps)
    if isinstance(S, UnionTranslates):
        # leaving the union of interiors means leaving every translate's interior
        vals = np.stack([_phi_complement_raw(S.base, Z + t, k, eps) for t in S.translates])
        return np.max(vals, axis=0)
    if isinstance(S, ParabolaEpigraph):
        if np.all(k[:-1] == 0) and k[-1] > 0:
            return (-Z[:, -1] - np.sum(Z[:, :-1] ** 2, axis=1)) / k[-1]
    raise UnsupportedSetError(f"complement functional unavailable for {type(S).__name__}")


def phi_values(inst, Y):
    """Vectorized phi over the rows of Y as floats (nan = nu, -inf = NegInf)."""
    Y = as_cloud(Y, inst.dim, allow_empty=True)
    if Y.shape[0] == 0:
        return np.zeros(0)
    return _phi_raw(inst.H, Y - inst.a, inst.k, _config.eps_feas())


def eval_phi(inst, y):
    y = as_vector(y, inst.dim, name="y")
    return ExtValue.from_float(phi_values(inst, y[None, :])[0])


def eval_phi_many(inst, Y):
    return from_array(phi_values(inst, Y))


def eval_phi_complement(inst, y):
    """``phi_{Y \\ (a - int H), -k}(y)``; requires (H2).

    On ``a - bd H + R k`` this equals ``-phi_{a-H,k}(y)``.
    """
    require(inst.hypothesis, "h2")
    y = as_vector(y, inst.dim, name="y")
    z = (y - inst.a)[None, :]
    return ExtValue.from_float(_phi_complement_raw(inst.H, z, inst.k, _config.eps_feas())[0])


def sublevel_member(inst, t, y):
    """Set-theoretic test of ``y in a - H + t k`` (never calls eval_phi)."""
    y = as_vector(y, inst.dim, name="y")
    return member(inst.H, inst.a + float(t) * inst.k - y)


def phi_domain_member(inst, y):
    """``y in dom phi = a - H + R k``: phi(y) is real or -inf."""
    return not eval_phi(inst, y).is_nu


def lipschitz_bound(inst):
    """``max_i ||w_i|| / <w_i, k>`` for polyhedral H under (H2)."""
    require(inst.hypothesis, "h2")
    H = inst.H.base if isinstance(inst.H, UnionTranslates) else inst.H
    P = as_polyhedral(H)
    if P is None:
        raise UnsupportedSetError("Lipschitz bound needs a polyhedral H")
    return float(np.max(np.linalg.norm(P.normals, axis=1) / (P.normals @ inst.k)))


# -- bisection oracle -----------------------------------------------------------

def _bisect(feasible, t_max=T_MAX, rtol=BISECT_RTOL, max_iter=2000):
    """Locate inf{t : feasible(t)} for a predicate nondecreasing in t."""
    if feasible(0.0):
        hi, lo = 0.0, -1.0
        while feasible(lo):
            if lo <= -t_max:
                return ExtValue("-inf", presumed=True)
            hi, lo = lo, max(2.0 * lo, -t_max)
    else:
        lo, hi = 0.0, 1.0
        while not feasible(hi):
            if hi >= t_max:
                return ExtValue("nu", presumed=True)
            lo, hi = hi, min(2.0 * hi, t_max)
    for _ in range(max_iter):
        if hi - lo <= rtol * max(1.0, abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    else:
        raise BisectionError("bisection did not converge")
    probe = hi + abs(hi) + 1.0
    if not feasible(probe):
        raise BisectionError(f"membership is not monotone in t: feasible at {hi!r}, not at {probe!r}")
    return ExtValue.real(0.5 * (lo + hi))


def _on_ray(S, base, k, t):
    """Exact (zero-slack) membership of ``base + t k`` in S.

    Polyhedral rows are evaluated as ``<w, base> + t <w, k>`` so that base is
    not swamped by rounding when |t| is large.
    """
    if isinstance(S, PolyhedralSet):
        return bool(np.all(S.normals @ base + t * (S.normals @ k) >= S.offsets))
    if isinstance(S, Shifted):
        return _on_ray(S.base, base - S.shift, k, t)
    if isinstance(S, UnionTranslates):
        return any(_on_ray(S.base, base - u, k, t) for u in S.translates)
    return bool(_contains(S, base + t * k, 0.0, False))


def eval_phi_bisect(inst, y, t_max=T_MAX, rtol=BISECT_RTOL):
    """phi by bracketing bisection on membership of ``a + t k - y`` in H.

    Uses exact (zero-slack) membership so the result does not depend on the
    feasibility tolerance. Values beyond ``t_max`` come back as NegInf / nu
    with ``presumed=True``.
    """
    y = as_vector(y, inst.dim, name="y")
    H, k, base = inst.H, inst.k, inst.a - y

    def feasible(t):
        return _on_ray(H, base, k, t)

    return _bisect(feasible, t_max, rtol)


def phi_bisect_values(inst, Y, **kw):
    Y = as_cloud(Y, inst.dim, allow_empty=True)
    return np.array([eval_phi_bisect(inst, y, **kw).to_float() for y in Y])


def level_shift_ok(inst, y, s):
    """``phi(y + s k) == phi(y) + s`` for real values (up to rounding)."""
    v0, v1 = eval_phi(inst, y), eval_phi(inst, as_vector(y) + s * inst.k)
    if not (v0.is_real and v1.is_real):
        return v0 == v1
    return math.isclose(v1.value, v0.value + s, rel_tol=1e-12, abs_tol=1e-9)


__all__ = [
    "PhiInstance",
    "eval_phi",
    "eval_phi_many",
    "eval_phi_bisect",
    "eval_phi_complement",
    "phi_values",
    "phi_bisect_values",
    "sublevel_member",
    "phi_domain_member",
    "lipschitz_bound",
    "NEG_INF",
    "NU",
]
