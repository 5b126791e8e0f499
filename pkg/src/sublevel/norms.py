"""Order-unit norms and norm scalarization.

For a pointed polyhedral cone C and k in int C the order interval
``[-k, k]_C = (-k + C) ∩ (k - C)`` is a polytope; its gauge is

    ||y||_{C,k} = max_i |<w_i, y>| / <w_i, k>.

On ``a + C`` the norm of ``y - a`` equals ``phi_{a-C,k}(y)``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_cloud, as_vector, distinct_from
from .exceptions import ConsistencyError, HypothesisError, PreconditionError
from .functional import PhiInstance, phi_values
from .scalarize import (
    ANCHOR_TOL,
    _argmin_outcome,
    _check_bound,
    _front,
    _front_certificate,
    _inclusions,
    _solid_cone,
)
from .sets import is_pointed, member_many, require_cone, sample_polyhedral, validate_h2


@dataclass(frozen=True, eq=False)
class OrderUnitNorm:
    cone: object
    k: np.ndarray

    def __post_init__(self):
        C = require_cone(self.cone, "C")
        if not is_pointed(C):
            raise PreconditionError("C must be pointed (normals of full rank)")
        k = as_vector(self.k, C.dim, name="k")
        report = validate_h2(C, k)
        if not report.h2_ok:
            raise HypothesisError("k must lie in int C; " + "; ".join(report.messages), report)
        k.flags.writeable = False
        object.__setattr__(self, "cone", C)
        object.__setattr__(self, "k", k)

    @property
    def dim(self):
        return self.k.size

    def values(self, Y):
        Y = as_cloud(Y, self.dim, allow_empty=True)
        W = self.cone.normals
        return np.max(np.abs(Y @ W.T) / (W @ self.k), axis=1)

    def __call__(self, y):
        return float(self.values(as_vector(y, self.dim)[None, :])[0])


def norm(n, y):
    return n(y)


def norm_values(n, Y):
    return n.values(Y)


@dataclass(frozen=True)
class NormIdentityReport:
    samples: int
    max_deviation: float
    tol: float

    @property
    def ok(self):
        return self.max_deviation <= self.tol


def norm_phi_identity_check(n, a, samples=256, seed=42, tol=1e-9):
    """Compare ``||y - a||_{C,k}`` with ``phi_{a-C,k}(y)`` on random y in a + C."""
    a = as_vector(a, n.dim, name="a")
    rng = np.random.default_rng(seed)
    Y = a + sample_polyhedral(n.cone, rng, samples)
    Y[0] = a
    lhs = n.values(Y - a)
    rhs = phi_values(PhiInstance(n.cone, n.k, a), Y)
    scale = np.maximum(1.0, np.abs(lhs))
    return NormIdentityReport(samples, float(np.max(np.abs(lhs - rhs) / scale)), tol)


def norm_scalarize_argmin(F, C, k, a, D):
    """``Psi = argmin_{y in F} ||y - a||_{C,k}`` for F ⊆ a + C, classified like
    :func:`~sublevel.scalarize.scalarize_argmin` with H = C."""
    n = OrderUnitNorm(C, k)
    F = as_cloud(F, n.dim)
    a = as_vector(a, n.dim, name="a")
    outside = np.flatnonzero(~member_many(n.cone, F - a))
    if outside.size:
        raise PreconditionError(f"point {int(outside[0])} is not in a + C", int(outside[0]))
    return _argmin_outcome(n.values(F - a), _inclusions(n.cone, D), [])


def norm_scalarize_bounded(F, D, a):
    """Eff and WEff for F ⊆ a + int D via ``k_i = y_i - a`` and the norm ``||. - a||_{D,k_i}``.

    Each point has norm exactly 1 under its own k.
    """
    D = _solid_cone(D)
    F = as_cloud(F, D.dim)
    a = as_vector(a, D.dim, name="a")
    _check_bound(F, D, a, "lower", strict=True)
    certs = []
    for i in range(F.shape[0]):
        n = OrderUnitNorm(D, F[i] - a)
        vals = n.values(F - a)
        if abs(vals[i] - 1.0) > ANCHOR_TOL:
            raise ConsistencyError(f"norm {vals[i]!r} at point {i}, expected 1")
        certs.append(_front_certificate(i, n.k, vals, distinct_from(F, i), "anchor 1", True))
    return _front(certs, weak=True)


__all__ = [
    "OrderUnitNorm",
    "norm",
    "norm_values",
    "norm_phi_identity_check",
    "NormIdentityReport",
    "norm_scalarize_argmin",
    "norm_scalarize_bounded",
]
