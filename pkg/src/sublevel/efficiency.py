"""Efficient and weakly efficient elements of finite point clouds.

``Eff(F, D)``: points y0 of F with no other y in F such that ``y0 - y in D``.
``WEff(F, D) = Eff(F, int D)``.

Dominance is decided by an O(n^2) pairwise scan; the weakly efficient set can
also be located on the boundary of F + D through the functional
``phi_{F+D,-k}``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _config
from ._validation import as_cloud, as_vector
from .exceptions import ConsistencyError, HypothesisError, PreconditionError, UnsupportedSetError
from .extvalue import ExtValue
from .functional import PhiInstance, phi_values
from .sets import (
    build_f_plus_d,
    contained_in_recession_interior,
    has_interior,
    member_many,
    interior_member_many,
    negate,
    require,
    require_cone,
    set_dim,
    validate_h2,
)

_CHUNK = 256


@dataclass(frozen=True)
class EffResult:
    """Index sets are sorted tuples; witnesses map a rejected index to a dominating one."""

    efficient_indices: tuple = None
    weakly_efficient_indices: tuple = None
    dominance_witness: dict = field(default_factory=dict)
    all_witnesses: dict = None

    @property
    def indices(self):
        if self.efficient_indices is not None:
            return self.efficient_indices
        return self.weakly_efficient_indices

    def to_dict(self):
        out = {}
        if self.efficient_indices is not None:
            out["efficient"] = list(self.efficient_indices)
        if self.weakly_efficient_indices is not None:
            out["weakly_efficient"] = list(self.weakly_efficient_indices)
        out["witness"] = {str(i): j for i, j in sorted(self.dominance_witness.items())}
        if self.all_witnesses is not None:
            out["all_witnesses"] = {str(i): list(js) for i, js in sorted(self.all_witnesses.items())}
        return out


def dominance_matrix(F, D, strict=False):
    """``M[i, j]`` is True when y_j dominates y_i: y_i - y_j in D (or int D), y_j != y_i."""
    F = as_cloud(F, set_dim(D), allow_empty=True)
    n = F.shape[0]
    M = np.zeros((n, n), dtype=bool)
    contains = interior_member_many if strict else member_many
    for lo in range(0, n, _CHUNK):
        block = F[lo:lo + _CHUNK]
        diff = block[:, None, :] - F[None, :, :]
        M[lo:lo + _CHUNK] = contains(D, diff) & np.any(diff != 0, axis=-1)
    return M


def _scan(M, all_witnesses, S=None):
    """Witness: the first strictly dominating index when ``S`` flags one, else the first."""
    dominated = M.any(axis=1)
    keep = tuple(int(i) for i in np.flatnonzero(~dominated))
    if S is None:
        S = M
    witness = {int(i): int(np.argmax(S[i])) if S[i].any() else int(np.argmax(M[i]))
               for i in np.flatnonzero(dominated)}
    full = None
    if all_witnesses:
        full = {int(i): tuple(int(j) for j in np.flatnonzero(M[i])) for i in np.flatnonzero(dominated)}
    return keep, witness, full


def eff(F, D, all_witnesses=False):
    """Brute-force ``Eff(F, D)``. Equal points never disqualify each other."""
    F = as_cloud(F, set_dim(D), allow_empty=True)
    M = dominance_matrix(F, D)
    S = None
    if M.any():
        try:
            S = dominance_matrix(F, D, strict=True) & M
        except UnsupportedSetError:
            pass
    keep, witness, full = _scan(M, all_witnesses, S)
    return EffResult(efficient_indices=keep, dominance_witness=witness, all_witnesses=full)


def weff(F, D, all_witnesses=False):
    """Brute-force ``WEff(F, D) = Eff(F, int D)``; all of F when int D is empty."""
    F = as_cloud(F, set_dim(D), allow_empty=True)
    if not has_interior(D):
        return EffResult(weakly_efficient_indices=tuple(range(F.shape[0])),
                         all_witnesses={} if all_witnesses else None)
    keep, witness, full = _scan(dominance_matrix(F, D, strict=True), all_witnesses)
    return EffResult(weakly_efficient_indices=keep, dominance_witness=witness, all_witnesses=full)


def efficient_sets(F, D):
    """Both sets at once; witnesses are those of the (non-strict) efficiency scan."""
    e, w = eff(F, D), weff(F, D)
    return EffResult(e.efficient_indices, w.weakly_efficient_indices, e.dominance_witness)


# -- boundary localization ------------------------------------------------------

def boundary_instance(F, D, k):
    """``phi_{F+D,-k}`` as a functional instance: ``F + D = 0 - (-(F + D))``."""
    D = require_cone(D)
    F = as_cloud(F, D.dim)
    require(validate_h2(D, k), "h2")
    return PhiInstance(negate(build_f_plus_d(F, D)), -as_vector(k, D.dim, name="k"))


def boundary_values(F, D, k):
    """``phi_{F+D,-k}(y_i)`` for every point; zero exactly on F ∩ bd(F + D)."""
    F = as_cloud(F)
    return phi_values(boundary_instance(F, D, k), F)


def weff_boundary(F, D, k, tol=1e-8):
    """Indices whose boundary value vanishes within ``tol``."""
    vals = boundary_values(F, D, k)
    return tuple(int(i) for i in np.flatnonzero(np.abs(vals) <= tol))


@dataclass(frozen=True)
class LocalizationReport:
    eff_in_boundary: bool
    weff_equals_boundary: bool
    boundary: tuple
    efficient: tuple
    weakly_efficient: tuple
    violations: tuple = ()

    @property
    def ok(self):
        return self.eff_in_boundary and self.weff_equals_boundary


def localize_check(F, D, k):
    """Check ``Eff ⊆ F ∩ bd(F+D)`` and ``WEff = F ∩ bd(F+D)``."""
    bd = set(weff_boundary(F, D, k))
    e = set(eff(F, D).efficient_indices)
    w = set(weff(F, D).weakly_efficient_indices)
    violations = [f"efficient index {i} not on the boundary" for i in sorted(e - bd)]
    violations += [f"weakly efficient index {i} not on the boundary" for i in sorted(w - bd)]
    violations += [f"boundary index {i} not weakly efficient" for i in sorted(bd - w)]
    return LocalizationReport(e <= bd, w == bd, tuple(sorted(bd)), tuple(sorted(e)),
                              tuple(sorted(w)), tuple(violations))


# -- existence and argmin -------------------------------------------------------

def argmin_scalar(values, tol=None):
    """Indices within ``tol`` of the minimum, skipping nu; NegInf entries win outright.

    ``values`` holds ExtValues or floats (nan = nu, -inf = NegInf).
    Returns ``(indices, unique)``.
    """
    tol = _config.eps_feas() if tol is None else tol
    v = np.array([x.to_float() if isinstance(x, ExtValue) else float(x) for x in values])
    if v.size == 0:
        raise PreconditionError("argmin over an empty list")
    ok = ~np.isnan(v)
    if not ok.any():
        raise PreconditionError("every value is nu: no point lies in the domain")
    if np.any(v == -np.inf):
        idx = np.flatnonzero(v == -np.inf)
    else:
        m = np.min(v[ok])
        idx = np.flatnonzero(ok & (v <= m + tol))
    idx = tuple(int(i) for i in idx)
    return idx, len(idx) == 1


def exists_eff(F, C, k, D=None, tol=None):
    """Efficient points as minimizers of ``inf{t : y in -C + t k}`` with k in int C.

    When D is given the inclusion ``D \\ {0} ⊆ int C`` is verified first and
    the result is checked against brute-force ``Eff(F, D)``.
    """
    C = require_cone(C, "C")
    F = as_cloud(F, C.dim)
    k = as_vector(k, C.dim, name="k")
    report = validate_h2(C, k)
    if not report.h2_ok:
        raise HypothesisError("k must satisfy <w, k> > 0 for every row of C; "
                              + "; ".join(report.messages), report)
    idx, _ = argmin_scalar(phi_values(PhiInstance(C, k), F), tol)
    if D is not None:
        Dp = require_cone(D)
        if not contained_in_recession_interior(Dp, C):
            raise PreconditionError("D \\ {0} is not contained in int C")
        bad = set(idx) - set(eff(F, Dp).efficient_indices)
        if bad:
            raise ConsistencyError(f"minimizers {sorted(bad)} are not efficient")
    return idx


def grid_weak_refutation(contains, y0, D, radius=2.0, steps=81):
    """Search a grid around ``y0`` for a point ``y`` of the set with ``y0 - y in int D``.

    ``contains`` is a membership oracle for a possibly non-closed set. Returns
    the first refuting grid point, or None.
    """
    y0 = as_vector(y0, set_dim(D), name="y0")
    axes = [np.linspace(c - radius, c + radius, steps) for c in y0]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, y0.size)
    inside = interior_member_many(D, y0 - grid)
    for y in grid[inside]:
        if contains(y):
            return y
    return None


__all__ = [
    "EffResult",
    "eff",
    "weff",
    "efficient_sets",
    "dominance_matrix",
    "boundary_values",
    "weff_boundary",
    "localize_check",
    "LocalizationReport",
    "exists_eff",
    "argmin_scalar",
    "grid_weak_refutation",
]
