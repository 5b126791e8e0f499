"""Scalarization results as executable procedures.

* per-point certificates: y0 is efficient iff ``phi_{y0-D,k}(y) > 0`` for every
  other in-domain y, weakly efficient iff ``>= 0`` (under (H2))
* argmin of ``phi_{a-H,k}`` over F with the strongest claim the set
  inclusions between H and D support
* front recovery with a reference point bounding F, using the per-point
  direction ``k = a - y0`` or ``k = y0 - a``
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _config
from ._validation import as_cloud, as_vector, check_index, distinct_from
from .efficiency import argmin_scalar, eff
from .exceptions import ConsistencyError, HypothesisError, PreconditionError
from .extvalue import ExtValue, from_array
from .functional import PhiInstance, phi_values
from .sets import (
    as_polyhedral,
    contained_in_recession,
    contained_in_recession_interior,
    has_interior,
    interior_contained_in_recession,
    interior_member_many,
    is_pointed,
    member,
    member_many,
    require,
    require_cone,
    validate_h1,
    validate_h2,
)

ANCHOR_TOL = 1e-9


class CertificateKind(str, enum.Enum):
    EFFICIENT = "Efficient"
    WEAKLY_EFFICIENT = "WeaklyEfficient"
    REFUTED = "Refuted"
    INDETERMINATE = "Indeterminate"


class Classification(str, enum.Enum):
    CERTIFIED_EFFICIENT = "CertifiedEfficient"
    SUBSET_OF_EFF = "SubsetOfEff"
    SUBSET_OF_WEFF = "SubsetOfWEff"
    NO_CLAIM = "NoClaim"


def _num(x):
    """JSON-friendly float: non-finite values become strings."""
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nu"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass(frozen=True)
class Certificate:
    point_index: int
    kind: CertificateKind
    k_used: tuple
    values: tuple  # ((j, ExtValue), ...) over the other points
    witness: int = None
    margin: float = math.inf
    self_value: ExtValue = None
    notes: tuple = ()

    def to_dict(self):
        return {
            "index": self.point_index,
            "kind": self.kind.value,
            "k": [float(x) for x in self.k_used],
            "margin": _num(self.margin),
            "witness": self.witness,
            "values": [[j, v.to_json()] for j, v in self.values],
        }


@dataclass(frozen=True)
class ScalarizationOutcome:
    psi: tuple
    unique: bool
    classification: Classification
    values: tuple
    dropped_nu: tuple = ()
    checks: dict = field(default_factory=dict)
    notes: tuple = ()

    def to_dict(self):
        return {
            "psi": list(self.psi),
            "unique": self.unique,
            "classification": self.classification.value,
            "values": [v.to_json() for v in self.values],
            "dropped_nu": list(self.dropped_nu),
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class FrontResult:
    efficient: tuple
    weakly_efficient: tuple = None
    certificates: tuple = ()
    notes: tuple = ()

    def to_dict(self):
        out = {"efficient": list(self.efficient)}
        if self.weakly_efficient is not None:
            out["weakly_efficient"] = list(self.weakly_efficient)
        out["certificates"] = [c.to_dict() for c in self.certificates]
        out["notes"] = list(self.notes)
        return out


# -- per-point certification -----------------------------------------------------

def _point_values(F, i, D, k):
    """``phi_{-D,k}(y_j - y_i)`` for all j, plus the mask of points distinct from y_i."""
    inst = PhiInstance(D, k)
    return inst, phi_values(inst, F - F[i]), distinct_from(F, i)


def _certificate(F, i, D, k, weak):
    F = as_cloud(F)
    i = check_index(i, F.shape[0])
    k = as_vector(k, F.shape[1], name="k")
    report = validate_h2(D, k) if weak else validate_h1(D, k)
    require(report, "h2" if weak else "h1")
    inst, v, other = _point_values(F, i, D, k)
    eps = _config.eps_cmp()
    self_value = ExtValue.from_float(v[i])
    idx = np.flatnonzero(other)
    listed = tuple((int(j), ExtValue.from_float(v[j])) for j in idx)
    dom = idx[~np.isnan(v[idx])]
    vd = v[dom]
    notes = []
    if idx.size > dom.size:
        notes.append(f"{idx.size - dom.size} point(s) outside dom phi dropped")
    margin = math.inf
    if dom.size:
        base = v[i] if not np.isnan(v[i]) else 0.0
        margin = float(np.min(vd - base))
    witness = int(dom[np.argmin(vd)]) if dom.size else None
    if weak:
        kind = (CertificateKind.WEAKLY_EFFICIENT if not dom.size or np.all(vd >= -eps)
                else CertificateKind.REFUTED)
        if member(D, np.zeros(F.shape[1])) and abs(v[i]) <= eps:
            # 0 on the boundary of D: weak points are exactly the minimizers of their own functional
            at_min = dom.size == 0 or v[i] <= np.min(vd) + eps
            if at_min != (kind is CertificateKind.WEAKLY_EFFICIENT):
                notes.append("min-form check disagrees with the sign test")
    else:
        if dom.size and np.any(vd <= -eps):
            kind = CertificateKind.REFUTED
        elif not dom.size or np.all(vd > eps):
            kind = CertificateKind.EFFICIENT
        else:
            kind = CertificateKind.INDETERMINATE
            notes.append(f"value within ±{eps:g} of 0")
    if kind is not CertificateKind.REFUTED:
        witness = None
    return Certificate(i, kind, tuple(k.tolist()), listed, witness, margin, self_value, tuple(notes))


def certify_efficient(F, i, D, k):
    """Certificate for ``y_i in Eff(F, D)`` under (H1) for D and k."""
    return _certificate(F, i, D, k, weak=False)


def certify_weakly_efficient(F, i, D, k):
    """Certificate for ``y_i in WEff(F, D)``; needs ``D + R_> k ⊆ int D``."""
    return _certificate(F, i, D, k, weak=True)


# -- argmin scalarization ------------------------------------------------------------

def _inclusions(H, D):
    """(H + D ⊆ H, H + (D \\ {0}) ⊆ int H, H + int D ⊆ H) for polyhedral data."""
    Hp, Dp = as_polyhedral(H), as_polyhedral(D)
    if Hp is None or Dp is None:
        return None
    return {
        "H+D⊆H": contained_in_recession(Dp, Hp),
        "H+(D\\{0})⊆int H": contained_in_recession_interior(Dp, Hp),
        "H+int D⊆H": interior_contained_in_recession(Dp, Hp),
    }


def _classify(values, psi, unique, checks, notes):
    if checks is None:
        notes.append("inclusions need polyhedral H and D; no claim")
        return Classification.NO_CLAIM
    if any(values[j].is_neg_inf for j in psi):
        notes.append("minimum is -inf; no claim")
        return Classification.NO_CLAIM
    inc, strict, wint = checks["H+D⊆H"], checks["H+(D\\{0})⊆int H"], checks["H+int D⊆H"]
    if unique and (inc or strict):
        return Classification.CERTIFIED_EFFICIENT
    if strict:
        return Classification.SUBSET_OF_EFF
    if wint:
        return Classification.SUBSET_OF_WEFF
    return Classification.NO_CLAIM


def _argmin_outcome(vals, checks, notes):
    values = tuple(from_array(vals))
    nu = tuple(int(j) for j in np.flatnonzero(np.isnan(vals)))
    if nu:
        notes.append(f"{len(nu)} point(s) outside dom phi dropped")
    psi, unique = argmin_scalar(vals, _config.eps_feas())
    cls = _classify(values, psi, unique, checks, notes)
    return ScalarizationOutcome(psi, unique, cls, values, nu, checks or {}, tuple(notes))


def scalarize_argmin(F, H, k, a, D):
    """``Psi = argmin_{y in F} phi_{a-H,k}(y)`` with the strongest supported claim.

    Claims, strongest first: unique minimizer and ``H + D ⊆ H`` gives an
    efficient point; ``H + (D \\ {0}) ⊆ int H`` gives ``Psi ⊆ Eff``;
    ``H + int D ⊆ H`` gives ``Psi ⊆ WEff``.
    """
    inst = PhiInstance(H, k, a)
    F = as_cloud(F, inst.dim)
    return _argmin_outcome(phi_values(inst, F), _inclusions(H, D), [])


# -- fronts with a bounding reference point -------------------------------------------

def _solid_cone(D):
    P = require_cone(D)
    if not has_interior(P):
        raise PreconditionError("D must have nonempty interior")
    return P


def _check_bound(F, D, a, mode, strict):
    diff = (a - F) if mode == "upper" else (F - a)
    inside = interior_member_many(D, diff) if strict else member_many(D, diff)
    bad = np.flatnonzero(~inside)
    if bad.size:
        rel = "a - int D" if strict and mode == "upper" else (
            "a + int D" if strict else ("a - D" if mode == "upper" else "a + D"))
        raise PreconditionError(f"point {int(bad[0])} is not in {rel}", int(bad[0]))


def _front_certificate(i, k, vals, other, anchor_kind, weak):
    eps = _config.eps_cmp()
    idx = np.flatnonzero(other)
    dom = idx[~np.isnan(vals[idx])]
    vd = vals[dom]
    vi = vals[i]
    margin = float(np.min(vd - vi)) if dom.size else math.inf
    eff_ok = bool(not dom.size or np.all(vd > vi + eps))
    weak_ok = bool(not dom.size or np.all(vd >= vi - eps))
    if eff_ok:
        kind = CertificateKind.EFFICIENT
    elif weak and weak_ok:
        kind = CertificateKind.WEAKLY_EFFICIENT
    else:
        kind = CertificateKind.REFUTED
    witness = int(dom[np.argmin(vd)]) if kind is CertificateKind.REFUTED else None
    listed = tuple((int(j), ExtValue.from_float(vals[j])) for j in idx)
    return Certificate(int(i), kind, tuple(np.asarray(k).tolist()), listed, witness, margin,
                       ExtValue.from_float(vi), (anchor_kind,))


def _anchor(vi, target, exact, i):
    if np.isnan(vi):
        raise ConsistencyError(f"point {i} lies outside the domain of its own scalarization")
    if exact and abs(vi - target) > ANCHOR_TOL:
        raise ConsistencyError(f"anchor value {vi!r} at point {i}, expected {target}")
    if not exact and vi > target + ANCHOR_TOL:
        raise ConsistencyError(f"anchor value {vi!r} at point {i}, expected <= {target}")


def scalarize_bounded(F, D, a, mode="upper"):
    """Recover Eff and WEff when F lies in ``a - int D`` (upper) or ``a + int D`` (lower).

    Point i uses ``k = a - y_i`` (upper) or ``k = y_i - a`` (lower); its own
    value is then -1 or +1, it is weakly efficient iff that value is minimal
    over F and efficient iff it is the unique minimum.
    """
    if mode not in ("upper", "lower"):
        raise ValueError("mode must be 'upper' or 'lower'")
    D = _solid_cone(D)
    F = as_cloud(F, D.dim)
    a = as_vector(a, D.dim, name="a")
    _check_bound(F, D, a, mode, strict=True)
    target = -1.0 if mode == "upper" else 1.0
    certs = []
    for i in range(F.shape[0]):
        k = a - F[i] if mode == "upper" else F[i] - a
        vals = phi_values(PhiInstance(D, k, a), F)
        _anchor(vals[i], target, True, i)
        certs.append(_front_certificate(i, k, vals, distinct_from(F, i), f"anchor {target:+g}", True))
    return _front(certs, weak=True)


def _front(certs, weak, notes=()):
    e = tuple(c.point_index for c in certs if c.kind is CertificateKind.EFFICIENT)
    w = None
    if weak:
        w = tuple(c.point_index for c in certs
                  if c.kind in (CertificateKind.EFFICIENT, CertificateKind.WEAKLY_EFFICIENT))
    return FrontResult(tuple(sorted(e)), None if w is None else tuple(sorted(w)), tuple(certs),
                       tuple(notes))


def scalarize_upper_cone(F, D, a):
    """Eff(F, D) for F ⊆ a - D and a convex cone D, with ``k = a - y_i``.

    Candidates whose k is 0 or lies in the lineality space of D cannot be
    scalarized this way; they are classified by the pairwise scan and noted.
    """
    D = require_cone(D)
    F = as_cloud(F, D.dim)
    a = as_vector(a, D.dim, name="a")
    if F.shape[0] <= 1:
        raise PreconditionError("F must contain more than one point")
    _check_bound(F, D, a, "upper", strict=False)
    brute = None
    certs, notes = [], []
    for i in range(F.shape[0]):
        k = a - F[i]
        rep = validate_h1(D, k)
        if not rep.h1_ok or rep.lineality_hit:
            brute = brute or eff(F, D)
            ok = i in brute.efficient_indices
            kind = CertificateKind.EFFICIENT if ok else CertificateKind.REFUTED
            notes.append(f"point {i}: k = a - y is not in D \\ (-D); classified by pairwise scan")
            certs.append(Certificate(i, kind, tuple(k.tolist()), (), brute.dominance_witness.get(i),
                                     None, None, ("pairwise scan",)))
            continue
        vals = phi_values(PhiInstance(D, k, a), F)
        _anchor(vals[i], -1.0, False, i)
        certs.append(_front_certificate(i, k, vals, distinct_from(F, i), "anchor <= -1", False))
    return _front(certs, weak=False, notes=notes)


def scalarize_lower_cone(F, D, a):
    """Eff(F, D) for F ⊆ a + D and a pointed convex cone D, with ``k = y_i - a``.

    If a itself belongs to F it is the only efficient element.
    """
    D = require_cone(D)
    F = as_cloud(F, D.dim)
    a = as_vector(a, D.dim, name="a")
    _check_bound(F, D, a, "lower", strict=False)
    if not is_pointed(D):
        k = next((F[i] - a for i in range(F.shape[0]) if np.any(F[i] != a)), None)
        report = validate_h1(D, k) if k is not None else None
        msg = "D is not pointed: k = y - a may lie in D ∩ (-D)"
        if report is not None and report.lineality_hit:
            msg += f"; for k = {k.tolist()} the functional does not attain any real value"
        raise HypothesisError(msg, report)
    hit = np.flatnonzero(np.all(F == a, axis=1))
    if hit.size:
        idx = tuple(int(i) for i in hit)
        return FrontResult(idx, None, (), ("a lies in F: it is the only efficient element",))
    certs = []
    for i in range(F.shape[0]):
        k = F[i] - a
        vals = phi_values(PhiInstance(D, k, a), F)
        _anchor(vals[i], 1.0, False, i)
        certs.append(_front_certificate(i, k, vals, distinct_from(F, i), "anchor <= 1", False))
    return _front(certs, weak=False)


__all__ = [
    "CertificateKind",
    "Classification",
    "Certificate",
    "ScalarizationOutcome",
    "FrontResult",
    "certify_efficient",
    "certify_weakly_efficient",
    "scalarize_argmin",
    "scalarize_bounded",
    "scalarize_upper_cone",
    "scalarize_lower_cone",
]
