"""Scalarization of vector optimization problems with functionals whose
sublevel sets are translates of one set along a fixed direction."""

from ._config import get_tolerances, set_tolerances, tolerances
from .decision import (
    DominationRelation,
    Norm2Weak,
    StructureQuery,
    TableRelation,
    check_relation_props,
    holds,
    min_eff_bridge,
    min_relation,
    predomination_constancy_check,
    structure_member,
)
from .efficiency import (
    EffResult,
    argmin_scalar,
    eff,
    exists_eff,
    localize_check,
    weff,
    weff_boundary,
)
from .exceptions import (
    BisectionError,
    ConsistencyError,
    DimensionError,
    HypothesisError,
    NuComparisonError,
    PreconditionError,
    SublevelError,
    UnsupportedSetError,
)
from .extvalue import NEG_INF, NU, ExtValue
from .functional import (
    PhiInstance,
    eval_phi,
    eval_phi_bisect,
    eval_phi_complement,
    eval_phi_many,
    lipschitz_bound,
    phi_domain_member,
    phi_values,
    sublevel_member,
)
from .norms import (
    OrderUnitNorm,
    norm,
    norm_phi_identity_check,
    norm_scalarize_argmin,
    norm_scalarize_bounded,
)
from .scalarize import (
    Certificate,
    CertificateKind,
    Classification,
    ScalarizationOutcome,
    certify_efficient,
    certify_weakly_efficient,
    scalarize_argmin,
    scalarize_bounded,
    scalarize_lower_cone,
    scalarize_upper_cone,
)
from .sets import (
    HypothesisReport,
    LinealityStripped,
    ParabolaEpigraph,
    PolyhedralSet,
    Shifted,
    UnionTranslates,
    build_f_plus_d,
    interior_member,
    member,
    recession_cone,
    validate_h1,
    validate_h2,
)

__version__ = "0.1.0"
