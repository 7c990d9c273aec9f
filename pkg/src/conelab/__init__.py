"""Exact rational cone geometry and positive extension of functionals and operators."""

from .errors import InputError, InternalConsistencyError
from .linalg import Rational, RationalMatrix, RationalVector, Subspace, outer, rational
from .lp import (
    FarkasCertificate,
    FeasibilityResult,
    FeasibilitySystem,
    MembershipResult,
    cone_membership,
    feasibility,
)
from .cones import (
    Wedge,
    WedgeClass,
    classify,
    cone_from_inequalities,
    double_dual_check,
    dual_wedge,
    extremal_rays,
    full_space_wedge,
    intersect_subspace,
    lineality_dimension,
    orthant,
    wedge_equal,
)
from .extension import (
    FunctionalExtensionResult,
    IdentityApproximability,
    OperatorExtensionResult,
    OperatorWitness,
    OrthantEmbedding,
    TensorDecomposition,
    TensorTerm,
    extend_functional,
    extend_operator,
    identity_approximable,
    orthant_embedding,
    predual_identity_check,
    restriction_wedge,
    tensor_cone_generators,
)
from .experiments import (
    AlmostAllReport,
    CounterexampleReport,
    LorentzApproximationReport,
    LorentzDensityReport,
    LorentzExtension,
    LorentzFunctional,
    almost_all_experiment,
    counterexample_report,
    lorentz_approximate,
    lorentz_approximation_report,
    lorentz_density_experiment,
    lorentz_extendable,
)

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "InternalConsistencyError",
    "Rational",
    "RationalMatrix",
    "RationalVector",
    "Subspace",
    "outer",
    "rational",
    "FarkasCertificate",
    "FeasibilityResult",
    "FeasibilitySystem",
    "MembershipResult",
    "cone_membership",
    "feasibility",
    "Wedge",
    "WedgeClass",
    "classify",
    "cone_from_inequalities",
    "double_dual_check",
    "dual_wedge",
    "extremal_rays",
    "full_space_wedge",
    "intersect_subspace",
    "lineality_dimension",
    "orthant",
    "wedge_equal",
    "FunctionalExtensionResult",
    "IdentityApproximability",
    "OperatorExtensionResult",
    "OperatorWitness",
    "OrthantEmbedding",
    "TensorDecomposition",
    "TensorTerm",
    "extend_functional",
    "extend_operator",
    "identity_approximable",
    "orthant_embedding",
    "predual_identity_check",
    "restriction_wedge",
    "tensor_cone_generators",
    "AlmostAllReport",
    "CounterexampleReport",
    "LorentzApproximationReport",
    "LorentzDensityReport",
    "LorentzExtension",
    "LorentzFunctional",
    "almost_all_experiment",
    "counterexample_report",
    "lorentz_approximate",
    "lorentz_approximation_report",
    "lorentz_density_experiment",
    "lorentz_extendable",
]
