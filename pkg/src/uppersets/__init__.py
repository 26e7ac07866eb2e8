"""Exact calculus of closed convex upper sets over a polyhedral ordering cone.

The package provides the complete-lattice operations on upper sets, the
Aumann integral of simple set-valued functions on finite atomic measure
spaces, and a conformance checker that decides whether a black-box set-valued
functional is an Aumann integral and reconstructs its measure.
"""

from .axioms import (
    MUTANT_NAMES,
    AxiomReport,
    SampleSet,
    SetFunctional,
    decompose_nonneg,
    extract_scalar,
    integral_functional,
    mutant_catalog,
    reconstruct_measure,
    run_axiom_checks,
    verify_representation,
)
from .cone import Cone, DimensionMismatchError, ValidationError, dual_cone, orthant
from .integral import (
    ExplicitChain,
    IntegralResult,
    ParametricChain,
    aumann_integral,
    harmonic_cone_chain,
    integral_over,
    monotone_limit_check,
    selection_oracle,
)
from .measure_space import (
    AtomicMeasure,
    AtomicSpace,
    ScalarFunction,
    SimpleSetFunction,
    VectorFunction,
    cone_translates,
    constant_function,
    halfspace_function,
    indicator_modify,
    pick_selection,
    preimage,
    preimage_identity_check,
    space,
    vector_plus_cone,
)
from .upperset import (
    Halfspace,
    UpperSet,
    canonicalize,
    cone_upper_set,
    halfspace_set,
    inf_set,
    point_plus_cone,
    sup_set,
)
from .workspace import Workspace, WorkspaceError, parse_set_literal, parse_workspace

__all__ = [
    "AtomicMeasure",
    "AtomicSpace",
    "AxiomReport",
    "Cone",
    "DimensionMismatchError",
    "ExplicitChain",
    "Halfspace",
    "IntegralResult",
    "MUTANT_NAMES",
    "ParametricChain",
    "SampleSet",
    "ScalarFunction",
    "SetFunctional",
    "SimpleSetFunction",
    "UpperSet",
    "ValidationError",
    "VectorFunction",
    "Workspace",
    "WorkspaceError",
    "aumann_integral",
    "canonicalize",
    "cone_translates",
    "cone_upper_set",
    "constant_function",
    "decompose_nonneg",
    "dual_cone",
    "extract_scalar",
    "halfspace_function",
    "halfspace_set",
    "harmonic_cone_chain",
    "indicator_modify",
    "inf_set",
    "integral_functional",
    "integral_over",
    "monotone_limit_check",
    "mutant_catalog",
    "orthant",
    "parse_set_literal",
    "parse_workspace",
    "pick_selection",
    "point_plus_cone",
    "preimage",
    "preimage_identity_check",
    "reconstruct_measure",
    "run_axiom_checks",
    "selection_oracle",
    "space",
    "sup_set",
    "vector_plus_cone",
    "verify_representation",
]
