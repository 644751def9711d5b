"""Exact-arithmetic toolkit for torus-equivariant blowups of affine
models: chart construction, intrinsic ideals, GIT stability on the
exceptional locus, four-term obstruction complexes, section-equivalence
certificates, and fiberwise compatibility checks.

Everything computes over the rationals; Groebner bases make each claim
a finite check.
"""

from .errors import (
    BudgetExceededError,
    EquiblowError,
    ModelFileError,
    PolyParseError,
    PreconditionError,
    TheoremCheckError,
)
from .poly import DEGREVLEX, LEX, Poly, Ring, divide_exact, parse_poly
from .linalg import (
    coker_projection,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    solve,
    zero_in_convex_hull,
    zero_in_relative_interior,
)
from .groebner import (
    DEFAULT_BUDGET,
    Budget,
    GroebnerBasis,
    Ideal,
    buchberger,
    contains_one,
    eliminate,
    ideal_equal,
    in_radical,
    intersect,
    lift_certificate,
    normal_form,
    saturate,
)
from .torus import (
    GradedPiece,
    Subtorus,
    WeightMatrix,
    closed_orbit_stabilizers,
    enumerate_blowup_centers,
    isotypic_decompose,
    orbit_is_closed,
    poly_weight,
    reynolds,
    stabilizer_subtorus,
    support_is_realized,
)
from .blowup import (
    BlowupChart,
    EquivariantBundle,
    LocalModel,
    WeakModelReport,
    action_pairing,
    blowup_local_model,
    blowup_section,
    check_weak_local_model,
    embedding_independence_check,
    intrinsic_ideal,
    make_charts,
    verify_coinc,
)
from .stability import (
    SemistableLocus,
    StabilityVerdict,
    hm_fiber_semistable,
    point_semistable,
    semistable_locus,
    unstable_ideal,
)
from .dcrit import (
    CokernelComparison,
    FourTermComplexAtPoint,
    ObstructionAssignment,
    OmegaEquivalenceReport,
    SmallExtension,
    cohomology_dims,
    construct_equivalence,
    dcritical_chart,
    derivative_matrix,
    find_lift,
    four_term_at,
    lift_morphism_to_blowup,
    obstruction_assignment,
    phi_ck_at_point,
    reduced_obstruction_dim,
    verify_omega_equivalence,
)
from .family import check_fixed_locus_flat, fiber_blowup_commutes, specialize
from .desing import (
    ChartOutcome,
    Desingularization,
    Stage,
    partial_desingularization,
)
from .modelfile import (
    BuiltModel,
    ModelFile,
    build_model,
    load_model_file,
    parse_model_text,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "EquiblowError",
    "ModelFileError",
    "PolyParseError",
    "PreconditionError",
    "TheoremCheckError",
    "DEGREVLEX",
    "LEX",
    "Poly",
    "Ring",
    "divide_exact",
    "parse_poly",
    "coker_projection",
    "mat_mul",
    "mat_vec",
    "nullspace",
    "rank",
    "solve",
    "zero_in_convex_hull",
    "zero_in_relative_interior",
    "DEFAULT_BUDGET",
    "Budget",
    "GroebnerBasis",
    "Ideal",
    "buchberger",
    "contains_one",
    "eliminate",
    "ideal_equal",
    "in_radical",
    "intersect",
    "lift_certificate",
    "normal_form",
    "saturate",
    "GradedPiece",
    "Subtorus",
    "WeightMatrix",
    "closed_orbit_stabilizers",
    "enumerate_blowup_centers",
    "isotypic_decompose",
    "orbit_is_closed",
    "poly_weight",
    "reynolds",
    "stabilizer_subtorus",
    "support_is_realized",
    "BlowupChart",
    "EquivariantBundle",
    "LocalModel",
    "WeakModelReport",
    "action_pairing",
    "blowup_local_model",
    "blowup_section",
    "check_weak_local_model",
    "embedding_independence_check",
    "intrinsic_ideal",
    "make_charts",
    "verify_coinc",
    "SemistableLocus",
    "StabilityVerdict",
    "hm_fiber_semistable",
    "point_semistable",
    "semistable_locus",
    "unstable_ideal",
    "CokernelComparison",
    "FourTermComplexAtPoint",
    "ObstructionAssignment",
    "OmegaEquivalenceReport",
    "SmallExtension",
    "cohomology_dims",
    "construct_equivalence",
    "dcritical_chart",
    "derivative_matrix",
    "find_lift",
    "four_term_at",
    "lift_morphism_to_blowup",
    "obstruction_assignment",
    "phi_ck_at_point",
    "reduced_obstruction_dim",
    "verify_omega_equivalence",
    "check_fixed_locus_flat",
    "fiber_blowup_commutes",
    "specialize",
    "ChartOutcome",
    "Desingularization",
    "Stage",
    "partial_desingularization",
    "BuiltModel",
    "ModelFile",
    "build_model",
    "load_model_file",
    "parse_model_text",
    "__version__",
]
