"""Exact rational lattice computations centered on almost-near stability:
when near-integer inner products with short lattice vectors force a point
to sit near the dual lattice."""

from .enumeration import (
    DEFAULT_NODE_BUDGET,
    CoveringRadiusBounds,
    NearResult,
    ShortVectorList,
    SuccessiveMinima,
    closest_vector,
    covering_radius,
    list_vectors,
    shortest_vector,
    successive_minima,
)
from .errors import (
    BudgetExceeded,
    DependentRows,
    GenerationFailed,
    LatticeError,
    NotInLattice,
    NotInSpan,
    NotPrimitive,
    ParseError,
    RankTooLarge,
    SingularMatrix,
)
from .generate import random_lattice
from .latfile import (
    parse_lattice_file,
    parse_lattice_text,
    parse_rational,
    parse_vector,
    serialize_lattice,
    write_lattice_file,
)
from .lattice import (
    AnnihilatorRep,
    Lattice,
    annihilator,
    dist_to_integers,
    double_dual_check,
    dual,
    dual_coordinates,
    equal_lattices,
    integral_coordinates,
    is_member,
)
from .reduction import (
    DEFAULT_DELTA,
    MINKOWSKI_MAX_RANK,
    ReducedBasis,
    extend_to_basis,
    is_primitive_system,
    lll,
    minkowski_reduce,
)
from .rng import SplitMix64
from .stability import (
    FamilyDiagnostics,
    HypothesisReport,
    IntervalCheck,
    PairCheck,
    ProbeConfig,
    ResidualReport,
    SharpnessWitness,
    StabilityProbe,
    TransferenceReport,
    Violation,
    almost_near_linear,
    check_hypothesis,
    degenerate_family,
    near_dual_vector,
    probe_worst_distance,
    residual_amplification,
    round_in_dual_coordinates,
    sharpness_witness,
    stability_radius,
    transference_check,
)

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorRep",
    "BudgetExceeded",
    "CoveringRadiusBounds",
    "DEFAULT_DELTA",
    "DEFAULT_NODE_BUDGET",
    "DependentRows",
    "FamilyDiagnostics",
    "GenerationFailed",
    "HypothesisReport",
    "IntervalCheck",
    "Lattice",
    "LatticeError",
    "MINKOWSKI_MAX_RANK",
    "NearResult",
    "NotInLattice",
    "NotInSpan",
    "NotPrimitive",
    "PairCheck",
    "ParseError",
    "ProbeConfig",
    "RankTooLarge",
    "ReducedBasis",
    "ResidualReport",
    "SharpnessWitness",
    "ShortVectorList",
    "SingularMatrix",
    "SplitMix64",
    "StabilityProbe",
    "SuccessiveMinima",
    "TransferenceReport",
    "Violation",
    "almost_near_linear",
    "annihilator",
    "check_hypothesis",
    "closest_vector",
    "covering_radius",
    "degenerate_family",
    "dist_to_integers",
    "double_dual_check",
    "dual",
    "dual_coordinates",
    "equal_lattices",
    "extend_to_basis",
    "integral_coordinates",
    "is_member",
    "is_primitive_system",
    "lll",
    "list_vectors",
    "minkowski_reduce",
    "near_dual_vector",
    "parse_lattice_file",
    "parse_lattice_text",
    "parse_rational",
    "parse_vector",
    "probe_worst_distance",
    "random_lattice",
    "residual_amplification",
    "round_in_dual_coordinates",
    "serialize_lattice",
    "sharpness_witness",
    "shortest_vector",
    "stability_radius",
    "successive_minima",
    "transference_check",
    "write_lattice_file",
]
