"""Fair reward allocation for monotone cooperative games with replicable rewards.

The solver computes, for every possible coalition, the unique reward table
that gives some member the coalition's full value, leaves non-members at
their solo value, and balances every pair's mutual gains. The axiom suite
verifies those properties (and more) exhaustively, the baselines module
contrasts the allocation with scaled Shapley values, and the oracle module
re-derives the table by enumeration for independent confirmation.
"""

from .axioms import (
    AXIOM_NAMES,
    AxiomReport,
    CheckResult,
    Tolerance,
    Verdict,
    check_all,
    check_axiom,
    check_balanced_reciprocity,
    check_feasibility,
    check_individual_rationality,
    check_nonnegativity,
    check_nonparticipation,
    check_strict_desirability,
    check_strict_monotonicity_pair,
    check_symmetry,
    check_uselessness,
    check_weak_efficiency,
    default_tolerance,
    desirable_pairs,
    symmetric_pairs,
    useless_players,
)
from .baselines import (
    ComparisonReport,
    PairResidual,
    RhoShapleyMatrix,
    compare_mechanisms,
    pair_residuals,
    scaled_rho_shapley,
    shapley,
)
from .errors import (
    BadAnchorError,
    BadLengthError,
    BadParamsError,
    DimensionMismatchError,
    EmptyCoalitionError,
    EmptyNotZeroError,
    FairshareError,
    FileFormatError,
    InvalidGameError,
    NegativeValueError,
    NoFeasibleCandidateError,
    NotMonotoneError,
    OutOfRangeError,
    RhoOutOfRangeError,
    SizeLimitExceededError,
    ZeroMaxShapleyError,
)
from .formats import (
    FLOAT,
    RATIONAL,
    GameDocument,
    MatrixDocument,
    align_matrix_labels,
    coalition_key,
    default_labels,
    format_scalar,
    parse_game,
    parse_matrix,
    parse_rho,
    serialize_game,
    serialize_matrix,
)
from .games import (
    FAMILIES,
    Game,
    Scalar,
    additive_game,
    coalitions_by_size,
    counterexample3_game,
    coverage_game,
    example1_game,
    is_monotone,
    make_family,
    mask_of,
    members,
    raise_coalition_value,
    random_monotone_game,
    submasks,
)
from .oracle import OracleResult, brute_force_solve, global_enumeration_solve
from .solver import (
    EfficientPlayerMap,
    RewardMatrix,
    SolveResult,
    reward,
    solve,
    solve_with_anchor,
)

__all__ = [
    "AXIOM_NAMES",
    "AxiomReport",
    "BadAnchorError",
    "BadLengthError",
    "BadParamsError",
    "CheckResult",
    "ComparisonReport",
    "DimensionMismatchError",
    "EfficientPlayerMap",
    "EmptyCoalitionError",
    "EmptyNotZeroError",
    "FAMILIES",
    "FLOAT",
    "FairshareError",
    "FileFormatError",
    "Game",
    "GameDocument",
    "InvalidGameError",
    "MatrixDocument",
    "NegativeValueError",
    "NoFeasibleCandidateError",
    "NotMonotoneError",
    "OracleResult",
    "OutOfRangeError",
    "PairResidual",
    "RATIONAL",
    "RewardMatrix",
    "RhoOutOfRangeError",
    "RhoShapleyMatrix",
    "Scalar",
    "SizeLimitExceededError",
    "SolveResult",
    "Tolerance",
    "Verdict",
    "ZeroMaxShapleyError",
    "additive_game",
    "align_matrix_labels",
    "brute_force_solve",
    "check_all",
    "check_axiom",
    "check_balanced_reciprocity",
    "check_feasibility",
    "check_individual_rationality",
    "check_nonnegativity",
    "check_nonparticipation",
    "check_strict_desirability",
    "check_strict_monotonicity_pair",
    "check_symmetry",
    "check_uselessness",
    "check_weak_efficiency",
    "coalition_key",
    "coalitions_by_size",
    "compare_mechanisms",
    "counterexample3_game",
    "coverage_game",
    "default_labels",
    "default_tolerance",
    "desirable_pairs",
    "example1_game",
    "format_scalar",
    "global_enumeration_solve",
    "is_monotone",
    "make_family",
    "mask_of",
    "members",
    "pair_residuals",
    "parse_game",
    "parse_matrix",
    "parse_rho",
    "raise_coalition_value",
    "random_monotone_game",
    "reward",
    "scaled_rho_shapley",
    "serialize_game",
    "serialize_matrix",
    "shapley",
    "solve",
    "solve_with_anchor",
    "submasks",
    "symmetric_pairs",
    "useless_players",
]

__version__ = "0.1.0"
