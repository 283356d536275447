"""Transducers over changing alphabets acting on rooted trees.

The package models automata whose alphabet may differ from level to
level, evaluates their states as tree automorphisms, decides equality of
short words, computes the finite groups induced on single levels, steers
orbits to chosen words, and classifies the binary two-state bi-reversible
machines into the five possible groups.
"""

from . import errors
from .errors import (
    AutomatonError,
    BudgetExceededError,
    InvalidWordError,
    NonCoprimeModuliError,
    NotBiReversibleError,
    NotBinaryError,
    NotInvertibleError,
    NotMealyError,
    NotOnSameCycleError,
    NotTwoStateError,
    OrderCapExceededError,
    ScheduleMismatchError,
    SteeringError,
    UnboundedScheduleError,
    UndecidableRepresentationError,
    VerificationFailedError,
)
from .core import (
    Automaton,
    BiReversibilityVerdict,
    LevelTable,
    embed_on_subsequence,
    tables_equal,
)
from .engine import (
    Budget,
    EqualityVerdict,
    GroupKind,
    GroupWord,
    LevelGroup,
    RelationSearchResult,
    SteeringResult,
    apply_word,
    classify_two_state_binary,
    crt_solve,
    cycle_discrete_log,
    decide_equal,
    element_order,
    is_level_transitive_at,
    labeling_twist,
    letter_partition,
    level_group,
    orbit_at_level,
    ratio_power_image,
    reduced_words,
    relation_search,
    steer_to_word,
    step_section,
    torsion_exponent_bound,
)
from .families import (
    FAMILIES,
    FAMILY_SUMMARIES,
    admissible_binary_level_types,
    bellaterra_automaton,
    bellaterra_dual_automaton,
    build_from_config,
    config_of,
    cycle_transposition_automaton,
    diagonal_automaton,
    lamplighter_automaton,
    random_admissible_level,
    random_bir22_automaton,
    random_bireversible_automaton,
    shortlex_reduced_words,
    subsequence_embedding_automaton,
    sym_diagonal_automaton,
    two_state_level,
    word_order_apply,
    word_order_automaton,
    word_order_perm_a,
    word_order_perm_a_inverse,
    word_order_perm_b,
    word_order_perm_b_inverse,
    z2z4_automaton,
    z4_automaton,
)
from .schedule import AlphabetSchedule, Constant, Periodic, Ramp

__version__ = "0.1.0"

__all__ = [
    "AlphabetSchedule",
    "Automaton",
    "AutomatonError",
    "BiReversibilityVerdict",
    "Budget",
    "BudgetExceededError",
    "Constant",
    "EqualityVerdict",
    "FAMILIES",
    "FAMILY_SUMMARIES",
    "GroupKind",
    "GroupWord",
    "InvalidWordError",
    "LevelGroup",
    "LevelTable",
    "NonCoprimeModuliError",
    "NotBiReversibleError",
    "NotBinaryError",
    "NotInvertibleError",
    "NotMealyError",
    "NotOnSameCycleError",
    "NotTwoStateError",
    "OrderCapExceededError",
    "Periodic",
    "Ramp",
    "RelationSearchResult",
    "ScheduleMismatchError",
    "SteeringError",
    "SteeringResult",
    "UnboundedScheduleError",
    "UndecidableRepresentationError",
    "VerificationFailedError",
    "admissible_binary_level_types",
    "apply_word",
    "bellaterra_automaton",
    "bellaterra_dual_automaton",
    "build_from_config",
    "classify_two_state_binary",
    "config_of",
    "crt_solve",
    "cycle_discrete_log",
    "cycle_transposition_automaton",
    "decide_equal",
    "diagonal_automaton",
    "element_order",
    "embed_on_subsequence",
    "errors",
    "is_level_transitive_at",
    "labeling_twist",
    "lamplighter_automaton",
    "letter_partition",
    "level_group",
    "orbit_at_level",
    "random_admissible_level",
    "random_bir22_automaton",
    "random_bireversible_automaton",
    "ratio_power_image",
    "reduced_words",
    "relation_search",
    "shortlex_reduced_words",
    "steer_to_word",
    "step_section",
    "subsequence_embedding_automaton",
    "sym_diagonal_automaton",
    "tables_equal",
    "torsion_exponent_bound",
    "two_state_level",
    "word_order_apply",
    "word_order_automaton",
    "word_order_perm_a",
    "word_order_perm_a_inverse",
    "word_order_perm_b",
    "word_order_perm_b_inverse",
    "z2z4_automaton",
    "z4_automaton",
]
