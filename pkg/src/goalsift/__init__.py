"""Entropy-driven interactive goal search."""

from .belief import (
    DSState,
    EmptyConditionError,
    EmptyGoalSetError,
    Observation,
    attribute_entropy,
    attribute_marginal,
    conditional_entropy,
    exact_update,
    expected_reduction_bruteforce,
    init_state,
    soft_update,
    state_entropy,
)
from .catalog import (
    Catalog,
    CatalogError,
    CatalogParseError,
    EmptyCatalogError,
    InvalidPriorError,
    SyntheticSpec,
    attribute_stats,
    generate_synthetic,
    load_catalog,
    set_prior,
    write_catalog,
)
from .dialog import SessionConfig, TerminalStatus, Transcript, check_termination, run_session, success
from .strategy import StrategyKind, informative_attributes, next_question, parse_strategy
from .usersim import NoiseSpec, cooperative_answer, corrupt

__version__ = "0.1.0"
