"""Chernoff-bound feasibility analysis for software defect prediction."""

from ._core import (
    AssumptionViolation,
    DomainError,
    Error,
    InvalidInput,
    ParseError,
    TailEstimate,
    WrongVariant,
    __version__,
    bound,
    chernoff_lower_tail,
    cumulative_hazard,
    exact_binomial_tail,
    expected_reliability_bound_x,
    false_omission_rate,
    hazard_at,
    mc_tail,
    reliability_at,
    reliability_tail_threshold,
    run_cli,
    run_verify,
)

__all__ = [
    "AssumptionViolation",
    "DomainError",
    "Error",
    "InvalidInput",
    "ParseError",
    "TailEstimate",
    "WrongVariant",
    "__version__",
    "bound",
    "chernoff_lower_tail",
    "cumulative_hazard",
    "exact_binomial_tail",
    "expected_reliability_bound_x",
    "false_omission_rate",
    "hazard_at",
    "mc_tail",
    "reliability_at",
    "reliability_tail_threshold",
    "run_cli",
    "run_verify",
]
