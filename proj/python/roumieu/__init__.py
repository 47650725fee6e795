"""Python access to the roumieu library."""

from ._roumieu import (
    DimensionMismatch,
    Error,
    InvalidArgument,
    ParseError,
    PreconditionFailed,
    check_constant_strength,
    check_hypoelliptic,
    check_sequence,
    check_weight_sandwich,
    equally_strong,
    estimate_d,
    evaluate,
    fit_inclusion,
    fit_power_bound,
    p_tilde,
    run_cli,
)

__all__ = [
    "DimensionMismatch",
    "Error",
    "InvalidArgument",
    "ParseError",
    "PreconditionFailed",
    "check_constant_strength",
    "check_hypoelliptic",
    "check_sequence",
    "check_weight_sandwich",
    "equally_strong",
    "estimate_d",
    "evaluate",
    "fit_inclusion",
    "fit_power_bound",
    "p_tilde",
    "run_cli",
]
