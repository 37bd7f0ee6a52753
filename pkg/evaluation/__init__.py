"""Evaluation – dense reference oracle, state metrics and invariant validators."""

from evaluation.metrics import (
    StateComparison,
    compare_states,
    fidelity,
    max_abs_deviation,
    norm_error,
)
from evaluation.oracle import DenseOperator, dense_run, dense_unitary
from evaluation.validators import EmulatorValidator, ValidationResult

__all__ = [
    "DenseOperator",
    "EmulatorValidator",
    "StateComparison",
    "ValidationResult",
    "compare_states",
    "dense_run",
    "dense_unitary",
    "fidelity",
    "max_abs_deviation",
    "norm_error",
]
