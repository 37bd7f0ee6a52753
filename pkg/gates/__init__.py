"""Gate library – compressed gate table and gate specs."""

from gates.library import (
    GATE_TABLE,
    GateName,
    GateSpec,
    arity,
    gate_matrix,
    gate_name,
    is_parameterized,
    is_sparse,
    is_unit_row,
)

__all__ = [
    "GATE_TABLE",
    "GateName",
    "GateSpec",
    "arity",
    "gate_matrix",
    "gate_name",
    "is_parameterized",
    "is_sparse",
    "is_unit_row",
]
