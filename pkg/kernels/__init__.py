"""Numeric kernels – Q2.30 arithmetic, COO operators and state vectors."""

from kernels.arithmetic import Arithmetic, ScalarMode, create_arithmetic
from kernels.coo import (
    CooMatrix,
    CooTuple,
    StateVector,
    coo_from_dense,
    dense_from_coo,
    identity,
    is_unit_row,
    kron_all,
    matvec,
    scale,
    tensor_product,
)
from kernels.errors import (
    CircuitError,
    CircuitParseError,
    Diagnostic,
    EmulatorError,
    GateError,
    PreconditionError,
    RangeError,
    ShapeError,
    SizeError,
)
from kernels.fixedpoint import FixedComplex, FixedQ2_30

__all__ = [
    "Arithmetic",
    "CircuitError",
    "CircuitParseError",
    "CooMatrix",
    "CooTuple",
    "Diagnostic",
    "EmulatorError",
    "FixedComplex",
    "FixedQ2_30",
    "GateError",
    "PreconditionError",
    "RangeError",
    "ScalarMode",
    "ShapeError",
    "SizeError",
    "StateVector",
    "coo_from_dense",
    "create_arithmetic",
    "dense_from_coo",
    "identity",
    "is_unit_row",
    "kron_all",
    "matvec",
    "scale",
    "tensor_product",
]
