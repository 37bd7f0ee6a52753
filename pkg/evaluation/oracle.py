"""Dense double-precision reference simulator.

Deliberately naive and independent of the COO path: it has its own textbook
gate matrices, and a controlled gate is ``|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`` built from
projectors, so it works for any pair of qubits.  Every gate is a sum of
Kronecker terms; :func:`dense_unitary` multiplies the full ``2**n`` matrices,
:func:`dense_run` contracts the same factors into the state qubit by qubit.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from circuits.model import Circuit
from gates.library import GateSpec
from kernels.arithmetic import ScalarMode
from kernels.coo import StateVector
from kernels.errors import ShapeError, SizeError

logger = logging.getLogger(__name__)

MAX_RUN_QUBITS = 14
MAX_UNITARY_QUBITS = 10

_I2 = np.eye(2, dtype=np.complex128)
_P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _rz(theta: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta)])


TEXTBOOK: dict[str, Callable[[float | None], np.ndarray]] = {
    "I": lambda _: _I2,
    "X": lambda _: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": lambda _: np.array([[0, -1j], [1j, 0]]),
    "Z": lambda _: np.diag([1, -1]).astype(np.complex128),
    "H": lambda _: np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2),
    "S": lambda _: np.diag([1, 1j]),
    "SDG": lambda _: np.diag([1, -1j]),
    "T": lambda _: np.diag([1, cmath.exp(0.25j * math.pi)]),
    "TDG": lambda _: np.diag([1, cmath.exp(-0.25j * math.pi)]),
    "SX": lambda _: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
    "P": lambda lam: np.diag([1, cmath.exp(1j * lam)]),
    "RX": _rx,
    "RY": _ry,
    "RZ": _rz,
}

#: controlled gate -> the single-qubit gate applied when the control is 1
CONTROLLED: dict[str, str] = {
    "CX": "X", "CY": "Y", "CZ": "Z", "CH": "H",
    "CP": "P", "CRX": "RX", "CRY": "RY", "CRZ": "RZ",
}

Term = dict[int, np.ndarray]


@dataclass(eq=False)
class DenseOperator:
    """Full square operator of power-of-two dimension."""

    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries = np.asarray(self.entries, dtype=np.complex128)
        if self.entries.shape != (self.dim, self.dim):
            raise ShapeError(f"Dense operator must be {self.dim}x{self.dim}, got {self.entries.shape}")
        if self.dim < 1 or self.dim & (self.dim - 1):
            raise ShapeError(f"Dense operator dimension must be a power of two, got {self.dim}")

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        return self.entries @ amplitudes

    def unitarity_error(self) -> float:
        """Largest entry of ``|U U† - I|``."""
        product = self.entries @ self.entries.conj().T
        return float(np.max(np.abs(product - np.eye(self.dim))))


def gate_terms(op: GateSpec) -> list[Term]:
    """*op* as a sum of Kronecker terms; absent qubits carry the identity."""
    name = op.name.value
    if name in CONTROLLED:
        control, target = op.targets
        u = TEXTBOOK[CONTROLLED[name]](op.param)
        return [{control: _P0}, {control: _P1, target: u}]
    return [{op.targets[0]: TEXTBOOK[name](op.param)}]


def dense_gate(op: GateSpec, n: int) -> np.ndarray:
    """The full ``2**n`` matrix of one gate, by explicit Kronecker products."""
    total = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for term in gate_terms(op):
        factor = np.ones((1, 1), dtype=np.complex128)
        for q in range(n):
            factor = np.kron(factor, term.get(q, _I2))
        total += factor
    return total


def _apply_term(tensor: np.ndarray, term: Term) -> np.ndarray:
    for qubit, matrix in term.items():
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [qubit])), 0, qubit)
    return tensor


def _as_ops(source: Circuit | Iterable[GateSpec], n: int | None) -> tuple[list[GateSpec], int]:
    if isinstance(source, Circuit):
        return list(source.ops), source.n
    gates = getattr(source, "gates", source)
    if n is None:
        raise ShapeError("Qubit count is required for a bare gate list")
    return list(gates), n


def dense_run(
    circuit: Circuit,
    initial: StateVector | None = None,
    max_qubits: int = MAX_RUN_QUBITS,
) -> StateVector:
    """Reference final state, in float mode, gate by gate without fusion."""
    if circuit.n > max_qubits:
        raise SizeError(f"Dense reference run limited to {max_qubits} qubits, circuit has {circuit.n}")
    psi = initial if initial is not None else circuit.initial_state(ScalarMode.FLOAT)
    if psi.n != circuit.n:
        raise ShapeError(f"Initial state has {psi.n} qubits, circuit has {circuit.n}")
    tensor = psi.to_complex().reshape((2,) * circuit.n)
    for op in circuit.ops:
        tensor = sum(_apply_term(tensor, term) for term in gate_terms(op))
    return StateVector(circuit.n, np.asarray(tensor).reshape(-1), ScalarMode.FLOAT)


def dense_unitary(
    source: Circuit | Iterable[GateSpec],
    n: int | None = None,
    max_qubits: int = MAX_UNITARY_QUBITS,
) -> DenseOperator:
    """Product of all gate matrices of a circuit, fused group or gate list."""
    ops, n = _as_ops(source, n)
    if n > max_qubits:
        raise SizeError(f"Dense unitary limited to {max_qubits} qubits, got {n}")
    unitary = np.eye(1 << n, dtype=np.complex128)
    for op in ops:
        unitary = dense_gate(op, n) @ unitary
    return DenseOperator(1 << n, unitary)
