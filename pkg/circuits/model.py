"""Circuit container and validation."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from gates.library import GateSpec
from kernels.arithmetic import ScalarMode
from kernels.coo import StateVector
from kernels.errors import CircuitError

logger = logging.getLogger(__name__)

MAX_QUBITS = 32
NORM_TOLERANCE = 1e-6


@dataclass
class Circuit:
    """An ordered gate list on ``n`` qubits, with an optional initial state.

    ``initial`` holds the ``state`` amplitudes given in a ``.qc`` file as
    ``(index, amplitude)`` pairs; when empty the circuit starts from ``|0…0⟩``.
    """

    n: int
    ops: list[GateSpec] = field(default_factory=list)
    name: str = "circuit"
    initial: list[tuple[int, complex]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.ops = list(self.ops)
        self.initial = [(int(i), complex(a)) for i, a in self.initial]
        issues = validate_circuit(self)
        if issues:
            raise CircuitError(f"Invalid circuit {self.name!r}: " + "; ".join(issues))

    @property
    def gate_count(self) -> int:
        return len(self.ops)

    @property
    def parameterized_count(self) -> int:
        return sum(1 for op in self.ops if op.is_parameterized)

    def initial_state(self, mode: ScalarMode | str = ScalarMode.FLOAT) -> StateVector:
        if not self.initial:
            return StateVector.zero_state(self.n, mode)
        amps = np.zeros(1 << self.n, dtype=np.complex128)
        for index, amp in self.initial:
            amps[index] += amp
        return StateVector.from_amplitudes(amps, mode)

    def extended(self, ops: Iterable[GateSpec]) -> Circuit:
        return Circuit(self.n, self.ops + list(ops), self.name, list(self.initial))

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "qubits": self.n,
            "gates": self.gate_count,
            "parameterized": self.parameterized_count,
            "ops": [str(op) for op in self.ops],
        }


def op_issues(op: GateSpec, n: int) -> list[str]:
    """Problems with placing *op* on an ``n``-qubit register."""
    issues: list[str] = []
    bad = [t for t in op.targets if t >= n]
    if bad:
        issues.append(f"{op.name.value.lower()}: qubit index {bad[0]} >= {n}")
    if op.arity == 2 and abs(op.targets[0] - op.targets[1]) != 1:
        issues.append(
            f"{op.name.value.lower()}: two-qubit gate on non-adjacent qubits {list(op.targets)}"
        )
    return issues


def name_issue(name: str) -> str | None:
    """Why *name* cannot be written as a ``name`` statement, or ``None``."""
    if not name.strip():
        return "circuit name must not be empty"
    if name != name.strip() or "#" in name or name.splitlines() != [name]:
        return f"circuit name {name!r} has surrounding whitespace, '#' or a line break"
    return None


def validate_circuit(circuit: Circuit) -> list[str]:
    issues: list[str] = []
    if (issue := name_issue(circuit.name)) is not None:
        issues.append(issue)
    if not 1 <= circuit.n <= MAX_QUBITS:
        issues.append(f"qubit count {circuit.n} outside [1, {MAX_QUBITS}]")
        return issues
    for position, op in enumerate(circuit.ops):
        issues.extend(f"op {position}: {msg}" for msg in op_issues(op, circuit.n))
    if circuit.initial:
        dim = 1 << circuit.n
        seen: set[int] = set()
        for index, _ in circuit.initial:
            if not 0 <= index < dim:
                issues.append(f"state index {index} outside [0, {dim})")
            elif index in seen:
                issues.append(f"state index {index} given twice")
            seen.add(index)
        norm = sum(abs(a) ** 2 for _, a in circuit.initial)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            issues.append(f"initial state norm² {norm:.9f} is not 1 within {NORM_TOLERANCE}")
    return issues
