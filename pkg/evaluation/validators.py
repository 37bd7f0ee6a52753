"""Invariant checks over partitions, states and the gate table."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from circuits.model import Circuit
from gates.library import GateName, GateSpec, arity, gate_matrix, is_parameterized
from kernels.arithmetic import ScalarMode
from kernels.coo import StateVector, dense_from_coo, is_unit_row, row_counts
from orchestration.partition import Partition

logger = logging.getLogger(__name__)


@dataclass
class ValidationResult:
    """Outcome of a validation check."""

    valid: bool
    issues: list[str]

    def __bool__(self) -> bool:
        return self.valid


class EmulatorValidator:
    """Checks the structural and numerical invariants of an emulation."""

    def __init__(
        self,
        norm_tolerance: float = 1e-9,
        unitarity_tolerance: float = 1e-11,
        fixed_unitarity_tolerance: float = 2.0 ** -26,
    ) -> None:
        self.norm_tolerance = norm_tolerance
        self.unitarity_tolerance = unitarity_tolerance
        self.fixed_unitarity_tolerance = fixed_unitarity_tolerance

    def validate_partition(self, part: Partition) -> ValidationResult:
        """T(Ḡ) unit-row and factor dimensions multiplying to ``2**n``."""
        issues: list[str] = []
        if not is_unit_row(part.g_bar):
            counts = row_counts(part.g_bar)
            bad = int(np.flatnonzero(counts != 1)[0])
            issues.append(f"T(Ḡ) row {bad} holds {int(counts[bad])} non-zeros (n_bar={part.n_bar})")
        if part.g_bar.dim * part.g_low.dim != 1 << part.n:
            issues.append(
                f"factor dimensions {part.g_bar.dim} x {part.g_low.dim} != 2^{part.n}"
            )
        if issues:
            logger.warning("Partition invariant violated: %s", "; ".join(issues))
        return ValidationResult(valid=not issues, issues=issues)

    def validate_state(self, state: StateVector) -> ValidationResult:
        issues: list[str] = []
        drift = abs(state.norm_squared() - 1.0)
        tolerance = self.norm_tolerance if state.mode is ScalarMode.FLOAT else 2.0 ** -20
        if drift > tolerance:
            issues.append(f"norm² off by {drift:.3e} (tolerance {tolerance:.1e})")
        if state.saturated:
            issues.append("fixed-point saturation occurred")
        return ValidationResult(valid=not issues, issues=issues)

    def validate_circuit(self, circuit: Circuit) -> ValidationResult:
        """Soft checks on a circuit that already passed construction."""
        issues: list[str] = []
        if not circuit.ops:
            issues.append(f"circuit {circuit.name!r} has no gates")
        unused = set(range(circuit.n)) - {q for op in circuit.ops for q in op.targets}
        if circuit.ops and unused:
            issues.append(f"qubits {sorted(unused)} are never touched")
        return ValidationResult(valid=not issues, issues=issues)

    def validate_gate_table(
        self,
        mode: ScalarMode = ScalarMode.FLOAT,
        draws: int = 100,
        seed: int = 0,
    ) -> ValidationResult:
        """``U U† = I`` for every gate, with *draws* random angles for parameterized gates."""
        rng = np.random.default_rng(seed)
        tolerance = self.unitarity_tolerance if mode is ScalarMode.FLOAT else self.fixed_unitarity_tolerance
        issues: list[str] = []
        for name in GateName:
            angles = rng.uniform(0.0, 2 * math.pi, draws) if is_parameterized(name) else [None]
            targets = (0, 1) if arity(name) == 2 else (0,)
            for angle in angles:
                spec = GateSpec(name, targets, None if angle is None else float(angle))
                u = dense_from_coo(gate_matrix(spec, mode))
                error = float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
                if error > tolerance:
                    issues.append(f"{spec}: |UU† - I| = {error:.3e}")
                    break
        return ValidationResult(valid=not issues, issues=issues)
