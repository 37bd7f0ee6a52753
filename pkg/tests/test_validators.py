"""Tests for invariant validators."""

from __future__ import annotations

from circuits.model import Circuit
from evaluation.validators import EmulatorValidator, ValidationResult
from gates.library import GateSpec, gate_matrix
from kernels.arithmetic import ScalarMode
from kernels.coo import StateVector, identity
from orchestration.fusion import FusedGroup
from orchestration.partition import Partition, partition


class TestValidationResult:
    def test_truthiness(self):
        assert ValidationResult(valid=True, issues=[])
        assert not ValidationResult(valid=False, issues=["x"])


class TestValidatePartition:
    def setup_method(self):
        self.validator = EmulatorValidator()

    def test_valid_partition(self):
        part = partition(FusedGroup([GateSpec("X", (0,)), GateSpec("H", (2,))]), 3)
        assert self.validator.validate_partition(part)

    def test_dense_top_factor_flagged(self):
        part = Partition(2, 1, gate_matrix(GateSpec("H", (0,))), identity(2))
        result = self.validator.validate_partition(part)
        assert not result
        assert "row 0 holds 2 non-zeros" in result.issues[0]

    def test_dimension_mismatch_flagged(self):
        part = Partition(3, 1, identity(2), identity(2))
        result = self.validator.validate_partition(part)
        assert any("factor dimensions" in issue for issue in result.issues)


class TestValidateState:
    def test_normalized(self):
        assert EmulatorValidator().validate_state(StateVector.zero_state(3))

    def test_norm_drift(self):
        result = EmulatorValidator().validate_state(StateVector.from_amplitudes([1, 1]))
        assert not result
        assert "norm" in result.issues[0]

    def test_fixed_state_quantization_tolerated(self):
        psi = StateVector.from_amplitudes([0.6, 0.8], ScalarMode.FIXED)
        assert EmulatorValidator().validate_state(psi)


class TestValidateCircuit:
    def test_clean(self, bell):
        assert EmulatorValidator().validate_circuit(bell)

    def test_empty(self):
        result = EmulatorValidator().validate_circuit(Circuit(2, []))
        assert "no gates" in result.issues[0]

    def test_idle_qubits(self):
        result = EmulatorValidator().validate_circuit(Circuit(3, [GateSpec("X", (0,))]))
        assert "[1, 2]" in result.issues[0]


class TestValidateGateTable:
    def test_float(self):
        assert EmulatorValidator().validate_gate_table(ScalarMode.FLOAT, draws=20, seed=1)

    def test_tight_tolerance_flags_fixed_rounding(self):
        strict = EmulatorValidator(fixed_unitarity_tolerance=0.0)
        result = strict.validate_gate_table(ScalarMode.FIXED, draws=5, seed=1)
        assert not result
        assert "|UU† - I|" in result.issues[0]
