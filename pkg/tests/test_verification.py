"""Tests for the random-circuit verification harness."""

from __future__ import annotations

import pytest

from experiments.verification import FIXED_DRIFT_PER_GATE, OracleVerifier
from gates import library
from gates.library import GateName
from kernels.arithmetic import ScalarMode
from kernels.errors import RangeError


class TestOracleVerifier:
    def test_zero_trials_pass(self):
        report = OracleVerifier().run(n_max=4, depth=10, trials=0)
        assert report.passed
        assert report.to_dict()["trials"] == 0

    @pytest.mark.parametrize("n_max", [0, 11])
    def test_qubit_range(self, n_max):
        with pytest.raises(RangeError):
            OracleVerifier().run(n_max=n_max, depth=10, trials=1)

    def test_depth_range(self):
        with pytest.raises(RangeError):
            OracleVerifier().run(n_max=3, depth=0, trials=1)

    def test_float_run_passes(self):
        report = OracleVerifier().run(n_max=6, depth=25, trials=25, seed=3)
        assert report.passed
        assert report.partitions_checked > 0
        assert report.unit_row_violations == 0
        assert report.max_deviation <= 1e-10

    def test_fixed_run_passes(self):
        report = OracleVerifier(ScalarMode.FIXED).run(n_max=4, depth=20, trials=15, seed=5)
        assert report.passed, [f.reason for f in report.failures]

    def test_tolerances(self):
        assert OracleVerifier(float_tolerance=1e-9).tolerance(30) == 1e-9
        assert OracleVerifier(ScalarMode.FIXED).tolerance(30) == 30 * FIXED_DRIFT_PER_GATE

    def test_deterministic(self):
        first = OracleVerifier().run(n_max=5, depth=15, trials=10, seed=7)
        second = OracleVerifier().run(n_max=5, depth=15, trials=10, seed=7)
        assert first.to_dict() == second.to_dict()

    def test_corrupted_gate_detected(self, monkeypatch):
        monkeypatch.setitem(library.GATE_TABLE, GateName.X, lambda _: [(0, 0, 1), (1, 1, 1)])
        report = OracleVerifier().run(n_max=3, depth=30, trials=20, seed=0)
        assert not report.passed
        failure = report.failures[0]
        assert failure.seed >= 0
        assert "exceeds" in failure.reason
        assert failure.circuit_text.startswith("qubits")
