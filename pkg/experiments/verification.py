"""Seeded random-circuit equivalence harness against the dense oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from circuits.builders import build_random
from circuits.parser import print_circuit
from data.models import PEConfig
from evaluation.metrics import max_abs_deviation
from evaluation.oracle import dense_run
from evaluation.validators import EmulatorValidator
from kernels.arithmetic import ScalarMode, create_arithmetic
from kernels.errors import RangeError
from orchestration.emulator import Emulator
from orchestration.partition import Partition

logger = logging.getLogger(__name__)

MAX_VERIFY_QUBITS = 10
FIXED_DRIFT_PER_GATE = 2.0 ** -26


@dataclass
class TrialFailure:
    seed: int
    n: int
    depth: int
    deviation: float
    reason: str
    circuit_text: str


@dataclass
class VerificationReport:
    trials: int
    mode: ScalarMode
    tolerance: float
    max_deviation: float = 0.0
    partitions_checked: int = 0
    unit_row_violations: int = 0
    failures: list[TrialFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "mode": self.mode.value,
            "tolerance": self.tolerance,
            "max_deviation": self.max_deviation,
            "partitions_checked": self.partitions_checked,
            "unit_row_violations": self.unit_row_violations,
            "failures": len(self.failures),
            "passed": self.passed,
        }


class OracleVerifier:
    """Runs random circuits through the emulator and the dense oracle and compares.

    Trial ``t`` uses seed ``seed + t`` for both its shape (qubits, depth) and
    its gates, so any failure can be replayed from the reported seed alone.
    """

    def __init__(
        self,
        mode: ScalarMode | str = ScalarMode.FLOAT,
        pe: PEConfig | None = None,
        n_bar: int | None = None,
        float_tolerance: float = 1e-10,
        workers: int = 1,
    ) -> None:
        self.mode = create_arithmetic(mode).mode
        self.pe = pe or PEConfig()
        self.n_bar = n_bar
        self.float_tolerance = float_tolerance
        self.workers = workers
        self.validator = EmulatorValidator()

    def tolerance(self, depth: int) -> float:
        if self.mode is ScalarMode.FLOAT:
            return self.float_tolerance
        return max(depth, 1) * FIXED_DRIFT_PER_GATE

    def run(self, n_max: int, depth: int, trials: int, seed: int = 0) -> VerificationReport:
        if not 1 <= n_max <= MAX_VERIFY_QUBITS:
            raise RangeError(f"n_max must lie in [1, {MAX_VERIFY_QUBITS}], got {n_max}")
        if depth < 1 or trials < 0:
            raise RangeError(f"depth must be >= 1 and trials >= 0, got depth={depth}, trials={trials}")

        report = VerificationReport(trials=trials, mode=self.mode, tolerance=self.tolerance(depth))
        emulator = Emulator(self.mode, self.pe, self.n_bar, self.workers)
        logger.info("Verifying %d trials, n <= %d, depth <= %d, seed=%d, mode=%s",
                    trials, n_max, depth, seed, self.mode.value)

        for t in range(trials):
            trial_seed = seed + t
            rng = np.random.default_rng(trial_seed)
            n = int(rng.integers(1, n_max + 1))
            trial_depth = int(rng.integers(1, depth + 1))
            circuit = build_random(n, trial_depth, trial_seed)
            violations: list[str] = []

            def check(_: int, part: Partition) -> None:
                report.partitions_checked += 1
                outcome = self.validator.validate_partition(part)
                if not outcome:
                    report.unit_row_violations += 1
                    violations.extend(outcome.issues)

            try:
                result = emulator.run(circuit, on_group=check)
            except Exception as exc:
                logger.exception("Trial seed=%d crashed", trial_seed)
                report.failures.append(
                    TrialFailure(trial_seed, n, trial_depth, float("inf"), repr(exc), print_circuit(circuit))
                )
                continue

            deviation = max_abs_deviation(result.state, dense_run(circuit))
            report.max_deviation = max(report.max_deviation, deviation)
            limit = self.tolerance(trial_depth)
            reason = ""
            if violations:
                reason = "; ".join(violations)
            elif not deviation <= limit:
                reason = f"deviation {deviation:.3e} exceeds {limit:.1e}"
            if reason:
                logger.warning("Trial seed=%d failed: %s", trial_seed, reason)
                report.failures.append(
                    TrialFailure(trial_seed, n, trial_depth, deviation, reason, print_circuit(circuit))
                )

        logger.info("Verification finished: %d/%d passed, max deviation %.3e",
                    trials - len(report.failures), trials, report.max_deviation)
        return report
