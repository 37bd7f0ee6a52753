"""Benchmark runner for QFT and random-circuit suites.

Each point runs the emulator (unless ``model_only``) and evaluates the cycle
model at ``P`` PEs and at a one-PE baseline holding the same aggregate local
memory, so the P-fold tensor-product and multiply speedup is visible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel

from circuits.builders import build_qft, build_random
from circuits.model import Circuit
from data.models import BenchmarkSpec, CostModelSettings, ExperimentConfig, PEConfig
from estimation.cost_model import baseline_config, cycle_model
from kernels.arithmetic import ScalarMode
from orchestration.emulator import Emulator
from orchestration.fusion import fuse

logger = logging.getLogger(__name__)


class BenchmarkRow(BaseModel):
    suite: str
    circuit: str
    n: int
    gates: int
    groups: int
    pe_count: int
    wall_s: float | None
    regime: str
    cycles: int
    tp_mm: int
    baseline_tp_mm: int
    speedup: float


@dataclass
class BenchmarkResult:
    """All rows produced by one suite."""

    name: str
    rows: list[BenchmarkRow] = field(default_factory=list)

    def summarise(self) -> dict[str, Any]:
        if not self.rows:
            return {"name": self.name, "points": 0}
        timed = [r.wall_s for r in self.rows if r.wall_s is not None]
        return {
            "name": self.name,
            "points": len(self.rows),
            "max_qubits": max(r.n for r in self.rows),
            "max_speedup": max(r.speedup for r in self.rows),
            "total_wall_s": round(sum(timed), 4) if timed else None,
        }


def build_suite_circuit(suite: str, n: int, depth: int = 20, seed: int = 0) -> Circuit:
    if suite == "qft":
        return build_qft(n)
    if suite == "random":
        return build_random(n, depth, seed + n)
    raise ValueError(f"Unknown suite {suite!r}. Choose from ['qft', 'random']")


class BenchmarkRunner:
    """Run benchmark suites over qubit counts and PE counts.

    Parameters
    ----------
    mode : ScalarMode | str
        Scalar mode of the emulator runs.
    ldm_depth, tgbar_depth : int
        Memory depths of every PE configuration.
    model_only : bool
        Skip emulation and report modeled cycles only.
    """

    def __init__(
        self,
        mode: ScalarMode | str = ScalarMode.FLOAT,
        ldm_depth: int = 2 ** 16,
        tgbar_depth: int = 2 ** 16,
        n_bar: int | None = None,
        workers: int = 1,
        model_only: bool = False,
        settings: CostModelSettings | None = None,
    ) -> None:
        self.mode = mode
        self.ldm_depth = ldm_depth
        self.tgbar_depth = tgbar_depth
        self.n_bar = n_bar
        self.workers = workers
        self.model_only = model_only
        self.settings = settings or CostModelSettings()

    def run_point(self, suite: str, circuit: Circuit, pe_count: int) -> BenchmarkRow:
        cfg = PEConfig(pe_count=pe_count, ldm_depth=self.ldm_depth, tgbar_depth=self.tgbar_depth)
        wall: float | None = None
        if self.model_only:
            groups = len(fuse(circuit))
        else:
            result = Emulator(self.mode, cfg, self.n_bar, self.workers).run(circuit)
            groups = result.stats["groups"]
            wall = result.stats["elapsed_s"]
        n_bar = None if self.n_bar is None else min(self.n_bar, circuit.n)
        report = cycle_model(circuit.n, groups, cfg, n_bar, self.settings.max_cycle_qubits)
        baseline = cycle_model(circuit.n, groups, baseline_config(cfg), n_bar, self.settings.max_cycle_qubits)
        return BenchmarkRow(
            suite=suite,
            circuit=circuit.name,
            n=circuit.n,
            gates=circuit.gate_count,
            groups=groups,
            pe_count=pe_count,
            wall_s=wall,
            regime=report.regime.value,
            cycles=report.total,
            tp_mm=report.tp_mm,
            baseline_tp_mm=baseline.tp_mm,
            speedup=round(baseline.tp_mm / report.tp_mm, 4) if report.tp_mm else 1.0,
        )

    def run_suite(
        self,
        suite: str,
        qubits: list[int],
        pes: list[int],
        depth: int = 20,
        seed: int = 0,
        name: str | None = None,
        repetitions: int = 1,
    ) -> BenchmarkResult:
        name = name or suite
        result = BenchmarkResult(name=name)
        logger.info(
            "Benchmark '%s': suite=%s, %d qubit counts x %d PE counts x %d reps, seed=%d",
            name, suite, len(qubits), len(pes), repetitions, seed,
        )
        for n in qubits:
            circuit = build_suite_circuit(suite, n, depth, seed)
            for pe_count in pes:
                for _ in range(repetitions):
                    result.rows.append(self.run_point(suite, circuit, pe_count))
        return result

    def run_spec(self, spec: BenchmarkSpec) -> BenchmarkResult:
        return self.run_suite(
            spec.suite, spec.qubits, spec.pes, spec.depth, spec.seed, spec.name, spec.repetitions
        )

    def run_from_config(self, config_path: str | Path) -> list[BenchmarkResult]:
        """Parse a YAML experiment config and execute all benchmarks."""
        with open(config_path) as f:
            experiment = ExperimentConfig.model_validate(yaml.safe_load(f) or {})
        logger.info("Experiment '%s': %d benchmarks", experiment.name, len(experiment.benchmarks))
        return [self.run_spec(spec) for spec in experiment.benchmarks]
