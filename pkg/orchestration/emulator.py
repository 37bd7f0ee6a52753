"""Emulator – runs a circuit end to end: fuse, partition, evolve.

Each fused group costs one tensor-product build (``T(Ḡ)`` and ``T(G)``) and
one block-wise operator-state multiplication.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from circuits.model import Circuit
from data.models import PEConfig
from kernels.arithmetic import ScalarMode, create_arithmetic
from kernels.coo import StateVector, is_unit_row
from kernels.errors import PreconditionError
from orchestration.fusion import FusedGroup, fuse
from orchestration.partition import Partition, evolve_group, partition

logger = logging.getLogger(__name__)


@dataclass
class GroupSummary:
    index: int
    gates: list[str]
    n_bar: int
    g_bar_nnz: int
    g_low_nnz: int
    unit_row: bool
    footprint_bytes: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.index,
            "gates": " ".join(f"[{g}]" for g in self.gates),
            "n_bar": self.n_bar,
            "g_bar_nnz": self.g_bar_nnz,
            "g_low_nnz": self.g_low_nnz,
            "unit_row": self.unit_row,
            "footprint_bytes": self.footprint_bytes,
        }


@dataclass
class RunResult:
    """Final state and bookkeeping of one emulated circuit."""

    circuit: str
    n: int
    mode: ScalarMode
    state: StateVector
    groups: list[GroupSummary] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def saturated(self) -> bool:
        return self.state.saturated

    def amplitudes(self) -> np.ndarray:
        return self.state.to_complex()

    def to_dict(self) -> dict[str, Any]:
        return {
            "circuit": self.circuit,
            "qubits": self.n,
            "mode": self.mode.value,
            "groups": len(self.groups),
            "stats": self.stats,
        }


def _summarise(index: int, group: FusedGroup, part: Partition) -> GroupSummary:
    return GroupSummary(
        index=index,
        gates=[str(g) for g in group.gates],
        n_bar=part.n_bar,
        g_bar_nnz=part.g_bar.nnz,
        g_low_nnz=part.g_low.nnz,
        unit_row=is_unit_row(part.g_bar),
        footprint_bytes=part.footprint_bytes,
    )


class Emulator:
    """Runs circuits through fusion, partitioning and block-wise evolution.

    Parameters
    ----------
    mode : ScalarMode | str
        ``float`` (complex128) or ``fixed`` (Q2.30).
    pe : PEConfig | None
        Processing-element configuration; block rows are dealt round-robin over
        ``pe.pe_count`` logical PEs.
    n_bar : int | None
        Dividing-point hint passed to every partition; ``None`` uses ``⌈n/2⌉``.
    workers : int
        Threads used to execute the logical PEs.
    norm_tolerance : float
        Float-mode drift of ``‖ψ‖²`` that triggers a warning.
    """

    def __init__(
        self,
        mode: ScalarMode | str = ScalarMode.FLOAT,
        pe: PEConfig | None = None,
        n_bar: int | None = None,
        workers: int = 1,
        norm_tolerance: float = 1e-9,
    ) -> None:
        self.mode = create_arithmetic(mode).mode
        self.pe = pe or PEConfig()
        self.n_bar = n_bar
        self.workers = workers
        self.norm_tolerance = norm_tolerance

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def iter_partitions(self, circuit: Circuit) -> Iterator[tuple[FusedGroup, Partition]]:
        """Yield each fused group with its partition, built only when requested."""
        hint = None if self.n_bar is None else min(self.n_bar, circuit.n)
        for group in fuse(circuit):
            yield group, partition(group, circuit.n, hint, self.mode)

    def partitions(self, circuit: Circuit) -> list[tuple[FusedGroup, Partition]]:
        return list(self.iter_partitions(circuit))

    def fuse_report(self, circuit: Circuit) -> list[GroupSummary]:
        """Per-group fusion and partition summary, without evolving a state."""
        return [_summarise(i, g, p) for i, (g, p) in enumerate(self.partitions(circuit))]

    def run(
        self,
        circuit: Circuit,
        initial: StateVector | None = None,
        on_group: Callable[[int, Partition], None] | None = None,
    ) -> RunResult:
        """Evolve *initial* (default: the circuit's own initial state) through *circuit*."""
        psi = initial if initial is not None else circuit.initial_state(self.mode)
        if psi.n != circuit.n or psi.mode is not self.mode:
            raise PreconditionError(
                f"Initial state ({psi.n} qubits, {psi.mode.value}) does not match "
                f"circuit {circuit.name!r} ({circuit.n} qubits, {self.mode.value})"
            )

        logger.info(
            "Running circuit %r: %d qubits, %d gates, mode=%s, %d PEs",
            circuit.name,
            circuit.n,
            circuit.gate_count,
            self.mode.value,
            self.pe.pe_count,
        )
        started = time.perf_counter()
        summaries: list[GroupSummary] = []
        block_matvecs = 0
        norm_warned = False

        for index, (group, part) in enumerate(self.iter_partitions(circuit)):
            psi = evolve_group(part, psi, self.pe, self.workers)
            summaries.append(_summarise(index, group, part))
            block_matvecs += part.block_count
            if on_group is not None:
                on_group(index, part)
            if self.mode is ScalarMode.FLOAT:
                drift = abs(psi.norm_squared() - 1.0)
                if drift > self.norm_tolerance and not norm_warned:
                    logger.warning("Norm drift %.3e after group %d of %r", drift, index, circuit.name)
                    norm_warned = True

        elapsed = time.perf_counter() - started
        if psi.saturated:
            logger.warning("Fixed-point saturation occurred while running %r", circuit.name)

        stats = {
            "groups": len(summaries),
            "tp_calls": len(summaries),
            "mm_calls": len(summaries),
            "block_matvecs": block_matvecs,
            "max_g_low_nnz": max((s.g_low_nnz for s in summaries), default=0),
            "max_footprint_bytes": max((s.footprint_bytes for s in summaries), default=0),
            "saturated": psi.saturated,
            "elapsed_s": round(elapsed, 6),
        }
        logger.info("Circuit %r completed: %d groups in %.3fs", circuit.name, len(summaries), elapsed)
        return RunResult(circuit.name, circuit.n, self.mode, psi, summaries, stats)


def run_circuit(
    circuit: Circuit,
    mode: ScalarMode | str = ScalarMode.FLOAT,
    cfg: PEConfig | None = None,
    initial: StateVector | None = None,
    n_bar: int | None = None,
    workers: int = 1,
) -> StateVector:
    """Final state of *circuit*; shorthand for :meth:`Emulator.run`."""
    return Emulator(mode, cfg, n_bar, workers).run(circuit, initial).state
