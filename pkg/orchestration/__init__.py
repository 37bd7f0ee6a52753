"""Orchestration – fusion, partitioning and the emulator driver."""

from orchestration.emulator import Emulator, GroupSummary, RunResult, run_circuit
from orchestration.fusion import FusedGroup, fuse
from orchestration.partition import Partition, choose_n_bar, evolve_group, partition

__all__ = [
    "Emulator",
    "FusedGroup",
    "GroupSummary",
    "Partition",
    "RunResult",
    "choose_n_bar",
    "evolve_group",
    "fuse",
    "partition",
    "run_circuit",
]
