"""Analytical cost models – memory, FPGA resources and cycles."""

from estimation.cost_model import (
    SweepKind,
    best_split,
    cycle_model,
    device_fit,
    memory_grid,
    memory_model,
    resource_model,
    sweep,
)

__all__ = [
    "SweepKind",
    "best_split",
    "cycle_model",
    "device_fit",
    "memory_grid",
    "memory_model",
    "resource_model",
    "sweep",
]
