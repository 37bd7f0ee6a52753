"""Data layer – Pydantic configuration and report models, table output."""

from data.models import (
    BenchmarkSpec,
    CycleReport,
    DeviceSpec,
    EmulatorSettings,
    ExperimentConfig,
    MemoryReport,
    OutputFormat,
    PEConfig,
    Regime,
    ResourceReport,
    RunConfig,
)
from data.tables import render, to_csv, to_json, to_text, write_table

__all__ = [
    "BenchmarkSpec",
    "CycleReport",
    "DeviceSpec",
    "EmulatorSettings",
    "ExperimentConfig",
    "MemoryReport",
    "OutputFormat",
    "PEConfig",
    "Regime",
    "ResourceReport",
    "RunConfig",
    "render",
    "to_csv",
    "to_json",
    "to_text",
    "write_table",
]
