"""Pydantic models for configuration and emitted reports."""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    ValidationInfo,
    computed_field,
    field_validator,
    model_validator,
)

from kernels.arithmetic import ScalarMode

GB = 1e9
MB = 1e6


def _power_of_two(value: int, name: str, allow_zero: bool = False) -> int:
    if allow_zero and value == 0:
        return value
    if value < 1 or value & (value - 1):
        zero = "zero or " if allow_zero else ""
        raise ValueError(f"{name} must be {zero}a power of two, got {value}")
    return value


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class Regime(str, Enum):
    RESIDENT = "resident"
    STREAMING = "streaming"


# ---------------------------------------------------------------------------
# Hardware / run configuration
# ---------------------------------------------------------------------------

class PEConfig(BaseModel):
    """Accelerator configuration: P processing elements and their memory depths.

    Depths are counted in 128-bit words.
    """

    model_config = ConfigDict(frozen=True)

    pe_count: int = 4
    ldm_depth: int = 2 ** 16
    tgbar_depth: int = 2 ** 16

    @field_validator("pe_count")
    @classmethod
    def _check_pes(cls, v: int) -> int:
        return _power_of_two(v, "pe_count")

    @field_validator("ldm_depth", "tgbar_depth")
    @classmethod
    def _check_depth(cls, v: int, info: ValidationInfo) -> int:
        return _power_of_two(v, info.field_name, allow_zero=True)

    @property
    def label(self) -> str:
        return f"P={self.pe_count}/ldm=2^{max(self.ldm_depth, 1).bit_length() - 1}"


class RunConfig(BaseModel):
    """Merged configuration of one CLI invocation."""

    circuit: Path | None = None
    mode: ScalarMode = ScalarMode.FLOAT
    pe_count: int = 4
    ldm_depth: int = 2 ** 16
    tgbar_depth: int = 2 ** 16
    n_bar: int | None = None
    format: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    out: Path | None = None
    workers: int = Field(default=1, ge=1)

    @field_validator("n_bar")
    @classmethod
    def _check_nbar(cls, v: int | None) -> int | None:
        if v is not None and v < 0:
            raise ValueError(f"n_bar must be non-negative, got {v}")
        return v

    @property
    def pe_config(self) -> PEConfig:
        return PEConfig(pe_count=self.pe_count, ldm_depth=self.ldm_depth, tgbar_depth=self.tgbar_depth)

    @model_validator(mode="after")
    def _check_pe_config(self) -> RunConfig:
        try:
            _ = self.pe_config
        except ValidationError as exc:
            raise ValueError(exc.errors()[0]["msg"]) from None
        return self


# ---------------------------------------------------------------------------
# Cost-model reports
# ---------------------------------------------------------------------------

class MemoryReport(BaseModel):
    n: int
    n_bar: int
    traditional_bytes: int
    emms_bytes: int
    efficiency_factor: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def traditional_gb(self) -> float:
        return round(self.traditional_bytes / GB, 4)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def emms_mb(self) -> float:
        return round(self.emms_bytes / MB, 4)


class CycleReport(BaseModel):
    n: int
    m: int
    n_bar: int
    pe_count: int
    ldm_depth: int
    regime: Regime
    c_write: int
    c_tp: int
    c_mm: int
    c_read: int
    total: int
    io_fraction: float
    ddr_state_bytes: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def tp_mm(self) -> int:
        return self.c_tp + self.c_mm


class ResourceReport(BaseModel):
    pe_count: int
    ldm_depth: int
    tgbar_depth: int
    bram_blocks: int = Field(ge=0)
    dsp_count: int = Field(ge=0)
    max_resident_qubits: int = Field(ge=0)


class DeviceSpec(BaseModel):
    name: str = "ZCU102"
    bram36: int = 912
    dsp: int = 2520
    ddr_bytes: int = 4 * 2 ** 30


class DeviceFit(BaseModel):
    device: str
    pe_count: int
    bram_utilization: float
    dsp_utilization: float
    fits: bool


# ---------------------------------------------------------------------------
# Settings file
# ---------------------------------------------------------------------------

class EmulatorSection(BaseModel):
    mode: ScalarMode = ScalarMode.FLOAT
    pe_count: int = 4
    ldm_depth: int = 2 ** 16
    tgbar_depth: int = 2 ** 16
    n_bar: int | None = None
    workers: int = Field(default=1, ge=1)


class CostModelSettings(BaseModel):
    dsp_per_multiplier: int = 4
    multipliers_per_pe: int = 8
    ldms_per_pe: int = 3
    word_bits: int = 128
    bram_block_bits: int = 36864
    max_cycle_qubits: int = 26
    device: DeviceSpec = Field(default_factory=DeviceSpec)


class VerificationSettings(BaseModel):
    float_tolerance: float = 1e-10
    norm_tolerance: float = 1e-9
    oracle_max_qubits: int = 14


class LoggingSettings(BaseModel):
    level: str = "INFO"
    format: str = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _reference_configs() -> list[PEConfig]:
    return [
        PEConfig(pe_count=4, ldm_depth=2 ** 16, tgbar_depth=2 ** 16),
        PEConfig(pe_count=8, ldm_depth=2 ** 14, tgbar_depth=2 ** 16),
        PEConfig(pe_count=16, ldm_depth=2 ** 12, tgbar_depth=2 ** 16),
        PEConfig(pe_count=32, ldm_depth=2 ** 10, tgbar_depth=2 ** 16),
    ]


class EmulatorSettings(BaseModel):
    """Validated contents of ``config/default.yaml``; every section is optional."""

    emulator: EmulatorSection = Field(default_factory=EmulatorSection)
    cost_model: CostModelSettings = Field(default_factory=CostModelSettings)
    reference_configs: list[PEConfig] = Field(default_factory=_reference_configs)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


class BenchmarkSpec(BaseModel):
    """One suite entry of ``config/experiment.yaml``."""

    name: str
    suite: str = "qft"
    qubits: list[int] = Field(default_factory=lambda: list(range(2, 11)))
    pes: list[int] = Field(default_factory=lambda: [16])
    depth: int = 20
    seed: int = 0
    repetitions: int = Field(default=1, ge=1)

    @field_validator("suite")
    @classmethod
    def _check_suite(cls, v: str) -> str:
        if v not in ("qft", "random"):
            raise ValueError(f"Unknown suite {v!r}. Choose from ['qft', 'random']")
        return v


class ExperimentConfig(BaseModel):
    name: str = "experiment"
    description: str = ""
    benchmarks: list[BenchmarkSpec] = Field(default_factory=list)
