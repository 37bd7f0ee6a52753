"""Closed-form memory, resource and cycle models of the accelerator.

Sizes are in 128-bit COO words (16 bytes).  Per-PE cycle terms are rounded
up to whole cycles.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from enum import Enum

from pydantic import BaseModel

from data.models import (
    CostModelSettings,
    CycleReport,
    DeviceFit,
    DeviceSpec,
    MemoryReport,
    PEConfig,
    Regime,
    ResourceReport,
)
from kernels.coo import TUPLE_BYTES
from kernels.errors import RangeError

logger = logging.getLogger(__name__)

MAX_MEMORY_QUBITS = 32
MIN_CYCLE_QUBITS = 2


def default_n_bar(n: int) -> int:
    return math.ceil(n / 2)


# ---------------------------------------------------------------------------
# Memory
# ---------------------------------------------------------------------------

def memory_model(n: int, n_bar: int | None = None) -> MemoryReport:
    """Traditional fused-operator storage (N words) against the split storage (N̄ + N/N̄ words)."""
    n_bar = default_n_bar(n) if n_bar is None else n_bar
    if not 1 <= n_bar <= n <= MAX_MEMORY_QUBITS:
        raise RangeError(f"memory model needs 1 <= n_bar <= n <= {MAX_MEMORY_QUBITS}, got n={n}, n_bar={n_bar}")
    traditional = (1 << n) * TUPLE_BYTES
    emms = ((1 << n_bar) + (1 << (n - n_bar))) * TUPLE_BYTES
    return MemoryReport(
        n=n,
        n_bar=n_bar,
        traditional_bytes=traditional,
        emms_bytes=emms,
        efficiency_factor=traditional / emms,
    )


def best_split(n: int) -> int:
    """Dividing point with the smallest split storage; ties go to ``⌈n/2⌉``."""
    centre = default_n_bar(n)
    return min(range(1, n + 1), key=lambda nb: (memory_model(n, nb).emms_bytes, abs(nb - centre)))


def memory_grid(n_values: Iterable[int], n_bar_values: Iterable[int]) -> list[MemoryReport]:
    """Every valid ``(n, n̄)`` cell; cells with ``n̄ > n`` are skipped."""
    n_bars = list(n_bar_values)
    return [memory_model(n, nb) for n in n_values for nb in n_bars if 1 <= nb <= n]


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------

def cycle_model(
    n: int,
    m: int,
    cfg: PEConfig,
    n_bar: int | None = None,
    max_qubits: int = 26,
) -> CycleReport:
    """Execution cycles of ``m`` fused groups on ``n`` qubits.

    Resident regime (the state fits in the PEs' local memories) writes and
    reads the state once; the streaming regime moves it in and out for every
    group.
    """
    if not MIN_CYCLE_QUBITS <= n <= max_qubits:
        raise RangeError(f"cycle model covers {MIN_CYCLE_QUBITS}..{max_qubits} qubits, got {n}")
    if m < 0:
        raise RangeError(f"group count must be non-negative, got {m}")
    n_bar = default_n_bar(n) if n_bar is None else n_bar
    if not 0 <= n_bar <= n:
        raise RangeError(f"n_bar {n_bar} outside [0, {n}]")

    big_n = 1 << n
    big_n_bar = 1 << n_bar
    pes = cfg.pe_count
    tp_per_group = math.ceil((big_n_bar + big_n // big_n_bar) / pes)
    mm_per_group = math.ceil(big_n / pes)

    regime = Regime.RESIDENT if big_n <= pes * cfg.ldm_depth else Regime.STREAMING
    transfers = 1 if regime is Regime.RESIDENT else m
    c_write = transfers * big_n
    c_read = transfers * big_n
    c_tp = m * tp_per_group
    c_mm = m * mm_per_group
    total = c_write + c_tp + c_mm + c_read

    return CycleReport(
        n=n,
        m=m,
        n_bar=n_bar,
        pe_count=pes,
        ldm_depth=cfg.ldm_depth,
        regime=regime,
        c_write=c_write,
        c_tp=c_tp,
        c_mm=c_mm,
        c_read=c_read,
        total=total,
        io_fraction=(c_write + c_read) / total if total else 0.0,
        ddr_state_bytes=2 * big_n * TUPLE_BYTES,
    )


def baseline_config(cfg: PEConfig) -> PEConfig:
    """One PE holding the same aggregate local memory as *cfg*."""
    return PEConfig(pe_count=1, ldm_depth=cfg.pe_count * cfg.ldm_depth, tgbar_depth=cfg.tgbar_depth)


# ---------------------------------------------------------------------------
# Resources
# ---------------------------------------------------------------------------

def _blocks(depth: int, settings: CostModelSettings) -> int:
    return math.ceil(depth * settings.word_bits / settings.bram_block_bits) if depth else 0


def resource_model(cfg: PEConfig, settings: CostModelSettings | None = None) -> ResourceReport:
    """BRAM36 blocks, DSP slices and the largest state the local memories hold.

    Only the local-memory capacity bounds ``max_resident_qubits``.
    """
    settings = settings or CostModelSettings()
    pes = cfg.pe_count
    capacity = pes * cfg.ldm_depth
    return ResourceReport(
        pe_count=pes,
        ldm_depth=cfg.ldm_depth,
        tgbar_depth=cfg.tgbar_depth,
        bram_blocks=_blocks(cfg.tgbar_depth, settings) + pes * settings.ldms_per_pe * _blocks(cfg.ldm_depth, settings),
        dsp_count=pes * settings.multipliers_per_pe * settings.dsp_per_multiplier,
        max_resident_qubits=capacity.bit_length() - 1 if capacity else 0,
    )


def device_fit(resources: ResourceReport, device: DeviceSpec | None = None) -> DeviceFit:
    device = device or DeviceSpec()
    bram = resources.bram_blocks / device.bram36
    dsp = resources.dsp_count / device.dsp
    return DeviceFit(
        device=device.name,
        pe_count=resources.pe_count,
        bram_utilization=round(bram, 4),
        dsp_utilization=round(dsp, 4),
        fits=bram <= 1.0 and dsp <= 1.0,
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

class SweepKind(str, Enum):
    MEMORY = "memory"
    CYCLES = "cycles"
    RESOURCES = "resources"


def _memory_sweep(n_values: Sequence[int], n_bar_values: Sequence[int] | None, **_: object) -> list[BaseModel]:
    if n_bar_values is None:
        return [memory_model(n) for n in n_values]
    return list(memory_grid(n_values, n_bar_values))


def _cycle_sweep(
    n_values: Sequence[int],
    n_bar_values: Sequence[int] | None,
    configs: Sequence[PEConfig],
    m: int,
    settings: CostModelSettings,
    **_: object,
) -> list[BaseModel]:
    n_bars = list(n_bar_values) if n_bar_values is not None else [None]
    return [
        cycle_model(n, m, cfg, nb, settings.max_cycle_qubits)
        for cfg in configs
        for n in n_values
        for nb in n_bars
        if nb is None or nb <= n
    ]


def _resource_sweep(configs: Sequence[PEConfig], settings: CostModelSettings, **_: object) -> list[BaseModel]:
    return [resource_model(cfg, settings) for cfg in configs]


_SWEEPS: dict[SweepKind, Callable[..., list[BaseModel]]] = {
    SweepKind.MEMORY: _memory_sweep,
    SweepKind.CYCLES: _cycle_sweep,
    SweepKind.RESOURCES: _resource_sweep,
}


def sweep(
    kind: SweepKind | str,
    n_values: Sequence[int] = (),
    configs: Sequence[PEConfig] = (),
    m: int = 100,
    n_bar_values: Sequence[int] | None = None,
    settings: CostModelSettings | None = None,
) -> list[BaseModel]:
    """Cartesian product of the requested parameters, one report per point.

    Cycle rows are ordered configuration-major, then by ``n``.
    """
    try:
        kind = SweepKind(kind)
    except ValueError:
        raise RangeError(f"Unknown sweep {kind!r}. Choose from {[k.value for k in SweepKind]}") from None
    needs_n = kind in (SweepKind.MEMORY, SweepKind.CYCLES)
    needs_cfg = kind in (SweepKind.CYCLES, SweepKind.RESOURCES)
    if (needs_n and not n_values) or (needs_cfg and not configs) or (n_bar_values is not None and not n_bar_values):
        raise RangeError(f"empty range for {kind.value} sweep")
    rows = _SWEEPS[kind](
        n_values=list(n_values),
        n_bar_values=None if n_bar_values is None else list(n_bar_values),
        configs=list(configs),
        m=m,
        settings=settings or CostModelSettings(),
    )
    logger.info("%s sweep produced %d rows", kind.value, len(rows))
    return rows
