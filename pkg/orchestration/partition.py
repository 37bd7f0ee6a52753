"""Splitting a fused group at a dividing point and evolving a state block-wise.

A group's operator ``T`` on ``n`` qubits is written as ``T(Ḡ) ⊗ T(G)`` where
``Ḡ`` covers qubits ``0 .. n̄-1`` and ``G`` the rest.  ``T(Ḡ)`` must have one
non-zero per row, so output block ``i`` of the state is the single block ``j``
picked by that row, multiplied by ``Ḡ_ij · T(G)``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

from data.models import PEConfig
from gates.library import GateName, gate_matrix, is_unit_row as gate_is_unit_row
from kernels.arithmetic import ScalarMode, create_arithmetic
from kernels.coo import TUPLE_BYTES, CooMatrix, StateVector, is_unit_row, kron_all, matvec, scale
from kernels.errors import PreconditionError
from orchestration.fusion import FusedGroup

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Partition:
    n: int
    n_bar: int
    g_bar: CooMatrix
    g_low: CooMatrix

    @property
    def block_count(self) -> int:
        return self.g_bar.dim

    @property
    def block_size(self) -> int:
        return self.g_low.dim

    @property
    def footprint_bytes(self) -> int:
        """Stored EMMS size: both factors' tuples at 16 bytes each."""
        return (self.g_bar.nnz + self.g_low.nnz) * TUPLE_BYTES

    @property
    def dense_footprint_bytes(self) -> int:
        """Size of the unsplit operator at its best case of one tuple per row."""
        return (1 << self.n) * TUPLE_BYTES

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_bar": self.n_bar,
            "g_bar_nnz": self.g_bar.nnz,
            "g_low_nnz": self.g_low.nnz,
            "unit_row": is_unit_row(self.g_bar),
            "footprint_bytes": self.footprint_bytes,
        }


def choose_n_bar(group: FusedGroup, n: int, n_bar_hint: int | None = None) -> int:
    """Largest admissible dividing point not above the hint (default ``⌈n/2⌉``).

    A point is admissible when no gate straddles it and every gate above it
    (on qubits ``< n̄``) has one non-zero per row.  ``0`` is always admissible.
    """
    if n_bar_hint is not None and not 0 <= n_bar_hint <= n:
        raise PreconditionError(f"n_bar hint {n_bar_hint} outside [0, {n}]")
    start = math.ceil(n / 2) if n_bar_hint is None else n_bar_hint
    for candidate in range(start, -1, -1):
        if all(_fits_above(gate.positions, gate.name, candidate) for gate in group.gates):
            return candidate
    return 0


def _fits_above(positions: tuple[int, ...], name: GateName, n_bar: int) -> bool:
    if positions[-1] < n_bar:
        return gate_is_unit_row(name)
    return positions[0] >= n_bar


def partition(
    group: FusedGroup,
    n: int,
    n_bar_hint: int | None = None,
    mode: ScalarMode | str = ScalarMode.FLOAT,
) -> Partition:
    """Build ``T(Ḡ)`` and ``T(G)`` for *group* on *n* qubits."""
    bad = [g for g in group.gates if g.positions[-1] >= n]
    if bad:
        raise PreconditionError(f"Gate {bad[0]} does not fit on {n} qubits")
    n_bar = choose_n_bar(group, n, n_bar_hint)
    high: list[CooMatrix] = []
    low: list[CooMatrix] = []
    for slot in group.layout(n):
        (high if slot.positions[0] < n_bar else low).append(gate_matrix(slot, mode))
    part = Partition(n, n_bar, kron_all(high, mode), kron_all(low, mode))
    logger.debug(
        "Partition n=%d n_bar=%d: g_bar nnz=%d, g_low nnz=%d", n, n_bar, part.g_bar.nnz, part.g_low.nnz
    )
    return part


def assign_blocks(block_count: int, pe_count: int) -> list[list[int]]:
    """Round-robin distribution of block rows over processing elements."""
    return [list(range(pe, block_count, pe_count)) for pe in range(pe_count)]


def evolve_group(
    part: Partition,
    psi: StateVector,
    cfg: PEConfig | None = None,
    workers: int = 1,
) -> StateVector:
    """Apply ``T(Ḡ) ⊗ T(G)`` to *psi* block by block.

    Parameters
    ----------
    part : Partition
        Split operator; ``g_bar`` must have exactly one non-zero per row.
    psi : StateVector
        Input state on ``part.n`` qubits.
    cfg : PEConfig, optional
        Number of logical processing elements the block rows are dealt to.
    workers : int
        Real threads executing the logical PEs; 1 runs them inline.

    The output is bit-identical for every PE count and worker count.
    """
    cfg = cfg or PEConfig()
    if psi.n != part.n:
        raise PreconditionError(f"State has {psi.n} qubits, partition expects {part.n}")
    if not is_unit_row(part.g_bar):
        raise PreconditionError("T(Ḡ) must hold exactly one non-zero per row")

    arith = create_arithmetic(psi.mode)
    size = part.block_size
    out = arith.zeros(psi.dim)
    flags: list[bool] = []

    def run_pe(rows: list[int]) -> bool:
        saturated = False
        for i in rows:
            # unit-row and row-major: tuple i belongs to row i
            j = int(part.g_bar.cols[i])
            block = matvec(scale(part.g_low, part.g_bar.vals[i]), psi.block(j, size))
            out[i * size:(i + 1) * size] = block.amps
            saturated = saturated or block.saturated
        return saturated

    schedule = [rows for rows in assign_blocks(part.block_count, cfg.pe_count) if rows]
    if workers > 1 and len(schedule) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            flags = list(pool.map(run_pe, schedule))
    else:
        flags = [run_pe(rows) for rows in schedule]

    return StateVector(psi.n, out, psi.mode, psi.saturated or part.g_bar.saturated or any(flags))
