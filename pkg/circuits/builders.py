"""Circuit families used for benchmarking and fuzzing."""

from __future__ import annotations

import logging
import math

import numpy as np

from circuits.model import MAX_QUBITS, Circuit
from gates.library import GateName, GateSpec, TWO_QUBIT_GATES, is_parameterized
from kernels.errors import RangeError

logger = logging.getLogger(__name__)

#: Gates drawn by :func:`build_random` (every table gate except the identity).
RANDOM_POOL: tuple[GateName, ...] = tuple(g for g in GateName if g is not GateName.I)


# ---------------------------------------------------------------------------
# Adjacency routing
# ---------------------------------------------------------------------------

def adjacent_swap(p: int) -> list[GateSpec]:
    """Exchange qubits ``p`` and ``p + 1`` with three CX gates."""
    return [
        GateSpec(GateName.CX, (p, p + 1)),
        GateSpec(GateName.CX, (p + 1, p)),
        GateSpec(GateName.CX, (p, p + 1)),
    ]


def swap_chain(a: int, b: int) -> list[GateSpec]:
    """Exchange qubits ``a`` and ``b`` using adjacent swaps only."""
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return []
    forward = list(range(lo, hi))
    ops: list[GateSpec] = []
    for p in forward + forward[-2::-1]:
        ops.extend(adjacent_swap(p))
    return ops


def expand_adjacent(ops: list[GateSpec]) -> list[GateSpec]:
    """Rewrite two-qubit gates on distant qubits into adjacent-only sequences.

    The farther qubit is walked down next to the nearer one with adjacent
    swaps, the gate is applied there, and the swaps are undone.
    """
    expanded: list[GateSpec] = []
    for op in ops:
        if op.arity == 1 or abs(op.targets[0] - op.targets[1]) == 1:
            expanded.append(op)
            continue
        lo, hi = op.positions
        moves = list(range(hi - 1, lo, -1))
        swaps = [gate for p in moves for gate in adjacent_swap(p)]
        targets = tuple(lo + 1 if t == hi else t for t in op.targets)
        expanded.extend(swaps)
        expanded.append(GateSpec(op.name, targets, op.param))
        expanded.extend(gate for p in reversed(moves) for gate in adjacent_swap(p))
    return expanded


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def _check_qubits(n: int, low: int) -> None:
    if not low <= n <= MAX_QUBITS:
        raise RangeError(f"qubit count {n} outside [{low}, {MAX_QUBITS}]")


def qft_logical_ops(n: int) -> list[GateSpec]:
    """QFT before adjacency routing: ``n`` H gates and ``n(n-1)/2`` controlled phases."""
    _check_qubits(n, 2)
    ops: list[GateSpec] = []
    for q in range(n):
        ops.append(GateSpec(GateName.H, (q,)))
        for k in range(1, n - q):
            ops.append(GateSpec(GateName.CP, (q, q + k), math.pi / 2 ** k))
    return ops


def build_qft(n: int, bit_reversal: bool = False) -> Circuit:
    """Quantum Fourier transform on ``n`` qubits, routed to adjacent gates.

    Without *bit_reversal* the output amplitudes come out in bit-reversed
    index order; with it, trailing swaps restore natural order.
    """
    ops = qft_logical_ops(n)
    if bit_reversal:
        for q in range(n // 2):
            ops.extend(swap_chain(q, n - 1 - q))
    routed = expand_adjacent(ops)
    logger.debug("QFT(%d): %d logical gates, %d after routing", n, len(ops), len(routed))
    return Circuit(n, routed, f"qft{n}")


def build_ghz(n: int) -> Circuit:
    _check_qubits(n, 1)
    ops = [GateSpec(GateName.H, (0,))]
    ops.extend(GateSpec(GateName.CX, (q, q + 1)) for q in range(n - 1))
    return Circuit(n, ops, f"ghz{n}")


def build_random(n: int, depth: int, seed: int) -> Circuit:
    """Seeded random circuit of *depth* gates drawn uniformly from the gate table.

    Two-qubit gates land on a random adjacent pair with random orientation;
    angles are uniform in ``[0, 2π)``.  With ``n == 1`` only single-qubit
    gates are drawn.
    """
    _check_qubits(n, 1)
    if depth < 1:
        raise RangeError(f"depth must be at least 1, got {depth}")
    rng = np.random.default_rng(seed)
    pool = RANDOM_POOL if n > 1 else tuple(g for g in RANDOM_POOL if g not in TWO_QUBIT_GATES)
    ops: list[GateSpec] = []
    for _ in range(depth):
        name = pool[int(rng.integers(len(pool)))]
        if name in TWO_QUBIT_GATES:
            p = int(rng.integers(n - 1))
            targets = (p, p + 1) if rng.integers(2) == 0 else (p + 1, p)
        else:
            targets = (int(rng.integers(n)),)
        param = float(rng.uniform(0.0, 2 * math.pi)) if is_parameterized(name) else None
        ops.append(GateSpec(name, targets, param))
    return Circuit(n, ops, f"random-n{n}-d{depth}-s{seed}")
