"""Greedy gate fusion into single-parameter groups."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from circuits.model import Circuit
from gates.library import GateName, GateSpec

logger = logging.getLogger(__name__)


@dataclass
class FusedGroup:
    """Gates on pairwise disjoint qubits, at most one of them parameterized."""

    gates: list[GateSpec] = field(default_factory=list)

    @property
    def param_count(self) -> int:
        return sum(1 for g in self.gates if g.is_parameterized)

    @property
    def occupied(self) -> set[int]:
        return {q for g in self.gates for q in g.targets}

    def accepts(self, op: GateSpec) -> bool:
        """Whether *op* can join without a position clash or a second parameter."""
        if self.occupied.intersection(op.targets):
            return False
        return not (op.is_parameterized and self.param_count >= 1)

    def layout(self, n: int) -> list[GateSpec]:
        """One gate per slot in qubit order; free qubits get an explicit identity."""
        by_position = {g.positions[0]: g for g in self.gates}
        slots: list[GateSpec] = []
        q = 0
        while q < n:
            gate = by_position.get(q)
            if gate is None:
                slots.append(GateSpec(GateName.I, (q,)))
                q += 1
            else:
                slots.append(gate)
                q += gate.arity
        return slots

    def to_dict(self) -> dict[str, Any]:
        return {"gates": [str(g) for g in self.gates], "param_count": self.param_count}


def fuse(circuit: Circuit) -> list[FusedGroup]:
    """Split the gate list left to right into maximal groups.

    A group closes when the next gate touches a qubit it already uses, or
    when the next gate is parameterized and the group already holds one.
    """
    groups: list[FusedGroup] = []
    current = FusedGroup()
    for op in circuit.ops:
        if current.gates and not current.accepts(op):
            groups.append(current)
            current = FusedGroup()
        current.gates.append(op)
    if current.gates:
        groups.append(current)
    logger.debug("Fused %d gates of %r into %d groups", circuit.gate_count, circuit.name, len(groups))
    return groups
