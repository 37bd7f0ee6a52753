"""Compressed gate table and gate-spec validation.

Every supported gate is listed as the non-zero ``(row, col, value)`` entries of
its 2x2 or 4x4 matrix.  For the controlled gates the control is the high bit
of the 4x4 index; :func:`gate_matrix` relabels the entries when the control is
the less significant qubit of the pair.

Derived constants: ``a = cos λ``, ``b = sin λ``, ``c = cos θ/2``,
``d = sin θ/2``, ``q = 1/√2``, ``p = 1/2``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from kernels.arithmetic import ScalarMode
from kernels.coo import CooMatrix
from kernels.errors import GateError

logger = logging.getLogger(__name__)


class GateName(str, Enum):
    P = "P"
    X = "X"
    Y = "Y"
    Z = "Z"
    S = "S"
    SDG = "SDG"
    T = "T"
    TDG = "TDG"
    RZ = "RZ"
    CRZ = "CRZ"
    CRX = "CRX"
    CX = "CX"
    CY = "CY"
    CZ = "CZ"
    CP = "CP"
    CRY = "CRY"
    CH = "CH"
    H = "H"
    SX = "SX"
    RX = "RX"
    RY = "RY"
    I = "I"  # noqa: E741


Entries = list[tuple[int, int, complex]]

Q = 1 / math.sqrt(2)
HALF = 0.5


def _phase(lam: float) -> complex:
    return complex(math.cos(lam), math.sin(lam))


def _half_angle(theta: float) -> tuple[float, float]:
    return math.cos(theta / 2), math.sin(theta / 2)


def _rz(theta: float) -> Entries:
    c, d = _half_angle(theta)
    return [(0, 0, complex(c, -d)), (1, 1, complex(c, d))]


def _rx(theta: float) -> Entries:
    c, d = _half_angle(theta)
    return [(0, 0, c), (0, 1, complex(0, -d)), (1, 0, complex(0, -d)), (1, 1, c)]


def _ry(theta: float) -> Entries:
    c, d = _half_angle(theta)
    return [(0, 0, c), (0, 1, -d), (1, 0, d), (1, 1, c)]


def _controlled(block: Entries) -> Entries:
    """Identity on the control-off half, *block* on the control-on half."""
    return [(0, 0, 1), (1, 1, 1)] + [(r + 2, c + 2, v) for r, c, v in block]


_IDENTITY: Entries = [(0, 0, 1), (1, 1, 1)]
_X: Entries = [(0, 1, 1), (1, 0, 1)]
_Y: Entries = [(0, 1, -1j), (1, 0, 1j)]
_Z: Entries = [(0, 0, 1), (1, 1, -1)]
_H: Entries = [(0, 0, Q), (0, 1, Q), (1, 0, Q), (1, 1, -Q)]

#: name -> builder taking the angle (``None`` for fixed gates).
GATE_TABLE: dict[GateName, Callable[[float | None], Entries]] = {
    GateName.P: lambda lam: [(0, 0, 1), (1, 1, _phase(lam))],
    GateName.X: lambda _: _X,
    GateName.Y: lambda _: _Y,
    GateName.Z: lambda _: _Z,
    GateName.S: lambda _: [(0, 0, 1), (1, 1, 1j)],
    GateName.SDG: lambda _: [(0, 0, 1), (1, 1, -1j)],
    GateName.T: lambda _: [(0, 0, 1), (1, 1, complex(Q, Q))],
    GateName.TDG: lambda _: [(0, 0, 1), (1, 1, complex(Q, -Q))],
    GateName.RZ: _rz,
    GateName.H: lambda _: _H,
    GateName.SX: lambda _: [
        (0, 0, complex(HALF, HALF)), (0, 1, complex(HALF, -HALF)),
        (1, 0, complex(HALF, -HALF)), (1, 1, complex(HALF, HALF)),
    ],
    GateName.RX: _rx,
    GateName.RY: _ry,
    GateName.I: lambda _: _IDENTITY,
    GateName.CRZ: lambda theta: _controlled(_rz(theta)),
    GateName.CRX: lambda theta: _controlled(_rx(theta)),
    GateName.CX: lambda _: _controlled(_X),
    GateName.CY: lambda _: _controlled(_Y),
    GateName.CZ: lambda _: _controlled(_Z),
    GateName.CP: lambda lam: _controlled([(0, 0, 1), (1, 1, _phase(lam))]),
    GateName.CRY: lambda theta: _controlled(_ry(theta)),
    GateName.CH: lambda _: _controlled(_H),
}

PARAMETERIZED_GATES = frozenset(
    {GateName.P, GateName.RZ, GateName.RX, GateName.RY, GateName.CP, GateName.CRX, GateName.CRY, GateName.CRZ}
)
TWO_QUBIT_GATES = frozenset(
    {GateName.CRZ, GateName.CRX, GateName.CX, GateName.CY, GateName.CZ, GateName.CP, GateName.CRY, GateName.CH}
)
DENSE_GATES = frozenset({GateName.H, GateName.RX, GateName.RY, GateName.SX})
MULTI_ENTRY_ROW_GATES = DENSE_GATES | {GateName.CH, GateName.CRX, GateName.CRY}

# swaps the two index bits of a 4x4 operator
_SWAP_BITS = np.array([0, 2, 1, 3])


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def gate_name(name: str | GateName) -> GateName:
    """Resolve a case-insensitive gate name."""
    if isinstance(name, GateName):
        return name
    try:
        return GateName(name.upper())
    except ValueError:
        raise GateError(
            f"Unknown gate {name!r}. Choose from {[g.value for g in GateName]}"
        ) from None


def arity(name: str | GateName) -> int:
    return 2 if gate_name(name) in TWO_QUBIT_GATES else 1


def is_parameterized(name: str | GateName) -> bool:
    return gate_name(name) in PARAMETERIZED_GATES


def is_sparse(name: str | GateName) -> bool:
    """False exactly for the dense gates H, RX, RY and SX."""
    return gate_name(name) not in DENSE_GATES


def is_unit_row(name: str | GateName) -> bool:
    """True when the gate matrix has exactly one non-zero in every row.

    Stricter than :func:`is_sparse`: CH, CRX and CRY are sparse overall but
    carry a dense 2x2 block in their controlled rows.
    """
    return gate_name(name) not in MULTI_ENTRY_ROW_GATES


# ---------------------------------------------------------------------------
# Gate specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GateSpec:
    """One gate application.

    ``targets`` is ``(qubit,)`` for single-qubit gates and ``(control, target)``
    for controlled gates.  ``param`` is the angle in radians for parameterized
    gates and ``None`` otherwise.
    """

    name: GateName
    targets: tuple[int, ...]
    param: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", gate_name(self.name))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        expected = arity(self.name)
        if len(self.targets) != expected:
            raise GateError(
                f"{self.name.value} acts on {expected} qubit(s), got targets {list(self.targets)}"
            )
        if any(t < 0 for t in self.targets):
            raise GateError(f"{self.name.value}: negative qubit index in {list(self.targets)}")
        if len(set(self.targets)) != len(self.targets):
            raise GateError(f"{self.name.value}: targets must be distinct, got {list(self.targets)}")
        if self.is_parameterized and self.param is None:
            raise GateError(f"{self.name.value} requires an angle parameter")
        if not self.is_parameterized and self.param is not None:
            raise GateError(f"{self.name.value} takes no parameter, got {self.param!r}")
        if self.param is not None:
            if not math.isfinite(self.param):
                raise GateError(f"{self.name.value}: parameter must be finite, got {self.param!r}")
            object.__setattr__(self, "param", float(self.param))

    @property
    def arity(self) -> int:
        return len(self.targets)

    @property
    def is_parameterized(self) -> bool:
        return self.name in PARAMETERIZED_GATES

    @property
    def positions(self) -> tuple[int, ...]:
        """Occupied qubits in ascending order."""
        return tuple(sorted(self.targets))

    @property
    def control_low(self) -> bool:
        """True for a controlled gate whose control is the less significant qubit."""
        return self.arity == 2 and self.targets[0] > self.targets[1]

    def __str__(self) -> str:
        args = " ".join(str(t) for t in self.targets)
        if self.param is not None:
            args += f" {self.param!r}"
        return f"{self.name.value.lower()} {args}"


def gate_entries(spec: GateSpec) -> Entries:
    """The table entries for *spec*, relabelled for a low-significance control."""
    entries = GATE_TABLE[spec.name](spec.param)
    if spec.control_low:
        entries = [(int(_SWAP_BITS[r]), int(_SWAP_BITS[c]), v) for r, c, v in entries]
    return entries


def gate_matrix(spec: GateSpec, mode: ScalarMode | str = ScalarMode.FLOAT) -> CooMatrix:
    """COO operator of one gate: 2x2 for single-qubit gates, 4x4 for controlled ones.

    Zero-valued entries (for example the off-diagonals of ``RX(0)``) are omitted.
    """
    dim = 2 ** spec.arity
    return CooMatrix.from_tuples(dim, gate_entries(spec), mode)
