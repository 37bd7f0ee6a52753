"""COO sparse operators, dense state vectors and the two core kernels.

``tensor_product`` builds the Kronecker product of two COO operators and
``matvec`` multiplies an operator into a state.  Both work in either scalar
mode; values are stored as whatever the mode's :class:`Arithmetic` uses.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Union

import numpy as np

from kernels.arithmetic import Arithmetic, ScalarMode, create_arithmetic
from kernels.errors import PreconditionError, RangeError, ShapeError, SizeError
from kernels.fixedpoint import FixedComplex

logger = logging.getLogger(__name__)

#: One (row, col, re, im) tuple is a 128-bit word.
TUPLE_BYTES = 16
MAX_DIM = 1 << 32

Scalar = Union[complex, FixedComplex]


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def _log2(value: int) -> int:
    return value.bit_length() - 1


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CooTuple:
    row: int
    col: int
    val: Scalar


@dataclass(eq=False)
class CooMatrix:
    """Square power-of-two operator in coordinate format, sorted row-major.

    Build instances through :meth:`from_tuples`, :func:`identity`,
    :func:`coo_from_dense` or the kernels, which keep the ordering and the
    no-zero, no-duplicate invariants.
    """

    dim: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    mode: ScalarMode = ScalarMode.FLOAT
    saturated: bool = False

    def __post_init__(self) -> None:
        if not is_power_of_two(self.dim):
            raise ShapeError(f"Operator dimension must be a power of two, got {self.dim}")
        if not len(self.rows) == len(self.cols) == len(self.vals):
            raise ShapeError(
                f"rows/cols/vals lengths differ: {len(self.rows)}, {len(self.cols)}, {len(self.vals)}"
            )
        if len(self.rows) and (
            self.rows.min() < 0 or self.cols.min() < 0
            or self.rows.max() >= self.dim or self.cols.max() >= self.dim
        ):
            raise RangeError(f"COO index outside [0, {self.dim})")

    @property
    def nnz(self) -> int:
        return len(self.rows)

    @property
    def n_qubits(self) -> int:
        return _log2(self.dim)

    @property
    def nbytes(self) -> int:
        return self.nnz * TUPLE_BYTES

    @property
    def arithmetic(self) -> Arithmetic:
        return create_arithmetic(self.mode)

    @classmethod
    def from_tuples(
        cls,
        dim: int,
        tuples: Iterable[CooTuple | tuple[int, int, Scalar]],
        mode: ScalarMode | str = ScalarMode.FLOAT,
    ) -> CooMatrix:
        """Build a canonical operator; duplicate coordinates are summed, zeros dropped."""
        arith = create_arithmetic(mode)
        rows: list[int] = []
        cols: list[int] = []
        values: list[complex] = []
        for item in tuples:
            row, col, val = (item.row, item.col, item.val) if isinstance(item, CooTuple) else item
            rows.append(int(row))
            cols.append(int(col))
            values.append(val.to_complex() if isinstance(val, FixedComplex) else complex(val))
        vals, saturated = arith.encode(np.array(values, dtype=np.complex128))
        return _canonical(
            dim,
            np.array(rows, dtype=np.int64),
            np.array(cols, dtype=np.int64),
            vals,
            arith,
            saturated,
        )

    def tuples(self) -> list[CooTuple]:
        if self.mode is ScalarMode.FIXED:
            return [
                CooTuple(int(r), int(c), FixedComplex.from_raw(int(v[0]), int(v[1])))
                for r, c, v in zip(self.rows, self.cols, self.vals)
            ]
        return [CooTuple(int(r), int(c), complex(v)) for r, c, v in zip(self.rows, self.cols, self.vals)]

    def complex_values(self) -> np.ndarray:
        return self.arithmetic.decode(self.vals)

    def equals(self, other: CooMatrix) -> bool:
        """Exact structural and bit-level equality."""
        return (
            self.dim == other.dim
            and self.mode is other.mode
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.vals, other.vals)
        )

    def __repr__(self) -> str:
        return f"CooMatrix(dim={self.dim}, nnz={self.nnz}, mode={self.mode.value})"


def _canonical(
    dim: int,
    rows: np.ndarray,
    cols: np.ndarray,
    vals: np.ndarray,
    arith: Arithmetic,
    saturated: bool = False,
) -> CooMatrix:
    if len(rows):
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        starts = np.flatnonzero(np.r_[True, (np.diff(rows) != 0) | (np.diff(cols) != 0)])
        if len(starts) < len(rows):
            # exact sum per coordinate, saturated once
            merged = np.add.reduceat(vals, starts, axis=0)
            vals, sat = arith.add(merged, arith.zeros(len(starts)))
            saturated = saturated or sat
            rows, cols = rows[starts], cols[starts]
        keep = arith.nonzero(vals)
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    return CooMatrix(dim, rows, cols, vals, arith.mode, saturated)


def identity(dim: int, mode: ScalarMode | str = ScalarMode.FLOAT) -> CooMatrix:
    arith = create_arithmetic(mode)
    index = np.arange(dim, dtype=np.int64)
    return CooMatrix(dim, index, index.copy(), arith.ones(dim), arith.mode)


def scale(matrix: CooMatrix, factor: Scalar | np.ndarray) -> CooMatrix:
    """Multiply every stored value by one scalar, keeping the tuple order."""
    arith = matrix.arithmetic
    coerced, sat_in = arith.scalar(factor)
    vals, sat = arith.mul(matrix.vals, coerced[0])
    keep = arith.nonzero(vals)
    return CooMatrix(
        matrix.dim,
        matrix.rows[keep],
        matrix.cols[keep],
        vals[keep],
        matrix.mode,
        matrix.saturated or sat_in or sat,
    )


def row_counts(matrix: CooMatrix) -> np.ndarray:
    return np.bincount(matrix.rows, minlength=matrix.dim)


def is_unit_row(matrix: CooMatrix) -> bool:
    """True when every row holds exactly one non-zero."""
    return matrix.nnz == matrix.dim and bool(np.all(row_counts(matrix) == 1))


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class StateVector:
    """Dense ``2**n`` amplitude vector; qubit 0 is the most significant index bit."""

    n: int
    amps: np.ndarray
    mode: ScalarMode = ScalarMode.FLOAT
    saturated: bool = False

    def __post_init__(self) -> None:
        if len(self.amps) != 1 << self.n:
            raise ShapeError(f"State of {self.n} qubits needs {1 << self.n} amplitudes, got {len(self.amps)}")

    @property
    def dim(self) -> int:
        return 1 << self.n

    @classmethod
    def zero_state(cls, n: int, mode: ScalarMode | str = ScalarMode.FLOAT) -> StateVector:
        return cls.basis_state(n, 0, mode)

    @classmethod
    def basis_state(cls, n: int, index: int, mode: ScalarMode | str = ScalarMode.FLOAT) -> StateVector:
        if not 0 <= index < 1 << n:
            raise RangeError(f"Basis index {index} outside [0, {1 << n})")
        arith = create_arithmetic(mode)
        amps = arith.zeros(1 << n)
        amps[index] = arith.ones(1)[0]
        return cls(n, amps, arith.mode)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex] | np.ndarray, mode: ScalarMode | str = ScalarMode.FLOAT) -> StateVector:
        if not isinstance(amplitudes, np.ndarray):
            amplitudes = list(amplitudes)
        values = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if not is_power_of_two(len(values)):
            raise ShapeError(f"Amplitude count must be a power of two, got {len(values)}")
        arith = create_arithmetic(mode)
        amps, saturated = arith.encode(values)
        return cls(_log2(len(values)), amps, arith.mode, saturated)

    def to_complex(self) -> np.ndarray:
        return create_arithmetic(self.mode).decode(self.amps)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.to_complex()) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def block(self, index: int, size: int) -> StateVector:
        """The *index*-th contiguous slice of *size* amplitudes."""
        if not is_power_of_two(size) or size > self.dim:
            raise ShapeError(f"Block size {size} does not divide a state of dimension {self.dim}")
        start = index * size
        return StateVector(_log2(size), self.amps[start:start + size], self.mode, self.saturated)

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amps.copy(), self.mode, self.saturated)

    def equals(self, other: StateVector) -> bool:
        return self.n == other.n and self.mode is other.mode and np.array_equal(self.amps, other.amps)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def _check_modes(*modes: ScalarMode) -> None:
    if len(set(modes)) > 1:
        raise PreconditionError(f"Operands mix scalar modes {sorted(m.value for m in set(modes))}")


def tensor_product(g: CooMatrix, h: CooMatrix) -> CooMatrix:
    """Kronecker product ``g ⊗ h``.

    Entry ``(i, j, g_ij)`` of *g* and ``(k, l, h_kl)`` of *h* give
    ``(i*h.dim + k, j*h.dim + l, g_ij*h_kl)``.  The result is sorted row-major.

    Raises
    ------
    SizeError
        If the product dimension exceeds ``2**32``.
    """
    _check_modes(g.mode, h.mode)
    dim = g.dim * h.dim
    if dim > MAX_DIM:
        raise SizeError(f"Tensor product dimension {dim} exceeds the 32-bit index limit {MAX_DIM}")
    arith = g.arithmetic
    outer = np.repeat(np.arange(g.nnz), h.nnz)
    inner = np.tile(np.arange(h.nnz), g.nnz)
    rows = g.rows[outer] * h.dim + h.rows[inner]
    cols = g.cols[outer] * h.dim + h.cols[inner]
    vals, saturated = arith.mul(g.vals[outer], h.vals[inner])
    result = _canonical(dim, rows, cols, vals, arith, g.saturated or h.saturated or saturated)
    logger.debug("TP %dx%d (nnz %d) ⊗ %dx%d (nnz %d) -> nnz %d", g.dim, g.dim, g.nnz, h.dim, h.dim, h.nnz, result.nnz)
    return result


def kron_all(operators: Iterable[CooMatrix], mode: ScalarMode | str = ScalarMode.FLOAT) -> CooMatrix:
    """Left-to-right Kronecker product; the empty product is the 1x1 identity."""
    result: CooMatrix | None = None
    for op in operators:
        result = op if result is None else tensor_product(result, op)
    return result if result is not None else identity(1, mode)


def matvec(u: CooMatrix, psi: StateVector) -> StateVector:
    """Return ``u · psi``.

    Each output row is accumulated in ascending column order, one add per
    stored tuple, so fixed-mode rounding does not depend on how rows are
    split across workers.

    Raises
    ------
    ShapeError
        If ``u.dim != 2**psi.n``.
    """
    if u.dim != psi.dim:
        raise ShapeError(f"Operator dimension {u.dim} does not match state dimension {psi.dim}")
    _check_modes(u.mode, psi.mode)
    arith = u.arithmetic
    out = arith.zeros(u.dim)
    saturated = u.saturated or psi.saturated
    if u.nnz:
        products, sat = arith.mul(u.vals, psi.amps[u.cols])
        saturated = saturated or sat
        # position of each tuple within its row; tuples are row-major so this is column order
        row_start = np.searchsorted(u.rows, u.rows, side="left")
        rank = np.arange(u.nnz) - row_start
        for step in range(int(rank.max()) + 1):
            selected = rank == step
            targets = u.rows[selected]
            out[targets], sat = arith.add(out[targets], products[selected])
            saturated = saturated or sat
    return StateVector(psi.n, out, psi.mode, saturated)


# ---------------------------------------------------------------------------
# Dense bridge
# ---------------------------------------------------------------------------

def coo_from_dense(dense: np.ndarray, mode: ScalarMode | str = ScalarMode.FLOAT) -> CooMatrix:
    """Exact conversion; only entries that are exactly zero (after encoding) are dropped."""
    dense = np.asarray(dense, dtype=np.complex128)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise ShapeError(f"Dense operator must be square, got shape {dense.shape}")
    dim = dense.shape[0]
    if not is_power_of_two(dim):
        raise ShapeError(f"Dense operator dimension must be a power of two, got {dim}")
    arith = create_arithmetic(mode)
    rows, cols = np.nonzero(dense)
    vals, saturated = arith.encode(dense[rows, cols])
    keep = arith.nonzero(vals)
    return CooMatrix(
        dim,
        rows[keep].astype(np.int64),
        cols[keep].astype(np.int64),
        vals[keep],
        arith.mode,
        saturated,
    )


def dense_from_coo(matrix: CooMatrix) -> np.ndarray:
    dense = np.zeros((matrix.dim, matrix.dim), dtype=np.complex128)
    dense[matrix.rows, matrix.cols] = matrix.complex_values()
    return dense
