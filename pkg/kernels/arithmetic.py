"""Scalar modes the kernels can run in.

The kernels never branch on the mode themselves; they ask an :class:`Arithmetic`
for products, sums and encodings.  Float mode stores values as ``complex128``
arrays of shape ``(k,)``; fixed mode stores Q2.30 raw pairs as ``int64`` arrays of
shape ``(k, 2)``.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any

import numpy as np

from kernels.fixedpoint import (
    FixedComplex,
    cx_add_array,
    cx_mul_array,
    decode_array,
    encode_array,
)

logger = logging.getLogger(__name__)


class ScalarMode(str, Enum):
    FLOAT = "float"
    FIXED = "fixed"


class Arithmetic(ABC):
    """Base class for the element arithmetic used by the COO kernels."""

    mode: ScalarMode

    @abstractmethod
    def encode(self, values: Any) -> tuple[np.ndarray, bool]:
        """Convert complex values to this mode's storage; returns ``(array, saturated)``."""
        ...

    @abstractmethod
    def decode(self, values: np.ndarray) -> np.ndarray:
        """Return the stored values as ``complex128``."""
        ...

    @abstractmethod
    def zeros(self, count: int) -> np.ndarray:
        ...

    @abstractmethod
    def mul(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        ...

    @abstractmethod
    def add(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        ...

    @abstractmethod
    def nonzero(self, values: np.ndarray) -> np.ndarray:
        """Boolean mask of the elements that are not exactly zero."""
        ...

    def scalar(self, value: complex | FixedComplex | np.ndarray) -> tuple[np.ndarray, bool]:
        """Coerce one value (complex, :class:`FixedComplex` or stored form) to a 1-element array."""
        if isinstance(value, np.ndarray):
            return value.reshape(self.zeros(1).shape), False
        if isinstance(value, FixedComplex):
            value = value.to_complex()
        return self.encode(np.array([value]))

    def ones(self, count: int) -> np.ndarray:
        values, _ = self.encode(np.ones(count, dtype=np.complex128))
        return values


class FloatArithmetic(Arithmetic):
    """IEEE double-precision complex arithmetic."""

    mode = ScalarMode.FLOAT

    def encode(self, values: Any) -> tuple[np.ndarray, bool]:
        return np.asarray(values, dtype=np.complex128).reshape(-1), False

    def decode(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(values, dtype=np.complex128)

    def zeros(self, count: int) -> np.ndarray:
        return np.zeros(count, dtype=np.complex128)

    def mul(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        return a * b, False

    def add(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        return a + b, False

    def nonzero(self, values: np.ndarray) -> np.ndarray:
        return values != 0


class FixedArithmetic(Arithmetic):
    """Q2.30 complex arithmetic with saturation, as the accelerator ALU computes it."""

    mode = ScalarMode.FIXED

    def encode(self, values: Any) -> tuple[np.ndarray, bool]:
        raws, saturated = encode_array(np.asarray(values, dtype=np.complex128).reshape(-1))
        if saturated:
            logger.warning("Encoding saturated at least one value to the Q2.30 bound")
        return raws, saturated

    def decode(self, values: np.ndarray) -> np.ndarray:
        return decode_array(values)

    def zeros(self, count: int) -> np.ndarray:
        return np.zeros((count, 2), dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        return cx_mul_array(a, b)

    def add(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
        return cx_add_array(a, b)

    def nonzero(self, values: np.ndarray) -> np.ndarray:
        return np.any(values != 0, axis=-1)


_ARITHMETIC: dict[ScalarMode, Arithmetic] = {
    ScalarMode.FLOAT: FloatArithmetic(),
    ScalarMode.FIXED: FixedArithmetic(),
}


def create_arithmetic(mode: ScalarMode | str) -> Arithmetic:
    """Return the arithmetic for a scalar mode name."""
    try:
        key = ScalarMode(mode.lower() if isinstance(mode, str) else mode)
    except ValueError:
        raise ValueError(
            f"Unknown scalar mode {mode!r}. Choose from {[m.value for m in ScalarMode]}"
        ) from None
    return _ARITHMETIC[key]
