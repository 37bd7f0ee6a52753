"""Q2.30 signed fixed-point arithmetic, real and complex.

A raw 32-bit integer ``r`` stands for ``r / 2**30``; the representable range is
``[-2, 2 - 2**-30]``.  Products are formed at full 64-bit width and rounded to
nearest with ties away from zero.  Results that leave the range saturate and
carry a sticky ``saturated`` flag instead of raising.

The scalar types (:class:`FixedQ2_30`, :class:`FixedComplex`) are used for
single values and in tests; the ``*_array`` functions do the same arithmetic on
numpy ``int64`` arrays of shape ``(..., 2)`` (re, im) and are what the COO
kernels call.  Both paths are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from kernels.errors import RangeError

FRAC_BITS = 30
SCALE = 1 << FRAC_BITS
RAW_MIN = -(1 << 31)
RAW_MAX = (1 << 31) - 1
LSB = 2.0 ** -FRAC_BITS

_HALF = 1 << (FRAC_BITS - 1)


# ---------------------------------------------------------------------------
# Integer helpers
# ---------------------------------------------------------------------------

def _round_shift(value: int, shift: int = FRAC_BITS) -> int:
    """Divide by ``2**shift`` rounding to nearest, ties away from zero."""
    half = 1 << (shift - 1)
    if value >= 0:
        return (value + half) >> shift
    return -((-value + half) >> shift)


def _saturate(raw: int) -> tuple[int, bool]:
    if raw > RAW_MAX:
        return RAW_MAX, True
    if raw < RAW_MIN:
        return RAW_MIN, True
    return raw, False


# ---------------------------------------------------------------------------
# Scalar types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedQ2_30:
    """One Q2.30 real.  ``saturated`` is sticky through every operation."""

    raw: int
    saturated: bool = False

    def __post_init__(self) -> None:
        if not RAW_MIN <= self.raw <= RAW_MAX:
            raise RangeError(f"raw value {self.raw} outside Q2.30 range [{RAW_MIN}, {RAW_MAX}]")

    @classmethod
    def from_float(cls, x: float) -> FixedQ2_30:
        return encode(x)

    def to_float(self) -> float:
        return decode(self)

    def __mul__(self, other: FixedQ2_30) -> FixedQ2_30:
        return fx_mul(self, other)

    def __add__(self, other: FixedQ2_30) -> FixedQ2_30:
        return fx_add(self, other)

    def __sub__(self, other: FixedQ2_30) -> FixedQ2_30:
        return fx_sub(self, other)

    def __lshift__(self, shift: int) -> FixedQ2_30:
        return fx_shl(self, shift)

    def __repr__(self) -> str:
        flag = ", saturated" if self.saturated else ""
        return f"FixedQ2_30({self.raw / SCALE:.10f}{flag})"


@dataclass(frozen=True)
class FixedComplex:
    """Complex number with Q2.30 real and imaginary parts."""

    re: FixedQ2_30
    im: FixedQ2_30

    @property
    def saturated(self) -> bool:
        return self.re.saturated or self.im.saturated

    @classmethod
    def from_complex(cls, z: complex) -> FixedComplex:
        return cls(encode(z.real), encode(z.imag))

    @classmethod
    def from_raw(cls, re: int, im: int) -> FixedComplex:
        return cls(FixedQ2_30(re), FixedQ2_30(im))

    def to_complex(self) -> complex:
        return complex(decode(self.re), decode(self.im))

    def __mul__(self, other: FixedComplex) -> FixedComplex:
        return cx_mul(self, other)

    def __add__(self, other: FixedComplex) -> FixedComplex:
        return cx_add(self, other)

    def __sub__(self, other: FixedComplex) -> FixedComplex:
        return cx_sub(self, other)


# ---------------------------------------------------------------------------
# Scalar operations
# ---------------------------------------------------------------------------

def encode(x: float) -> FixedQ2_30:
    """Encode a real in ``[-2, 2)``; the result is within ``2**-31`` of *x*."""
    if math.isnan(x) or not -2.0 <= x < 2.0:
        raise RangeError(f"{x!r} is outside the Q2.30 range [-2, 2)")
    scaled = x * SCALE  # exact: power-of-two scaling
    magnitude = abs(scaled)
    whole = math.floor(magnitude)
    raw = int(whole) + (1 if magnitude - whole >= 0.5 else 0)
    raw = raw if scaled >= 0 else -raw
    raw, sat = _saturate(raw)
    return FixedQ2_30(raw, sat)


def decode(value: FixedQ2_30) -> float:
    return value.raw / SCALE


def fx_mul(a: FixedQ2_30, b: FixedQ2_30) -> FixedQ2_30:
    raw, sat = _saturate(_round_shift(a.raw * b.raw))
    return FixedQ2_30(raw, sat or a.saturated or b.saturated)


def fx_add(a: FixedQ2_30, b: FixedQ2_30) -> FixedQ2_30:
    raw, sat = _saturate(a.raw + b.raw)
    return FixedQ2_30(raw, sat or a.saturated or b.saturated)


def fx_sub(a: FixedQ2_30, b: FixedQ2_30) -> FixedQ2_30:
    raw, sat = _saturate(a.raw - b.raw)
    return FixedQ2_30(raw, sat or a.saturated or b.saturated)


def fx_shl(a: FixedQ2_30, shift: int) -> FixedQ2_30:
    """Arithmetic left shift by *shift* bits, saturating."""
    if shift < 0:
        raise RangeError(f"shift must be non-negative, got {shift}")
    raw, sat = _saturate(a.raw << shift)
    return FixedQ2_30(raw, sat or a.saturated)


def cx_mul(a: FixedComplex, b: FixedComplex) -> FixedComplex:
    """Complex product from four full-width partial products, one rounding per part."""
    re_raw, re_sat = _saturate(_round_shift(a.re.raw * b.re.raw - a.im.raw * b.im.raw))
    im_raw, im_sat = _saturate(_round_shift(a.re.raw * b.im.raw + a.im.raw * b.re.raw))
    sticky = a.saturated or b.saturated
    return FixedComplex(
        FixedQ2_30(re_raw, re_sat or sticky),
        FixedQ2_30(im_raw, im_sat or sticky),
    )


def cx_add(a: FixedComplex, b: FixedComplex) -> FixedComplex:
    return FixedComplex(fx_add(a.re, b.re), fx_add(a.im, b.im))


def cx_sub(a: FixedComplex, b: FixedComplex) -> FixedComplex:
    return FixedComplex(fx_sub(a.re, b.re), fx_sub(a.im, b.im))


def cx_conj(a: FixedComplex) -> FixedComplex:
    return FixedComplex(a.re, fx_sub(FixedQ2_30(0), a.im))


# ---------------------------------------------------------------------------
# Array operations: int64 arrays of shape (..., 2) holding (re, im) raws
# ---------------------------------------------------------------------------

def _round_shift_array(values: np.ndarray) -> np.ndarray:
    return np.where(values >= 0, (values + _HALF) >> FRAC_BITS, -((-values + _HALF) >> FRAC_BITS))


def _saturate_array(values: np.ndarray) -> tuple[np.ndarray, bool]:
    clipped = np.clip(values, RAW_MIN, RAW_MAX)
    return clipped.astype(np.int64), bool(np.any(clipped != values))


def encode_array(values: np.ndarray) -> tuple[np.ndarray, bool]:
    """Encode complex values into raw pairs; same rounding as :func:`encode`."""
    values = np.asarray(values, dtype=np.complex128)
    parts = np.stack([values.real, values.imag], axis=-1)
    if np.any(np.isnan(parts)) or np.any(parts < -2.0) or np.any(parts >= 2.0):
        raise RangeError("complex components must lie in the Q2.30 range [-2, 2)")
    scaled = parts * SCALE
    magnitude = np.abs(scaled)
    whole = np.floor(magnitude)
    raw = whole.astype(np.int64) + (magnitude - whole >= 0.5).astype(np.int64)
    raw = np.where(scaled >= 0, raw, -raw)
    return _saturate_array(raw)


def decode_array(raws: np.ndarray) -> np.ndarray:
    raws = np.asarray(raws, dtype=np.int64)
    return (raws[..., 0] / SCALE) + 1j * (raws[..., 1] / SCALE)


def cx_mul_array(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
    """Elementwise :func:`cx_mul` over broadcastable raw-pair arrays."""
    ar, ai = a[..., 0], a[..., 1]
    br, bi = b[..., 0], b[..., 1]
    # |re| stays below 2**63; im can reach 2**63 only when both terms are positive.
    re = ar * br - ai * bi
    p1, p2 = ar * bi, ai * br
    im = p1 + p2
    wrapped = (p1 > 0) & (p2 > 0) & (im < 0)
    re_raw, re_sat = _saturate_array(_round_shift_array(re))
    im_raw = _round_shift_array(im)
    im_raw = np.where(wrapped, RAW_MAX, im_raw)
    im_raw, im_sat = _saturate_array(im_raw)
    return np.stack([re_raw, im_raw], axis=-1), re_sat or im_sat or bool(np.any(wrapped))


def cx_add_array(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
    return _saturate_array(a + b)
