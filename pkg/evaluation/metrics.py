"""State comparison metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from kernels.coo import StateVector
from kernels.errors import ShapeError


@dataclass
class StateComparison:
    """How far an emulated state is from a reference state."""

    max_abs_deviation: float
    norm_error: float
    fidelity: float

    def within(self, tolerance: float) -> bool:
        return self.max_abs_deviation <= tolerance

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_abs_deviation": self.max_abs_deviation,
            "norm_error": self.norm_error,
            "fidelity": round(self.fidelity, 12),
        }


def _amplitudes(state: StateVector | np.ndarray) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.to_complex()
    return np.asarray(state, dtype=np.complex128)


def max_abs_deviation(actual: StateVector | np.ndarray, reference: StateVector | np.ndarray) -> float:
    """Largest per-amplitude ``|a_k - b_k|``."""
    a, b = _amplitudes(actual), _amplitudes(reference)
    if a.shape != b.shape:
        raise ShapeError(f"Cannot compare states of length {len(a)} and {len(b)}")
    return float(np.max(np.abs(a - b))) if len(a) else 0.0


def norm_error(state: StateVector | np.ndarray) -> float:
    """``|‖ψ‖² - 1|``."""
    return float(abs(np.sum(np.abs(_amplitudes(state)) ** 2) - 1.0))


def fidelity(actual: StateVector | np.ndarray, reference: StateVector | np.ndarray) -> float:
    """``|⟨ref|ψ⟩|²`` for normalized inputs."""
    a, b = _amplitudes(actual), _amplitudes(reference)
    if a.shape != b.shape:
        raise ShapeError(f"Cannot compare states of length {len(a)} and {len(b)}")
    return float(abs(np.vdot(b, a)) ** 2)


def compare_states(actual: StateVector | np.ndarray, reference: StateVector | np.ndarray) -> StateComparison:
    return StateComparison(
        max_abs_deviation=max_abs_deviation(actual, reference),
        norm_error=norm_error(actual),
        fidelity=fidelity(actual, reference),
    )
