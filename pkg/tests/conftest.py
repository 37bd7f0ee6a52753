"""Shared fixtures for the test suite.

Provides sample circuits, seeded random states, a temporary settings file and
a golden-file helper.  Goldens under ``tests/golden/`` are committed; set
``QEA_UPDATE_GOLDEN=1`` to rewrite them after an intended output change.
"""

from __future__ import annotations

import os
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from circuits.builders import build_ghz
from circuits.model import Circuit
from circuits.parser import parse_circuit
from gates.library import GateName, GateSpec
from kernels.arithmetic import ScalarMode

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"

Q = 1 / np.sqrt(2)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def random_amplitudes(n: int, seed: int = 0) -> np.ndarray:
    """Normalized complex amplitudes whose components stay well inside [-1, 1]."""
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(params=[ScalarMode.FLOAT, ScalarMode.FIXED], ids=["float", "fixed"])
def mode(request) -> ScalarMode:
    return request.param


@pytest.fixture
def bell() -> Circuit:
    return parse_circuit("qubits 2\nname bell\nh 0\ncx 0 1\n")


@pytest.fixture
def ghz3() -> Circuit:
    return build_ghz(3)


@pytest.fixture
def swap_halves_state() -> np.ndarray:
    """The explicit 3-qubit initial state of ``samples/swap_halves.qc``."""
    return np.array(
        [0.1 + 0.2j, 0.3, -0.4j, 0.2 + 0.2j, 0.5, -0.3 + 0.1j, 0.1 - 0.1j, 0.5],
        dtype=np.complex128,
    )


@pytest.fixture
def x_on_top() -> Circuit:
    return Circuit(3, [GateSpec(GateName.X, (0,))], "x-top")


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def settings_file(tmp_path: Path) -> Path:
    """A minimal config with logging quietened."""
    path = tmp_path / "settings.yaml"
    path.write_text(
        "emulator:\n  mode: float\n  pe_count: 4\n"
        "logging:\n  level: WARNING\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def golden() -> Callable[[str, str], None]:
    """Compare *text* with the committed ``tests/golden/<name>``."""

    def check(name: str, text: str) -> None:
        path = GOLDEN / name
        if os.environ.get("QEA_UPDATE_GOLDEN") == "1":
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        if not path.exists():
            pytest.fail(f"golden file {path.name} is missing; rerun with QEA_UPDATE_GOLDEN=1 to record it")
        assert text == path.read_text(encoding="utf-8")

    return check
