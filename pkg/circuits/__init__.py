"""Circuit IR – the circuit container, ``.qc`` format and circuit builders."""

from circuits.builders import build_ghz, build_qft, build_random, expand_adjacent
from circuits.model import Circuit
from circuits.parser import load_circuit, parse_circuit, print_circuit

__all__ = [
    "Circuit",
    "build_ghz",
    "build_qft",
    "build_random",
    "expand_adjacent",
    "load_circuit",
    "parse_circuit",
    "print_circuit",
]
