"""Experiment runners – benchmarks and oracle verification."""

from experiments.benchmark import BenchmarkResult, BenchmarkRow, BenchmarkRunner
from experiments.verification import OracleVerifier, VerificationReport

__all__ = [
    "BenchmarkResult",
    "BenchmarkRow",
    "BenchmarkRunner",
    "OracleVerifier",
    "VerificationReport",
]
