#!/usr/bin/env python3
"""Command-line interface for the sparse quantum-circuit emulator.

Usage examples:
    python cli.py run samples/bell.qc
    python cli.py run samples/qft4.qc --mode fixed --pes 16 --format json
    python cli.py fuse samples/qft4.qc
    python cli.py estimate memory --n 20..32
    python cli.py estimate cycles --n 2..26 --m 100
    python cli.py estimate resources --pes 2^2..2^6
    python cli.py verify --n-max 6 --depth 30 --trials 200 --seed 1
    python cli.py bench --suite qft --n 2..12 --pes 16

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
import yaml
from pydantic import ValidationError

from circuits.model import Circuit
from circuits.parser import load_circuit
from data.models import EmulatorSettings, OutputFormat, PEConfig, RunConfig
from data.tables import render, to_json
from estimation.cost_model import cycle_model, sweep
from evaluation.metrics import compare_states
from evaluation.oracle import dense_run
from experiments.benchmark import BenchmarkRunner
from experiments.verification import OracleVerifier
from kernels.arithmetic import ScalarMode
from kernels.errors import CircuitParseError, EmulatorError
from orchestration.emulator import Emulator

logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _load_config(config_path: str = "config/default.yaml") -> dict[str, Any]:
    """Load and return the YAML config."""
    p = Path(config_path)
    if not p.exists():
        click.echo(f"Config not found: {p}. Using defaults.", err=True)
        return {}
    with open(p) as f:
        return yaml.safe_load(f) or {}


def _setup_logging(level: str = "INFO", fmt: str = "%(asctime)s [%(levelname)s] %(name)s: %(message)s") -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=fmt,
        stream=sys.stderr,
    )


def _parse_token(token: str) -> tuple[int, bool]:
    token = token.strip()
    if token.startswith("2^"):
        return 1 << int(token[2:]), True
    return int(token), False


def parse_range(text: str) -> list[int]:
    """Expand ``a..b``, comma lists and ``2^k`` tokens into a sorted list.

    ``2^a..2^b`` steps through the powers of two between the bounds.
    """
    values: set[int] = set()
    try:
        for part in text.split(","):
            if not part.strip():
                raise ValueError("empty item")
            if ".." in part:
                lo_text, hi_text = part.split("..", 1)
                (lo, lo_pow), (hi, hi_pow) = _parse_token(lo_text), _parse_token(hi_text)
                if lo > hi:
                    raise ValueError(f"descending range {part.strip()!r}")
                if lo_pow and hi_pow:
                    values.update(1 << k for k in range(lo.bit_length() - 1, hi.bit_length()))
                else:
                    values.update(range(lo, hi + 1))
            else:
                values.add(_parse_token(part)[0])
    except ValueError as exc:
        raise click.BadParameter(f"invalid range {text!r}: {exc}") from None
    return sorted(values)


class RangeParam(click.ParamType):
    name = "range"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> list[int]:
        if isinstance(value, list):
            return value
        try:
            return parse_range(str(value))
        except click.BadParameter as exc:
            self.fail(exc.message, param, ctx)


class PowerOfTwoParam(click.ParamType):
    """Integer given plainly or as ``2^k``."""

    name = "int"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> int:
        if isinstance(value, int):
            return value
        try:
            return _parse_token(str(value))[0]
        except ValueError:
            self.fail(f"{value!r} is not an integer or 2^k", param, ctx)


RANGE = RangeParam()
INT_OR_POW = PowerOfTwoParam()


def _run_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Flags shared by the commands that run or model a circuit."""
    options = [
        click.option("--mode", type=click.Choice([m.value for m in ScalarMode]), default=None, help="Scalar mode"),
        click.option("--pes", "pe_count", type=INT_OR_POW, default=None, help="Processing elements (power of two)"),
        click.option("--ldm-depth", type=INT_OR_POW, default=None, help="Per-PE local memory depth in words"),
        click.option("--tgbar-depth", type=INT_OR_POW, default=None, help="T(Ḡ) memory depth in words"),
        click.option("--nbar", "n_bar", type=int, default=None, help="Dividing-point hint"),
        click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None),
        click.option("--seed", type=int, default=None, help="Random seed"),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write output here"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run_config(ctx: click.Context, circuit: Path | None = None, **flags: Any) -> RunConfig:
    """Merge the settings file with command-line flags."""
    settings: EmulatorSettings = ctx.obj["settings"]
    merged: dict[str, Any] = settings.emulator.model_dump()
    merged["circuit"] = circuit
    for key, value in flags.items():
        if value is not None:
            merged["format" if key == "fmt" else key] = value
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        raise click.UsageError(f"invalid configuration: {exc.errors()[0]['msg']}", ctx) from None


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    click.echo(f"Wrote {out}", err=True)


def _load(ctx: click.Context, path: Path) -> Circuit:
    try:
        return load_circuit(path)
    except CircuitParseError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_USAGE)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc.strerror}", ctx) from None


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

@click.group()
@click.option("--config", default="config/default.yaml", help="Path to YAML config")
@click.option("--log-level", default=None, help="Logging level (defaults to the config file's)")
@click.pass_context
def cli(ctx: click.Context, config: str, log_level: str | None) -> None:
    """Sparse quantum-circuit emulator – run, inspect fusion, model costs."""
    raw = _load_config(config)
    try:
        settings = EmulatorSettings.model_validate(raw)
    except ValidationError as exc:
        raise click.UsageError(f"invalid config {config}: {exc.errors()[0]['msg']}", ctx) from None
    _setup_logging(log_level or settings.logging.level, settings.logging.format)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings
    ctx.obj["config_path"] = config


# ---- run ------------------------------------------------------------------

@cli.command()
@click.argument("circuit", type=click.Path(path_type=Path))
@_run_options
@click.option("--verify", is_flag=True, help="Also compare against the dense reference")
@click.option("--nonzero", is_flag=True, help="List only non-zero amplitudes")
@click.pass_context
def run(ctx: click.Context, circuit: Path, verify: bool, nonzero: bool, **flags: Any) -> None:
    """Run a .qc circuit and print the final amplitudes and a cycle estimate."""
    settings: EmulatorSettings = ctx.obj["settings"]
    cfg = _run_config(ctx, circuit, **flags)
    qc = _load(ctx, circuit)

    emulator = Emulator(cfg.mode, cfg.pe_config, cfg.n_bar, cfg.workers, settings.verification.norm_tolerance)
    try:
        result = emulator.run(qc)
    except EmulatorError as exc:
        raise click.UsageError(str(exc), ctx) from None

    amplitudes = result.amplitudes()
    rows = [
        {"index": k, "re": float(a.real), "im": float(a.imag)}
        for k, a in enumerate(amplitudes)
        if not nonzero or a != 0
    ]

    estimate = None
    if 2 <= qc.n <= settings.cost_model.max_cycle_qubits:
        n_bar = None if cfg.n_bar is None else min(cfg.n_bar, qc.n)
        estimate = cycle_model(qc.n, result.stats["groups"], cfg.pe_config, n_bar, settings.cost_model.max_cycle_qubits)

    comparison = None
    if verify:
        if qc.n > settings.verification.oracle_max_qubits:
            raise click.UsageError(
                f"--verify supports at most {settings.verification.oracle_max_qubits} qubits", ctx
            )
        comparison = compare_states(result.state, dense_run(qc))

    if cfg.format is OutputFormat.JSON:
        payload: dict[str, Any] = {**result.to_dict(), "amplitudes": rows}
        payload["cycles"] = estimate.model_dump(mode="json") if estimate else None
        if comparison is not None:
            payload["verification"] = comparison.to_dict()
        _emit(to_json([payload]), cfg.out)
    else:
        text = render(rows, cfg.format)
        summary: list[str] = []
        if estimate is not None:
            summary.append(
                f"Estimated cycles ({estimate.regime.value}, P={estimate.pe_count}, m={estimate.m}): "
                f"{estimate.total} [write {estimate.c_write}, TP {estimate.c_tp}, MM {estimate.c_mm}, read {estimate.c_read}]"
            )
        if comparison is not None:
            summary.append(f"Max deviation from dense reference: {comparison.max_abs_deviation:.3e}")
        if cfg.format is OutputFormat.TEXT:
            text += "".join(f"\n{line}" for line in summary) + ("\n" if summary else "")
        else:
            for line in summary:
                click.echo(line, err=True)
        _emit(text, cfg.out)

    if result.saturated:
        click.echo("Warning: fixed-point saturation occurred; amplitudes were clamped", err=True)
    if comparison is not None:
        tolerance = (
            settings.verification.float_tolerance
            if cfg.mode is ScalarMode.FLOAT
            else max(qc.gate_count, 1) * 2.0 ** -26
        )
        if not comparison.within(tolerance):
            click.echo(f"Verification FAILED: deviation exceeds {tolerance:.1e}", err=True)
            ctx.exit(EXIT_VERIFY_FAILED)


# ---- fuse -----------------------------------------------------------------

@cli.command()
@click.argument("circuit", type=click.Path(path_type=Path))
@_run_options
@click.pass_context
def fuse(ctx: click.Context, circuit: Path, **flags: Any) -> None:
    """List fused groups with their dividing point and factor sizes."""
    cfg = _run_config(ctx, circuit, **flags)
    qc = _load(ctx, circuit)
    report = Emulator(cfg.mode, cfg.pe_config, cfg.n_bar).fuse_report(qc)
    _emit(render([g.to_dict() for g in report], cfg.format), cfg.out)


# ---- estimate -------------------------------------------------------------

@cli.command()
@click.argument("kind", type=click.Choice(["memory", "cycles", "resources"]))
@click.option("--n", "n_values", type=RANGE, default=None, help="Qubit counts, e.g. 20..32")
@click.option("--nbar", "n_bar_values", type=RANGE, default=None, help="Dividing points, e.g. 1..16")
@click.option("--m", "m", type=int, default=100, show_default=True, help="Fused groups per circuit")
@click.option("--pes", type=RANGE, default=None, help="PE counts; default: the reference configurations")
@click.option("--ldm-depth", type=RANGE, default=None, help="Local memory depths paired with --pes")
@click.option("--tgbar-depth", type=INT_OR_POW, default=None)
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def estimate(
    ctx: click.Context,
    kind: str,
    n_values: list[int] | None,
    n_bar_values: list[int] | None,
    m: int,
    pes: list[int] | None,
    ldm_depth: list[int] | None,
    tgbar_depth: int | None,
    fmt: str,
    out: Path | None,
) -> None:
    """Tabulate the memory, cycle or resource model over a parameter sweep."""
    settings: EmulatorSettings = ctx.obj["settings"]
    if n_values is None:
        n_values = list(range(20, 33)) if kind == "memory" else list(range(2, settings.cost_model.max_cycle_qubits + 1))

    try:
        if pes is None and ldm_depth is None:
            configs = list(settings.reference_configs)
        else:
            depths = ldm_depth or [settings.emulator.ldm_depth]
            tgbar = tgbar_depth if tgbar_depth is not None else settings.emulator.tgbar_depth
            configs = [
                PEConfig(pe_count=p, ldm_depth=d, tgbar_depth=tgbar)
                for p in (pes or [settings.emulator.pe_count])
                for d in depths
            ]
        rows = sweep(kind, n_values, configs, m, n_bar_values, settings.cost_model)
    except (ValidationError, EmulatorError) as exc:
        message = exc.errors()[0]["msg"] if isinstance(exc, ValidationError) else str(exc)
        raise click.UsageError(message, ctx) from None
    _emit(render(rows, fmt), out)


# ---- verify ---------------------------------------------------------------

@cli.command()
@click.option("--n-max", type=int, default=6, show_default=True)
@click.option("--depth", type=int, default=30, show_default=True)
@click.option("--trials", type=int, default=200, show_default=True)
@_run_options
@click.pass_context
def verify(ctx: click.Context, n_max: int, depth: int, trials: int, **flags: Any) -> None:
    """Compare seeded random circuits against the dense reference."""
    settings: EmulatorSettings = ctx.obj["settings"]
    cfg = _run_config(ctx, **flags)
    verifier = OracleVerifier(
        cfg.mode, cfg.pe_config, cfg.n_bar, settings.verification.float_tolerance, cfg.workers
    )
    try:
        report = verifier.run(n_max, depth, trials, cfg.seed)
    except EmulatorError as exc:
        raise click.UsageError(str(exc), ctx) from None

    text = render([report.to_dict()], cfg.format)
    _emit(text, cfg.out)
    if not report.passed:
        first = report.failures[0]
        click.echo(
            f"Verification FAILED on {len(report.failures)}/{report.trials} trials; "
            f"first failing seed {first.seed} (n={first.n}, depth={first.depth}): {first.reason}",
            err=True,
        )
        click.echo(first.circuit_text, err=True, nl=False)
        ctx.exit(EXIT_VERIFY_FAILED)
    click.echo(
        f"PASS: {report.trials} trials, seed {cfg.seed}, max deviation {report.max_deviation:.3e}",
        err=True,
    )


# ---- bench ----------------------------------------------------------------

@cli.command()
@click.option("--suite", type=click.Choice(["qft", "random"]), default="qft", show_default=True)
@click.option("--n", "n_values", type=RANGE, default="2..10", show_default=True)
@click.option("--pes", "pe_values", type=RANGE, default="16", show_default=True)
@click.option("--depth", type=int, default=20, show_default=True, help="Gates per random circuit")
@click.option("--model-only", is_flag=True, help="Skip emulation; modeled cycles only")
@click.option("--experiment", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Run the suites of an experiment YAML instead")
@click.option("--mode", type=click.Choice([m.value for m in ScalarMode]), default=None)
@click.option("--ldm-depth", type=INT_OR_POW, default=None)
@click.option("--tgbar-depth", type=INT_OR_POW, default=None)
@click.option("--nbar", "n_bar", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def bench(
    ctx: click.Context,
    suite: str,
    n_values: list[int],
    pe_values: list[int],
    depth: int,
    model_only: bool,
    experiment: str | None,
    **flags: Any,
) -> None:
    """Benchmark circuit families: wall clock plus modeled cycles against one PE."""
    settings: EmulatorSettings = ctx.obj["settings"]
    cfg = _run_config(ctx, **flags)
    runner = BenchmarkRunner(
        cfg.mode, cfg.ldm_depth, cfg.tgbar_depth, cfg.n_bar, cfg.workers, model_only, settings.cost_model
    )
    try:
        if experiment:
            results = runner.run_from_config(experiment)
        else:
            results = [runner.run_suite(suite, n_values, pe_values, depth, cfg.seed)]
    except (ValidationError, EmulatorError) as exc:
        message = exc.errors()[0]["msg"] if isinstance(exc, ValidationError) else str(exc)
        raise click.UsageError(message, ctx) from None

    rows = [row for result in results for row in result.rows]
    _emit(render(rows, cfg.format), cfg.out)
    for result in results:
        logger.info("Benchmark summary: %s", result.summarise())


# ---------------------------------------------------------------------------

if __name__ == "__main__":
    cli()
