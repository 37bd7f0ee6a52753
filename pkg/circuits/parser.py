"""Reader and writer for the ``.qc`` circuit text format.

Grammar, one statement per line, ``#`` starts a comment::

    qubits <n>                      # required, before any gate or state line
    name <label>                    # optional
    state <index> <re> <im>         # optional, repeatable; must be normalized
    <gate> <target> [<target2>] [<angle>]

Gate names are case-insensitive.  Every problem found in a file is reported,
each with its line and column, in a single :class:`CircuitParseError`.
"""

from __future__ import annotations

import logging
import math
import re
from pathlib import Path

from circuits.model import MAX_QUBITS, NORM_TOLERANCE, Circuit, name_issue, op_issues
from gates.library import GateSpec, arity, gate_name, is_parameterized
from kernels.errors import CircuitParseError, Diagnostic, GateError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")

DEFAULT_NAME = "circuit"


class _Token:
    __slots__ = ("text", "column")

    def __init__(self, match: re.Match[str]) -> None:
        self.text = match.group(0)
        self.column = match.start() + 1


class _Reader:
    """Collects diagnostics while walking the statements of one source."""

    def __init__(self, source: str) -> None:
        self.source = source
        self.diagnostics: list[Diagnostic] = []

    def error(self, line: int, column: int, message: str) -> None:
        self.diagnostics.append(Diagnostic(line, column, message))

    def integer(self, line: int, token: _Token, what: str) -> int | None:
        try:
            value = int(token.text)
        except ValueError:
            self.error(line, token.column, f"expected integer {what}, got {token.text!r}")
            return None
        if value < 0:
            self.error(line, token.column, f"{what} must be non-negative, got {value}")
            return None
        return value

    def real(self, line: int, token: _Token, what: str) -> float | None:
        try:
            value = float(token.text)
        except ValueError:
            self.error(line, token.column, f"expected number for {what}, got {token.text!r}")
            return None
        if not math.isfinite(value):
            self.error(line, token.column, f"{what} must be finite, got {token.text!r}")
            return None
        return value


def parse_circuit(text: str, source: str = "<string>", name: str | None = None) -> Circuit:
    """Parse ``.qc`` text into a validated :class:`Circuit`.

    Parameters
    ----------
    text : str
        The circuit source.
    source : str
        Label used in diagnostics, usually the file path.
    name : str, optional
        Circuit name when the text has no ``name`` statement.

    Raises
    ------
    CircuitParseError
        With every diagnostic found; no partially valid circuit is returned.
    """
    reader = _Reader(source)
    n: int | None = None
    label = name if name and name_issue(name) is None else DEFAULT_NAME
    ops: list[GateSpec] = []
    initial: list[tuple[int, complex]] = []
    state_lines: dict[int, int] = {}
    first_state_line = 0

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        tokens = [_Token(m) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        head = tokens[0]
        keyword = head.text.lower()

        if keyword == "qubits":
            if n is not None:
                reader.error(lineno, head.column, "duplicate 'qubits' statement")
                continue
            if len(tokens) != 2:
                reader.error(lineno, head.column, "expected 'qubits <n>'")
                n = 0
                continue
            value = reader.integer(lineno, tokens[1], "qubit count")
            if value is not None and not 1 <= value <= MAX_QUBITS:
                reader.error(lineno, tokens[1].column, f"qubit count {value} outside [1, {MAX_QUBITS}]")
                value = None
            n = value if value is not None else 0
            continue

        if keyword == "name":
            if len(tokens) < 2:
                reader.error(lineno, head.column, "expected 'name <label>'")
            else:
                label = line[tokens[1].column - 1:].strip()
            continue

        if n is None:
            reader.error(lineno, head.column, "missing 'qubits <n>' header before first statement")
            n = 0

        if keyword == "state":
            if len(tokens) != 4:
                reader.error(lineno, head.column, "expected 'state <index> <re> <im>'")
                continue
            index = reader.integer(lineno, tokens[1], "state index")
            re_part = reader.real(lineno, tokens[2], "real part")
            im_part = reader.real(lineno, tokens[3], "imaginary part")
            if index is None or re_part is None or im_part is None:
                continue
            if n and index >= 1 << n:
                reader.error(lineno, tokens[1].column, f"state index {index} outside [0, {1 << n})")
                continue
            if index in state_lines:
                reader.error(lineno, tokens[1].column, f"state index {index} already set on line {state_lines[index]}")
                continue
            state_lines[index] = lineno
            first_state_line = first_state_line or lineno
            initial.append((index, complex(re_part, im_part)))
            continue

        op = _parse_gate(reader, lineno, tokens, n)
        if op is not None:
            ops.append(op)

    if n is None:
        reader.error(1, 1, "missing 'qubits <n>' header")
    if initial and not reader.diagnostics:
        norm = sum(abs(a) ** 2 for _, a in initial)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            reader.error(first_state_line, 1, f"initial state norm² {norm:.9f} is not 1 within {NORM_TOLERANCE}")

    if reader.diagnostics:
        logger.debug("Parse of %s failed with %d diagnostic(s)", source, len(reader.diagnostics))
        raise CircuitParseError(reader.diagnostics, source)
    assert n is not None
    return Circuit(n, ops, label, initial)


def _parse_gate(reader: _Reader, lineno: int, tokens: list[_Token], n: int) -> GateSpec | None:
    head = tokens[0]
    try:
        gname = gate_name(head.text)
    except GateError as exc:
        reader.error(lineno, head.column, str(exc))
        return None

    n_targets = arity(gname)
    n_params = 1 if is_parameterized(gname) else 0
    args = tokens[1:]
    expected = n_targets + n_params
    if len(args) != expected:
        usage = " ".join(["<target>"] * n_targets + ["<angle>"] * n_params)
        if len(args) > expected:
            column, problem = args[expected].column, "unexpected extra"
        else:
            column, problem = (args[-1] if args else head).column, "missing"
        reader.error(lineno, column, f"{problem} argument(s) for {head.text}: expected '{head.text} {usage}'")
        return None

    targets: list[int] = []
    for token in args[:n_targets]:
        value = reader.integer(lineno, token, "qubit index")
        if value is None:
            return None
        targets.append(value)
    param = None
    if n_params:
        param = reader.real(lineno, args[n_targets], "angle")
        if param is None:
            return None

    try:
        op = GateSpec(gname, tuple(targets), param)
    except GateError as exc:
        reader.error(lineno, args[0].column, str(exc))
        return None
    if n:
        for message in op_issues(op, n):
            reader.error(lineno, args[0].column, message)
            op = None
    return op


def print_circuit(circuit: Circuit) -> str:
    """Serialize *circuit*; ``parse_circuit(print_circuit(c))`` reproduces ``c``."""
    lines = [f"qubits {circuit.n}", f"name {circuit.name}"]
    lines.extend(f"state {i} {a.real!r} {a.imag!r}" for i, a in circuit.initial)
    lines.extend(str(op) for op in circuit.ops)
    return "\n".join(lines) + "\n"


def load_circuit(path: str | Path) -> Circuit:
    """Read and parse a ``.qc`` file; the file stem names the circuit by default."""
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        head = data[: exc.start]
        line = head.count(b"\n") + 1
        column = exc.start - (head.rfind(b"\n") + 1) + 1
        raise CircuitParseError([Diagnostic(line, column, "invalid UTF-8")], str(path)) from None
    return parse_circuit(text, source=str(path), name=path.stem)


def save_circuit(circuit: Circuit, path: str | Path) -> None:
    Path(path).write_text(print_circuit(circuit), encoding="utf-8")
