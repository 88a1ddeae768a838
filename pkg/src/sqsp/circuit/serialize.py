"""
Line-based text format for circuits.

    qubits 3
    cbits 1
    # register: A 0 1
    # stage: onehot
    h q0
    ry(0.5) q1
    cx q0 q1
    mcx q0 q1 q2 pool q3
    fanout.maf q0 q1 q2 pool q3 q4
    measure q0 -> c0
    round
    cond !xor(c0) z q1

Angles are written with `repr`, so a parse of a serialized circuit gives
back exactly the same floats. Stage comments apply to every following
instruction until the next one; `# stage: none` clears the tag.
"""
import re
from typing import List
from typing import Optional
from typing import Tuple

from sqsp.circuit.ir import GateKind
from sqsp.circuit.ir import PARAM_COUNTS
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import CondGate
from sqsp.circuit.ir import Condition
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.constants import Stage
from sqsp.core.errors import CircuitError
from sqsp.core.errors import CircuitParseError

_HEAD_RE = re.compile(r"^([a-z]+)(?:\.([a-z]+))?(?:\(([^)]*)\))?$")
_WIRE_RE = re.compile(r"^q(\d+)$")
_CBIT_RE = re.compile(r"^c(\d+)$")
_COND_RE = re.compile(r"^cond\s+(!?)xor\(([^)]*)\)\s+([xz])\s+(\S+)$")
_MEASURE_RE = re.compile(r"^measure\s+(\S+)\s*->\s*(\S+)$")
_STAGE_PREFIX = "# stage:"
_REGISTER_PREFIX = "# register:"

_KINDS = {kind.value: kind for kind in GateKind}


def _format_angle(value: float) -> str:
    return repr(float(value))


def format_instruction(instr: Instruction) -> str:
    """One text line for an instruction, without a trailing newline."""
    kind = instr.kind
    if kind == GateKind.MEASURE:
        return f"measure q{instr.qubits[0]} -> c{instr.cbits[0]}"
    if kind == GateKind.COND:
        return f"cond {instr.condition!r} {instr.cond_gate.value} q{instr.qubits[0]}"
    if kind == GateKind.ROUND_BARRIER:
        return "round"

    head = kind.value
    if instr.mode is not None:
        head += f".{instr.mode.value}"
    if instr.params:
        head += "(" + ",".join(_format_angle(p) for p in instr.params) + ")"
    parts = [head] + [f"q{q}" for q in instr.qubits]
    if instr.pool:
        parts.append("pool")
        parts.extend(f"q{q}" for q in instr.pool)
    return " ".join(parts)


def serialize(circuit: Circuit) -> str:
    """Text document for a circuit; registers first, then instructions."""
    lines = [f"qubits {circuit.num_qubits}", f"cbits {circuit.num_cbits}"]
    for name, (start, length) in circuit.register_map.items():
        lines.append(f"{_REGISTER_PREFIX} {name} {start} {length}")

    stage: Optional[Stage] = None
    for instr in circuit:
        if instr.stage != stage:
            stage = instr.stage
            lines.append(f"{_STAGE_PREFIX} {stage.value if stage is not None else 'none'}")
        lines.append(format_instruction(instr))
    return "\n".join(lines) + "\n"


def _wire(token: str, line_number: int) -> int:
    match = _WIRE_RE.match(token)
    if match is None:
        raise CircuitParseError(f"Expected a qubit like 'q3', got {token!r}.", line_number)
    return int(match.group(1))


def _cbit(token: str, line_number: int) -> int:
    match = _CBIT_RE.match(token.strip())
    if match is None:
        raise CircuitParseError(f"Expected a classical bit like 'c0', got {token!r}.", line_number)
    return int(match.group(1))


def _header(line: str, keyword: str, line_number: int) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
        raise CircuitParseError(f"Expected '{keyword} <count>', got {line!r}.", line_number)
    return int(parts[1])


def parse_instruction(line: str, line_number: int = 0, stage: Optional[Stage] = None) -> Instruction:
    """
    Parse one instruction line.

    :raises CircuitParseError: on any syntax or operand error.
    """
    try:
        return _parse_instruction(line.strip(), line_number, stage)
    except CircuitParseError:
        raise
    except (CircuitError, ValueError) as err:
        raise CircuitParseError(str(err), line_number) from err


def _parse_instruction(line: str, line_number: int, stage: Optional[Stage]) -> Instruction:
    if line == "round":
        return Instruction(GateKind.ROUND_BARRIER, stage=stage)

    match = _MEASURE_RE.match(line)
    if match is not None:
        return Instruction(
            GateKind.MEASURE,
            (_wire(match.group(1), line_number),),
            cbits=(_cbit(match.group(2), line_number),),
            stage=stage,
        )

    match = _COND_RE.match(line)
    if match is not None:
        cbits = [_cbit(token, line_number) for token in match.group(2).split(",")]
        return Instruction(
            GateKind.COND,
            (_wire(match.group(4), line_number),),
            condition=Condition(cbits, negated=match.group(1) == "!"),
            cond_gate=CondGate(match.group(3)),
            stage=stage,
        )

    tokens = line.split()
    head = _HEAD_RE.match(tokens[0])
    if head is None or head.group(1) not in _KINDS:
        raise CircuitParseError(f"Unknown instruction {tokens[0]!r}.", line_number)
    kind = _KINDS[head.group(1)]
    if kind in (GateKind.MEASURE, GateKind.COND, GateKind.ROUND_BARRIER):
        raise CircuitParseError(f"Malformed {kind.value} line {line!r}.", line_number)

    mode = None
    if head.group(2) is not None:
        try:
            mode = FanoutMode(head.group(2))
        except ValueError as err:
            raise CircuitParseError(f"Unknown mode {head.group(2)!r}.", line_number) from err

    params: Tuple[float, ...] = ()
    if head.group(3) is not None:
        params = tuple(float(p) for p in head.group(3).split(","))
    if len(params) != PARAM_COUNTS.get(kind, 0):
        raise CircuitParseError(f"{kind.value} takes {PARAM_COUNTS.get(kind, 0)} angles.", line_number)

    operands = tokens[1:]
    pool: List[int] = []
    if "pool" in operands:
        split = operands.index("pool")
        pool = [_wire(token, line_number) for token in operands[split + 1 :]]
        operands = operands[:split]
    qubits = [_wire(token, line_number) for token in operands]

    return Instruction(kind, qubits, params, pool=pool, mode=mode, stage=stage)


def parse_circuit(text: str) -> Circuit:
    """
    Parse a text document back into a `Circuit`.

    :raises CircuitParseError: with the offending line number on syntax
        errors, out-of-range operands or conditions on unwritten bits.
    """
    lines = text.splitlines()
    content = [(number, line.strip()) for number, line in enumerate(lines, start=1)]
    content = [(number, line) for number, line in content if line]
    if len(content) < 2:
        raise CircuitParseError("Missing 'qubits' and 'cbits' header.", content[0][0] if content else 1)

    num_qubits = _header(content[0][1], "qubits", content[0][0])
    num_cbits = _header(content[1][1], "cbits", content[1][0])
    circuit = Circuit(num_qubits, num_cbits)

    stage: Optional[Stage] = None
    for number, line in content[2:]:
        if line.startswith(_STAGE_PREFIX):
            name = line[len(_STAGE_PREFIX) :].strip()
            try:
                stage = None if name == "none" else Stage(name)
            except ValueError as err:
                raise CircuitParseError(f"Unknown stage {name!r}.", number) from err
            continue
        if line.startswith(_REGISTER_PREFIX):
            parts = line[len(_REGISTER_PREFIX) :].split()
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise CircuitParseError(f"Malformed register comment {line!r}.", number)
            try:
                circuit.add_register(parts[0], int(parts[1]), int(parts[2]))
            except CircuitError as err:
                raise CircuitParseError(str(err), number) from err
            continue
        if line.startswith("#"):
            continue

        instr = parse_instruction(line, number, stage)
        try:
            circuit.append(instr)
        except CircuitError as err:
            raise CircuitParseError(str(err), number) from err
    return circuit
