"""
Circuit intermediate representation.

A `Circuit` is an ordered list of `Instruction`s over quantum wires and
classical bits. Composite kinds (CSWAP, TOFFOLI, MCX, MCRY, MCRZ, FANOUT,
OR_CX, PAR_CX) are expanded by `sqsp.circuit.lower`; a circuit is native when
it only holds single-qubit gates, CNOT, MEASURE, COND and ROUND_BARRIER.

Operand conventions:
- single-qubit gates: (q,)
- CNOT: (control, target)
- CSWAP: (control, t1, t2)
- TOFFOLI: (c0, c1, target)
- MCX, MCRY, MCRZ, OR_CX, PAR_CX: (*controls, target)
- FANOUT: (control, *targets)
- MEASURE: qubits (q,), cbits (c,)
- COND: qubits (target,), with `cond_gate` X or Z and a `Condition`
"""
from __future__ import annotations

import enum
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from sqsp.core.constants import FanoutMode
from sqsp.core.constants import Stage
from sqsp.core.errors import CircuitError
from sqsp.core.utils import ceil_log2


class GateKind(enum.Enum):
    """Instruction kinds, valued by their text-format mnemonic."""

    X = "x"
    H = "h"
    T = "t"
    TDG = "tdg"
    RY = "ry"
    RZ = "rz"
    U1Q = "u"
    IDLE = "id"
    CNOT = "cx"
    CSWAP = "cswap"
    TOFFOLI = "ccx"
    MCX = "mcx"
    MCRY = "mcry"
    MCRZ = "mcrz"
    FANOUT = "fanout"
    OR_CX = "orcx"
    PAR_CX = "parcx"
    MEASURE = "measure"
    COND = "cond"
    ROUND_BARRIER = "round"


SINGLE_QUBIT_KINDS = frozenset(
    (
        GateKind.X,
        GateKind.H,
        GateKind.T,
        GateKind.TDG,
        GateKind.RY,
        GateKind.RZ,
        GateKind.U1Q,
        GateKind.IDLE,
    )
)
NATIVE_KINDS = SINGLE_QUBIT_KINDS | frozenset(
    (GateKind.CNOT, GateKind.MEASURE, GateKind.COND, GateKind.ROUND_BARRIER)
)
COMPOSITE_KINDS = frozenset(GateKind) - NATIVE_KINDS
CONTROLLED_KINDS = frozenset(
    (GateKind.MCX, GateKind.MCRY, GateKind.MCRZ, GateKind.OR_CX, GateKind.PAR_CX)
)

PARAM_COUNTS = {
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.U1Q: 3,
    GateKind.MCRY: 1,
    GateKind.MCRZ: 1,
}

_FIXED_ARITY = {
    GateKind.CNOT: 2,
    GateKind.CSWAP: 3,
    GateKind.TOFFOLI: 3,
    GateKind.MEASURE: 1,
    GateKind.COND: 1,
    GateKind.ROUND_BARRIER: 0,
}

_SELF_INVERSE = frozenset(
    (
        GateKind.X,
        GateKind.H,
        GateKind.IDLE,
        GateKind.CNOT,
        GateKind.CSWAP,
        GateKind.TOFFOLI,
        GateKind.MCX,
        GateKind.OR_CX,
        GateKind.PAR_CX,
    )
)


class CondGate(enum.Enum):
    """Gates a COND instruction may apply."""

    X = "x"
    Z = "z"


class Condition:
    """
    XOR of a set of classical bits, optionally negated.

    Attributes:
        cbits (Tuple[int, ...]): classical bits in the parity.
        negated (bool): whether the parity is inverted.
    """

    cbits: Tuple[int, ...]
    negated: bool

    def __init__(self, cbits: Iterable[int], negated: bool = False) -> None:
        cbits = tuple(int(c) for c in cbits)
        if not cbits:
            raise CircuitError("A condition needs at least one classical bit.")
        if len(set(cbits)) != len(cbits):
            raise CircuitError(f"Repeated classical bit in condition {cbits}.")
        if min(cbits) < 0:
            raise CircuitError(f"Negative classical bit in condition {cbits}.")
        self.cbits = cbits
        self.negated = bool(negated)

    def evaluate(self, bits: Sequence[int]) -> bool:
        parity = 0
        for c in self.cbits:
            parity ^= bits[c]
        return bool(parity) != self.negated

    @property
    def xor_depth(self) -> int:
        """Depth of a balanced XOR tree over the bits, plus one for negation."""
        return ceil_log2(len(self.cbits)) + (1 if self.negated else 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Condition):
            return NotImplemented
        return self.cbits == other.cbits and self.negated == other.negated

    def __hash__(self) -> int:
        return hash((self.cbits, self.negated))

    def __repr__(self) -> str:
        body = ",".join(f"c{c}" for c in self.cbits)
        return f"{'!' if self.negated else ''}xor({body})"


class Instruction:
    """
    One circuit instruction.

    Attributes:
        kind (GateKind): instruction kind.
        qubits (Tuple[int, ...]): operand wires, see module docstring.
        params (Tuple[float, ...]): rotation angles in radians.
        cbits (Tuple[int, ...]): written classical bit of a MEASURE.
        condition (Optional[Condition]): parity guarding a COND.
        cond_gate (Optional[CondGate]): gate applied by a COND.
        pool (Tuple[int, ...]): clean ancilla wires a composite may borrow.
        mode (Optional[FanoutMode]): realization of FANOUT and PAR_CX.
        stage (Optional[Stage]): pipeline stage tag.
    """

    __slots__ = ("kind", "qubits", "params", "cbits", "condition", "cond_gate", "pool", "mode", "stage")

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        kind: GateKind,
        qubits: Sequence[int] = (),
        params: Sequence[float] = (),
        cbits: Sequence[int] = (),
        condition: Optional[Condition] = None,
        cond_gate: Optional[CondGate] = None,
        pool: Sequence[int] = (),
        mode: Optional[FanoutMode] = None,
        stage: Optional[Stage] = None,
    ) -> None:
        self.kind = kind
        self.qubits = tuple(int(q) for q in qubits)
        self.params = tuple(float(p) for p in params)
        self.cbits = tuple(int(c) for c in cbits)
        self.condition = condition
        self.cond_gate = cond_gate
        self.pool = tuple(int(p) for p in pool)
        self.mode = mode
        self.stage = stage
        self._validate()

    def _validate(self) -> None:
        kind = self.kind
        arity = len(self.qubits)

        if kind in SINGLE_QUBIT_KINDS and arity != 1:
            raise CircuitError(f"{kind.name} takes one qubit, got {self.qubits}.")
        if kind in _FIXED_ARITY and arity != _FIXED_ARITY[kind]:
            raise CircuitError(f"{kind.name} takes {_FIXED_ARITY[kind]} qubits, got {self.qubits}.")
        if kind in (GateKind.MCX, GateKind.OR_CX, GateKind.PAR_CX, GateKind.FANOUT) and arity < 2:
            raise CircuitError(f"{kind.name} needs at least one control and one target.")
        if kind in (GateKind.MCRY, GateKind.MCRZ) and arity < 1:
            raise CircuitError(f"{kind.name} needs a target.")

        if len(self.params) != PARAM_COUNTS.get(kind, 0):
            raise CircuitError(
                f"{kind.name} takes {PARAM_COUNTS.get(kind, 0)} parameters, got {self.params}."
            )

        wires = self.qubits + self.pool
        if len(set(wires)) != len(wires):
            raise CircuitError(f"Operands of {kind.name} are not pairwise distinct: {wires}.")
        if wires and min(wires) < 0:
            raise CircuitError(f"Negative wire index in {kind.name}: {wires}.")

        if kind == GateKind.MEASURE:
            if len(self.cbits) != 1 or self.cbits[0] < 0:
                raise CircuitError(f"MEASURE writes exactly one classical bit, got {self.cbits}.")
        elif self.cbits:
            raise CircuitError(f"{kind.name} does not write classical bits.")

        if kind == GateKind.COND:
            if self.condition is None or self.cond_gate is None:
                raise CircuitError("COND needs a condition and a gate.")
        elif self.condition is not None or self.cond_gate is not None:
            raise CircuitError(f"{kind.name} cannot carry a condition.")

        if kind in (GateKind.FANOUT, GateKind.PAR_CX):
            if self.mode is None:
                raise CircuitError(f"{kind.name} needs a fan-out mode.")
            if kind == GateKind.PAR_CX and self.mode not in (FanoutMode.SEQUENTIAL, FanoutMode.MAF):
                raise CircuitError(f"PAR_CX supports SEQUENTIAL and MAF modes, got {self.mode}.")
        elif self.mode is not None:
            raise CircuitError(f"{kind.name} does not take a mode.")

        if self.pool and kind not in COMPOSITE_KINDS:
            raise CircuitError(f"{kind.name} cannot borrow ancilla wires.")

    @property
    def is_native(self) -> bool:
        return self.kind in NATIVE_KINDS

    @property
    def wires(self) -> Tuple[int, ...]:
        """Every quantum wire the instruction touches, pool included."""
        return self.qubits + self.pool

    @property
    def controls(self) -> Tuple[int, ...]:
        if self.kind == GateKind.FANOUT:
            return self.qubits[:1]
        return self.qubits[:-1]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def targets(self) -> Tuple[int, ...]:
        if self.kind == GateKind.FANOUT:
            return self.qubits[1:]
        return self.qubits[-1:]

    def with_stage(self, stage: Optional[Stage]) -> "Instruction":
        return Instruction(
            self.kind,
            self.qubits,
            self.params,
            self.cbits,
            self.condition,
            self.cond_gate,
            self.pool,
            self.mode,
            stage,
        )

    def inverse(self) -> "Instruction":
        """The instruction undoing this one; measurement kinds have none."""
        kind = self.kind
        params = self.params
        mode = self.mode

        if kind in (GateKind.MEASURE, GateKind.COND, GateKind.ROUND_BARRIER):
            raise CircuitError(f"{kind.name} has no unitary inverse.")
        if kind == GateKind.T:
            kind = GateKind.TDG
        elif kind == GateKind.TDG:
            kind = GateKind.T
        elif kind in (GateKind.RY, GateKind.RZ, GateKind.MCRY, GateKind.MCRZ):
            params = (-params[0],)
        elif kind == GateKind.U1Q:
            theta, phi, lam = params
            params = (-theta, -lam, -phi)
        elif kind == GateKind.FANOUT:
            if mode == FanoutMode.TREE:
                mode = FanoutMode.UNTREE
            elif mode == FanoutMode.UNTREE:
                mode = FanoutMode.TREE
        elif kind not in _SELF_INVERSE:
            raise CircuitError(f"No inverse rule for {kind.name}.")

        return Instruction(kind, self.qubits, params, (), None, None, self.pool, mode, self.stage)

    def _key(self) -> tuple:
        return (
            self.kind,
            self.qubits,
            self.params,
            self.cbits,
            self.condition,
            self.cond_gate,
            self.pool,
            self.mode,
            self.stage,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instruction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        parts = [self.kind.name]
        if self.params:
            parts.append(f"params={self.params}")
        parts.append(f"qubits={self.qubits}")
        if self.cbits:
            parts.append(f"cbits={self.cbits}")
        if self.condition is not None:
            parts.append(f"if {self.condition!r} {self.cond_gate.name}")
        if self.pool:
            parts.append(f"pool={self.pool}")
        if self.mode is not None:
            parts.append(f"mode={self.mode.name}")
        return f"Instruction({', '.join(parts)})"


# Constructors for the instruction vocabulary.


def x(q: int) -> Instruction:
    return Instruction(GateKind.X, (q,))


def h(q: int) -> Instruction:
    return Instruction(GateKind.H, (q,))


def t(q: int) -> Instruction:
    return Instruction(GateKind.T, (q,))


def tdg(q: int) -> Instruction:
    return Instruction(GateKind.TDG, (q,))


def ry(theta: float, q: int) -> Instruction:
    return Instruction(GateKind.RY, (q,), (theta,))


def rz(theta: float, q: int) -> Instruction:
    return Instruction(GateKind.RZ, (q,), (theta,))


def u1q(theta: float, phi: float, lam: float, q: int) -> Instruction:
    return Instruction(GateKind.U1Q, (q,), (theta, phi, lam))


def idle(q: int) -> Instruction:
    """One layer of waiting on `q`; no effect on the state."""
    return Instruction(GateKind.IDLE, (q,))


def cx(control: int, target: int) -> Instruction:
    return Instruction(GateKind.CNOT, (control, target))


def cswap(control: int, t1: int, t2: int) -> Instruction:
    return Instruction(GateKind.CSWAP, (control, t1, t2))


def toffoli(c0: int, c1: int, target: int) -> Instruction:
    return Instruction(GateKind.TOFFOLI, (c0, c1, target))


def mcx(controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> Instruction:
    return Instruction(GateKind.MCX, tuple(controls) + (target,), pool=pool)


def mcry(theta: float, controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> Instruction:
    return Instruction(GateKind.MCRY, tuple(controls) + (target,), (theta,), pool=pool)


def mcrz(lam: float, controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> Instruction:
    return Instruction(GateKind.MCRZ, tuple(controls) + (target,), (lam,), pool=pool)


def fanout(
    control: int,
    targets: Sequence[int],
    mode: FanoutMode = FanoutMode.SEQUENTIAL,
    pool: Sequence[int] = (),
) -> Instruction:
    return Instruction(GateKind.FANOUT, (control,) + tuple(targets), pool=pool, mode=mode)


def or_cx(controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> Instruction:
    return Instruction(GateKind.OR_CX, tuple(controls) + (target,), pool=pool)


def par_cx(
    controls: Sequence[int],
    target: int,
    mode: FanoutMode = FanoutMode.SEQUENTIAL,
    pool: Sequence[int] = (),
) -> Instruction:
    return Instruction(GateKind.PAR_CX, tuple(controls) + (target,), pool=pool, mode=mode)


def measure(q: int, c: int) -> Instruction:
    return Instruction(GateKind.MEASURE, (q,), cbits=(c,))


def cond(cbits: Sequence[int], gate: CondGate, q: int, negated: bool = False) -> Instruction:
    return Instruction(
        GateKind.COND, (q,), condition=Condition(cbits, negated), cond_gate=gate
    )


def round_barrier() -> Instruction:
    return Instruction(GateKind.ROUND_BARRIER)


class Circuit:
    """
    Ordered instruction list over `num_qubits` wires and `num_cbits` classical bits.

    Appending checks operand ranges and that every COND only reads classical
    bits written by an earlier MEASURE, so the list is always a valid
    temporal order.

    Attributes:
        num_qubits (int): wire count.
        num_cbits (int): classical bit count.
        register_map (Dict[str, Tuple[int, int]]): named (start, length) spans.
    """

    num_qubits: int
    num_cbits: int
    register_map: Dict[str, Tuple[int, int]]

    def __init__(
        self,
        num_qubits: int,
        num_cbits: int = 0,
        instructions: Iterable[Instruction] = (),
        register_map: Optional[Dict[str, Tuple[int, int]]] = None,
    ) -> None:
        if num_qubits < 0 or num_cbits < 0:
            raise CircuitError("Wire and classical bit counts must be nonnegative.")
        self.num_qubits = num_qubits
        self.num_cbits = num_cbits
        self.register_map = {}
        self._instructions: List[Instruction] = []
        self._written = set()
        for name, (start, length) in (register_map or {}).items():
            self.add_register(name, start, length)
        self.extend(instructions)

    @property
    def instructions(self) -> Tuple[Instruction, ...]:
        return tuple(self._instructions)

    @property
    def native(self) -> bool:
        return all(instr.is_native for instr in self._instructions)

    def add_register(self, name: str, start: int, length: int) -> None:
        if start < 0 or length < 0 or start + length > self.num_qubits:
            raise CircuitError(f"Register {name} [{start}, {start + length}) is out of range.")
        for other, (o_start, o_length) in self.register_map.items():
            if start < o_start + o_length and o_start < start + length:
                raise CircuitError(f"Register {name} overlaps register {other}.")
        self.register_map[name] = (start, length)

    def register(self, name: str) -> Tuple[int, ...]:
        """Wire indices of a named register."""
        start, length = self.register_map[name]
        return tuple(range(start, start + length))

    def append(self, instr: Instruction) -> "Circuit":
        for q in instr.wires:
            if q >= self.num_qubits:
                raise CircuitError(f"Wire {q} out of range for {self.num_qubits} qubits in {instr!r}.")
        if instr.kind == GateKind.MEASURE:
            c = instr.cbits[0]
            if c >= self.num_cbits:
                raise CircuitError(f"Classical bit {c} out of range for {self.num_cbits} cbits.")
            self._written.add(c)
        elif instr.kind == GateKind.COND:
            for c in instr.condition.cbits:
                if c >= self.num_cbits or c not in self._written:
                    raise CircuitError(f"Condition reads c{c} before any MEASURE writes it.")
        self._instructions.append(instr)
        return self

    def extend(self, instructions: Iterable[Instruction]) -> "Circuit":
        for instr in instructions:
            self.append(instr)
        return self

    def copy(self) -> "Circuit":
        return Circuit(self.num_qubits, self.num_cbits, self._instructions, dict(self.register_map))

    def inverse(self) -> "Circuit":
        """Gate-reversed inverse; raises CircuitError on measurement kinds."""
        return Circuit(
            self.num_qubits,
            self.num_cbits,
            [instr.inverse() for instr in reversed(self._instructions)],
            dict(self.register_map),
        )

    def stage_slice(self, stage: Optional[Stage]) -> "Circuit":
        """Instructions carrying one stage tag, on the same wires and cbits."""
        circuit = Circuit(self.num_qubits, self.num_cbits, register_map=dict(self.register_map))
        # cbits of earlier stages are never read across stage boundaries
        circuit._written = set(range(self.num_cbits))
        circuit.extend(instr for instr in self._instructions if instr.stage == stage)
        return circuit

    def stages(self) -> Tuple[Optional[Stage], ...]:
        """Stage tags in order of first appearance."""
        seen: List[Optional[Stage]] = []
        for instr in self._instructions:
            if instr.stage not in seen:
                seen.append(instr.stage)
        return tuple(seen)

    def count_ops(self) -> Dict[GateKind, int]:
        counts: Dict[GateKind, int] = {}
        for instr in self._instructions:
            counts[instr.kind] = counts.get(instr.kind, 0) + 1
        return counts

    def __len__(self) -> int:
        return len(self._instructions)

    def __iter__(self) -> Iterator[Instruction]:
        return iter(self._instructions)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.num_qubits == other.num_qubits
            and self.num_cbits == other.num_cbits
            and self.register_map == other.register_map
            and self._instructions == other._instructions
        )

    def __repr__(self) -> str:
        return (
            f"Circuit(num_qubits={self.num_qubits}, num_cbits={self.num_cbits}, "
            f"instructions={len(self._instructions)})"
        )
