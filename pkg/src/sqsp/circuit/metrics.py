"""
Resource metrics of native circuits by ASAP scheduling.
"""
import json
from typing import Dict
from typing import List
from typing import Optional

from sqsp.circuit.ir import GateKind
from sqsp.circuit.ir import SINGLE_QUBIT_KINDS
from sqsp.circuit.ir import Circuit
from sqsp.core.errors import CircuitError


class Metrics:
    """
    Size and depth figures of a native circuit.

    Attributes:
        size (int): single-qubit gates plus CNOTs; IDLE, MEASURE and COND excluded.
        quantum_depth (int): ASAP layers over gates, MEASUREs and CONDs.
        classical_depth_bound (int): deepest XOR tree over all COND conditions.
        ancilla (int): wires beyond register A.
        maf_rounds (int): ROUND_BARRIER count.
        per_stage (Dict[str, Metrics]): the same figures per stage tag.
    """

    size: int
    quantum_depth: int
    classical_depth_bound: int
    ancilla: int
    maf_rounds: int
    per_stage: Dict[str, "Metrics"]

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        size: int = 0,
        quantum_depth: int = 0,
        classical_depth_bound: int = 0,
        ancilla: int = 0,
        maf_rounds: int = 0,
        per_stage: Optional[Dict[str, "Metrics"]] = None,
    ) -> None:
        self.size = size
        self.quantum_depth = quantum_depth
        self.classical_depth_bound = classical_depth_bound
        self.ancilla = ancilla
        self.maf_rounds = maf_rounds
        self.per_stage = per_stage or {}

    def _serialize(self) -> dict:
        data = {
            "size": self.size,
            "quantum_depth": self.quantum_depth,
            "classical_depth_bound": self.classical_depth_bound,
            "ancilla": self.ancilla,
            "maf_rounds": self.maf_rounds,
        }
        if self.per_stage:
            data["per_stage"] = {name: m._serialize() for name, m in self.per_stage.items()}
        return data

    def to_json(self) -> str:
        return json.dumps(self._serialize(), indent=2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Metrics):
            return NotImplemented
        return self._serialize() == other._serialize()

    def __repr__(self) -> str:
        return (
            f"Metrics(size={self.size}, quantum_depth={self.quantum_depth}, "
            f"classical_depth_bound={self.classical_depth_bound}, ancilla={self.ancilla}, "
            f"maf_rounds={self.maf_rounds})"
        )


def _schedule(circuit: Circuit) -> Metrics:
    wire_level: List[int] = [0] * circuit.num_qubits
    cbit_level: List[int] = [0] * circuit.num_cbits
    size = 0
    rounds = 0
    classical = 0

    for instr in circuit:
        kind = instr.kind
        if kind == GateKind.ROUND_BARRIER:
            rounds += 1
            top = max(wire_level, default=0)
            wire_level = [top] * circuit.num_qubits
            continue

        level = max(wire_level[q] for q in instr.qubits) + 1
        if kind == GateKind.COND:
            level = max(level, max(cbit_level[c] for c in instr.condition.cbits) + 1)
            classical = max(classical, instr.condition.xor_depth)
        elif kind == GateKind.MEASURE:
            cbit_level[instr.cbits[0]] = level
        elif kind == GateKind.CNOT or (kind in SINGLE_QUBIT_KINDS and kind != GateKind.IDLE):
            size += 1
        for q in instr.qubits:
            wire_level[q] = level

    return Metrics(size, max(wire_level, default=0), classical, 0, rounds)


def metrics(circuit: Circuit) -> Metrics:
    """
    ASAP metrics of a native circuit, with a per-stage breakdown.

    Each instruction sits one layer after the latest of its wires. A COND
    also waits for the measurements writing the bits it reads, and a
    ROUND_BARRIER lifts every wire to the current maximum.

    :raises CircuitError: if the circuit holds composite instructions.
    """
    if not circuit.native:
        raise CircuitError("Metrics need a native circuit; lower it first.")

    if "A" in circuit.register_map:
        ancilla = circuit.num_qubits - circuit.register_map["A"][1]
    else:
        ancilla = 0

    total = _schedule(circuit)
    total.ancilla = ancilla
    for stage in circuit.stages():
        if stage is None:
            continue
        part = _schedule(circuit.stage_slice(stage))
        part.ancilla = ancilla
        total.per_stage[stage.value] = part
    return total
