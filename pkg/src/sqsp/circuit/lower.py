"""
Lowering of composite instructions to the native gate set.
"""
from typing import Iterable
from typing import List
from typing import Set

from sqsp.circuit.ir import GateKind
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.errors import CircuitError
from sqsp.core.errors import SynthesisError
from sqsp.synth import fanout as fanout_synth
from sqsp.synth import gates as gate_synth


def _written_wires(instr: Instruction) -> Iterable[int]:
    """Wires whose value an instruction may change."""
    if instr.kind in (GateKind.CSWAP, GateKind.FANOUT):
        return instr.qubits[1:]
    if instr.kind == GateKind.ROUND_BARRIER:
        return ()
    return instr.qubits[-1:]


def _cbits_needed(instr: Instruction) -> int:
    if instr.kind == GateKind.FANOUT and instr.mode == FanoutMode.MAF:
        return fanout_synth.maf_fanout_cbits(len(instr.targets))
    if instr.kind == GateKind.PAR_CX and instr.mode == FanoutMode.MAF:
        return fanout_synth.maf_fanout_cbits(len(instr.controls))
    return 0


def expand(instr: Instruction, cbit_offset: int = 0) -> List[Instruction]:
    """
    Native expansion of one instruction; native instructions expand to themselves.

    :raises CircuitError: on malformed composite operands.
    :raises SynthesisError: when the instruction's pool is too small.
    """
    kind = instr.kind
    if instr.is_native:
        return [instr]

    q = instr.qubits
    if kind == GateKind.TOFFOLI:
        return gate_synth.synth_toffoli(*q)
    if kind == GateKind.CSWAP:
        return gate_synth.synth_cswap(*q)
    if kind == GateKind.MCX:
        return gate_synth.synth_mcx(instr.controls, instr.target, instr.pool)
    if kind == GateKind.MCRY:
        return gate_synth.synth_mcry(instr.params[0], instr.controls, instr.target, instr.pool)
    if kind == GateKind.MCRZ:
        return gate_synth.synth_mcrz(instr.params[0], instr.controls, instr.target, instr.pool)
    if kind == GateKind.OR_CX:
        return gate_synth.synth_or_cx(instr.controls, instr.target, instr.pool)
    if kind == GateKind.PAR_CX:
        return gate_synth.synth_parity_cx(instr.controls, instr.target, instr.mode, instr.pool, cbit_offset)
    if kind == GateKind.FANOUT:
        return fanout_synth.synth_fanout(instr.controls[0], instr.targets, instr.mode, instr.pool, cbit_offset)
    raise CircuitError(f"No lowering rule for {kind.name}.")


def lower(circuit: Circuit) -> Circuit:
    """
    Expand every composite instruction into native gates.

    New classical bits for measurement-based blocks are allocated after the
    circuit's existing ones. Stage tags and the register map are preserved.
    A circuit that is already native is returned as an equal copy.

    TREE fan-out is only accepted onto wires still in |0>: never written
    since the start of the circuit, or last cleared by an UNTREE.

    :raises CircuitError: on malformed composite operands.
    :raises SynthesisError: on a short pool or TREE onto a written wire.
    """
    if circuit.native:
        return circuit.copy()

    dirty: Set[int] = set()
    lowered: List[Instruction] = []
    num_cbits = circuit.num_cbits

    for instr in circuit:
        if instr.kind == GateKind.FANOUT and instr.mode == FanoutMode.TREE:
            stale = [q for q in instr.targets if q in dirty]
            if stale:
                raise SynthesisError(f"TREE fan-out onto wires {stale} that are not in |0>.")

        try:
            block = expand(instr, num_cbits)
        except (TypeError, IndexError) as err:
            raise CircuitError(f"Malformed operands for {instr!r}.") from err
        num_cbits += _cbits_needed(instr)
        lowered.extend(native.with_stage(instr.stage) for native in block)

        if instr.kind == GateKind.FANOUT and instr.mode == FanoutMode.UNTREE:
            dirty.difference_update(instr.targets)
        else:
            dirty.update(_written_wires(instr))

    return Circuit(circuit.num_qubits, num_cbits, lowered, dict(circuit.register_map))
