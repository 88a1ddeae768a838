"""
Native decompositions of the controlled blocks used by the compiler.

Every generator returns a list of native `Instruction`s (single-qubit gates
and CNOT, plus MEASURE/COND/ROUND_BARRIER for measurement-based variants).
Pool wires handed to a generator must be clean |0> ancillas and are
returned to |0>.
"""
from typing import List
from typing import Sequence

from sqsp.circuit import ir
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.errors import SynthesisError
from sqsp.synth.fanout import synth_fanout


def mcx_pool_size(k: int) -> int:
    """Clean ancillas `synth_mcx` needs for k controls."""
    return max(0, k - 2)


def synth_toffoli(c0: int, c1: int, target: int, inverse: bool = False) -> List[Instruction]:
    """
    Exact 15-gate Toffoli over {H, T, Tdg, CNOT}, depth 11.

    :param inverse: emit the mirrored sequence (reversed order, T and Tdg
        exchanged). It implements the same gate with a different layering.
    """
    sequence = [
        ir.h(target),
        ir.cx(c1, target),
        ir.tdg(target),
        ir.cx(c0, target),
        ir.t(target),
        ir.cx(c1, target),
        ir.tdg(target),
        ir.cx(c0, target),
        ir.t(c1),
        ir.t(target),
        ir.cx(c0, c1),
        ir.h(target),
        ir.t(c0),
        ir.tdg(c1),
        ir.cx(c0, c1),
    ]
    if inverse:
        return [instr.inverse() for instr in reversed(sequence)]
    return sequence


def synth_relative_toffoli(a: int, b: int, target: int) -> List[Instruction]:
    """
    Toffoli up to a diagonal phase on (a, b, target): 3 CNOTs and 6 single-qubit gates.

    The sequence is its own inverse, and the phase cancels when it is undone
    after gates that keep a, b and target in their computational values.
    `b` is read twice and `a` once, so `a` may arrive two layers later.
    """
    return [
        ir.h(target),
        ir.t(target),
        ir.cx(b, target),
        ir.tdg(target),
        ir.cx(a, target),
        ir.t(target),
        ir.cx(b, target),
        ir.tdg(target),
        ir.h(target),
    ]


def synth_cswap(control: int, a: int, b: int) -> List[Instruction]:
    """Fredkin gate as CNOT(b, a), Toffoli(control, a -> b), CNOT(b, a)."""
    return [ir.cx(b, a)] + synth_toffoli(control, a, b) + [ir.cx(b, a)]


def synth_mcx(controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> List[Instruction]:
    """
    Multi-controlled X as a balanced AND-tree of Toffolis.

    Controls are paired into pool wires level by level until two partial
    products remain, an exact Toffoli writes the target, then every pool
    wire is uncomputed in reverse order. Pool products are written with
    `synth_relative_toffoli`; their phases cancel between the two passes.

    Native size is 18k - 21 for k >= 3, depth at most 14*ceil(log2 k).

    :raises SynthesisError: with no controls or fewer than k - 2 pool wires.
    """
    controls = tuple(controls)
    k = len(controls)
    if k == 0:
        raise SynthesisError("MCX needs at least one control.")
    if k == 1:
        return [ir.cx(controls[0], target)]
    if k == 2:
        return synth_toffoli(controls[0], controls[1], target)

    needed = mcx_pool_size(k)
    if len(pool) < needed:
        raise SynthesisError(f"MCX with {k} controls needs {needed} pool wires, got {len(pool)}.")

    compute = []
    free = list(pool[:needed])
    level = list(controls)
    while len(level) > 2:
        next_level = []
        for left, right in zip(level[0::2], level[1::2]):
            product = free.pop(0)
            compute.append((left, right, product))
            next_level.append(product)
        if len(level) % 2:
            next_level.append(level[-1])
        level = next_level

    instructions: List[Instruction] = []
    # a carried wire lands on the right and is the earlier of the pair
    for left, right, product in compute:
        instructions.extend(synth_relative_toffoli(left, right, product))
    instructions.extend(synth_toffoli(level[0], level[1], target))
    for left, right, product in reversed(compute):
        instructions.extend(synth_relative_toffoli(left, right, product))
    return instructions


def _controlled_rotation(
    rotation, angle: float, controls: Sequence[int], target: int, pool: Sequence[int]
) -> List[Instruction]:
    if not controls:
        return [rotation(angle, target)]
    flip = synth_mcx(controls, target, pool)
    return [rotation(angle / 2.0, target)] + flip + [rotation(-angle / 2.0, target)] + flip


def synth_mcry(theta: float, controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> List[Instruction]:
    """RY(theta) on `target` iff every control is 1; a bare RY with no controls."""
    return _controlled_rotation(ir.ry, theta, tuple(controls), target, pool)


def synth_mcrz(lam: float, controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> List[Instruction]:
    """RZ(lam) on `target` iff every control is 1."""
    return _controlled_rotation(ir.rz, lam, tuple(controls), target, pool)


def synth_or_cx(controls: Sequence[int], target: int, pool: Sequence[int] = ()) -> List[Instruction]:
    """Flip `target` iff at least one control is 1."""
    controls = tuple(controls)
    if not controls:
        raise SynthesisError("OR_CX needs at least one control.")
    negate = [ir.x(c) for c in controls]
    return negate + synth_mcx(controls, target, pool) + negate + [ir.x(target)]


def synth_parity_cx(
    controls: Sequence[int],
    target: int,
    mode: FanoutMode = FanoutMode.SEQUENTIAL,
    pool: Sequence[int] = (),
    cbit_offset: int = 0,
) -> List[Instruction]:
    """
    Flip `target` iff the XOR of the controls is 1.

    SEQUENTIAL is a CNOT chain. MAF conjugates the target and every control
    with H around a measurement-based fan-out from the target onto the
    controls, which needs one pool wire and one classical bit per control.

    :raises SynthesisError: on an unsupported mode or a short pool.
    """
    controls = tuple(controls)
    if not controls:
        raise SynthesisError("PAR_CX needs at least one control.")
    if mode == FanoutMode.SEQUENTIAL:
        return [ir.cx(c, target) for c in controls]
    if mode != FanoutMode.MAF:
        raise SynthesisError(f"PAR_CX does not support {mode.name} mode.")

    wires = (target,) + controls
    hadamards = [ir.h(q) for q in wires]
    return hadamards + synth_fanout(target, controls, FanoutMode.MAF, pool, cbit_offset) + hadamards
