"""
Fan-out generators: CNOT from one control onto m targets.

Modes:
- SEQUENTIAL: a CNOT chain, depth m.
- TREE: CNOT onto the first target, then doubling copies between targets,
  depth 1 + ceil(log2 m). Targets must start in |0>.
- UNTREE: TREE run backwards. Targets must hold copies of the control and
  are returned to |0>.
- MAF: constant-depth block with one measurement round and classical
  parity corrections, see `synth_fanout_maf`.
"""
from typing import List
from typing import Sequence

from sqsp.circuit import ir
from sqsp.circuit.ir import CondGate
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.errors import SynthesisError

MAF_FANOUT_DEPTH = 7


def maf_fanout_ancillas(m: int) -> int:
    """Clean ancillas consumed by the MAF block for m targets."""
    return m


def maf_fanout_cbits(m: int) -> int:
    """Classical bits written by the MAF block for m targets."""
    return m


def _tree_pairs(control: int, targets: Sequence[int]) -> List[Instruction]:
    instructions = [ir.cx(control, targets[0])]
    step = 1
    while step < len(targets):
        for source in range(step):
            if source + step < len(targets):
                instructions.append(ir.cx(targets[source], targets[source + step]))
        step *= 2
    return instructions


def synth_fanout_maf(
    control: int, targets: Sequence[int], pool: Sequence[int], cbit_offset: int = 0
) -> List[Instruction]:
    """
    Measurement-assisted fan-out.

    Ancillas form floor(m/2) Bell pairs (u, v) plus a lone u when m is odd;
    each node copies its value onto its targets. The nodes are chained to the
    control by CNOTs, so measuring every u yields the parities between
    neighbouring nodes. A prefix XOR of those outcomes tells each target
    whether it received the control or its complement. Measuring v in the X
    basis removes the pair entanglement at the cost of a Z on the control,
    fixed by the parity of the v outcomes. Every ancilla is then reset by a
    COND X on its own outcome.

    Layers, for every m:

        1  H on each u
        2  CNOT(u, v); a lone u copies onto its target
        3  pairs copy onto their targets
        4  links CNOT(control, u_0), CNOT(v_i, u_{i+1})
        5  measure u, H on v
        6  measure v
        7  corrections and resets, after the round barrier

    Blocks with one or two targets have no link between nodes; their
    ancillas idle for the missing layers, so every block spans
    `MAF_FANOUT_DEPTH` layers.

    Classical bits cbit_offset .. cbit_offset+m-1 are written, u outcomes
    before v outcomes within each node.

    :raises SynthesisError: if the pool holds fewer than m wires.
    """
    targets = tuple(targets)
    m = len(targets)
    if m == 0:
        raise SynthesisError("Fan-out needs at least one target.")
    if len(pool) < maf_fanout_ancillas(m):
        raise SynthesisError(f"MAF fan-out onto {m} targets needs {m} pool wires, got {len(pool)}.")

    # node = (u, v or None, served targets, u cbit, v cbit or None)
    nodes = []
    for i in range(m // 2):
        nodes.append(
            (pool[2 * i], pool[2 * i + 1], targets[2 * i : 2 * i + 2], cbit_offset + 2 * i, cbit_offset + 2 * i + 1)
        )
    if m % 2:
        nodes.append((pool[m - 1], None, targets[m - 1 :], cbit_offset + m - 1, None))

    instructions: List[Instruction] = [ir.h(u) for u, *_ in nodes]

    if m == 1:
        instructions.append(ir.idle(nodes[0][0]))

    for u, v, served, *_ in nodes:
        if v is not None:
            instructions.append(ir.cx(u, v))
        else:
            instructions.append(ir.cx(u, served[0]))

    for u, v, served, *_ in nodes:
        if v is not None:
            instructions.append(ir.cx(u, served[0]))
            instructions.append(ir.cx(v, served[1]))

    previous = control
    for u, v, *_ in nodes:
        instructions.append(ir.cx(previous, u))
        previous = v
    if m <= 2:
        instructions.append(ir.idle(pool[m - 1]))

    for u, v, _, r, _ in nodes:
        instructions.append(ir.measure(u, r))
        if v is not None:
            instructions.append(ir.h(v))
    for _, v, _, _, o in nodes:
        if v is not None:
            instructions.append(ir.measure(v, o))

    instructions.append(ir.round_barrier())

    prefix: List[int] = []
    for _, _, served, r, _ in nodes:
        prefix.append(r)
        for q in served:
            instructions.append(ir.cond(prefix, CondGate.X, q))
    phase_bits = [o for *_, o in nodes if o is not None]
    if phase_bits:
        instructions.append(ir.cond(phase_bits, CondGate.Z, control))
    for u, v, _, r, o in nodes:
        instructions.append(ir.cond([r], CondGate.X, u))
        if v is not None:
            instructions.append(ir.cond([o], CondGate.X, v))
    return instructions


def synth_fanout(
    control: int,
    targets: Sequence[int],
    mode: FanoutMode = FanoutMode.SEQUENTIAL,
    pool: Sequence[int] = (),
    cbit_offset: int = 0,
) -> List[Instruction]:
    """
    Copy `control` onto every target by CNOT in the requested mode.

    Target freshness for TREE and the copy precondition of UNTREE are
    checked by `sqsp.circuit.lower`, which sees the whole circuit.

    :raises SynthesisError: on an empty target list or a short MAF pool.
    """
    targets = tuple(targets)
    if not targets:
        raise SynthesisError("Fan-out needs at least one target.")
    if mode == FanoutMode.SEQUENTIAL:
        return [ir.cx(control, q) for q in targets]
    if mode == FanoutMode.TREE:
        return _tree_pairs(control, targets)
    if mode == FanoutMode.UNTREE:
        return list(reversed(_tree_pairs(control, targets)))
    if mode == FanoutMode.MAF:
        return synth_fanout_maf(control, targets, pool, cbit_offset)
    raise SynthesisError(f"Unknown fan-out mode {mode!r}.")
