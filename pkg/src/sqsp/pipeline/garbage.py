"""
Garbage elimination: sum_i a_i |q_i>|e_i> -> sum_i a_i |q_i>|0_B>.

Three substeps:
1. record every branch node k of the bitstring tree into C pair
   (C(2k-2), C(2k-1)) as |10> (left turn), |01> (right turn) or |00>;
2. clear B(i) with one CNOT from the record of LB(i);
3. undo step 1 with its exact inverse.

Branches in one layer share the control A(j); copies of A(j) in D let
their swaps run side by side.
"""
from typing import List
from typing import Optional
from typing import Sequence

from sqsp.circuit import ir
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.constants import GarbageMode
from sqsp.core.errors import SynthesisError
from sqsp.pipeline.path_tree import LEFT
from sqsp.pipeline.path_tree import PathBST


def _record_wire(c: Sequence[int], k: int, side: int) -> int:
    """Wire of pair k set by a turn to `side`."""
    return c[2 * k - 2] if side == LEFT else c[2 * k - 1]


def copy_window(pbst: PathBST) -> int:
    """Width of the D window holding control copies in MAF mode."""
    widths = [pbst.b(j) for j in range(pbst.n) if pbst.b(j) > 1]
    return max(widths, default=0)


def emit_branch_records(
    pbst: PathBST,
    a: Sequence[int],
    c: Sequence[int],
    dreg: Sequence[int],
    mode: GarbageMode = GarbageMode.COPY,
) -> List[Instruction]:
    """
    Step 1: write f(q_i, k) into C for every branch k.

    COPY mode copies A(j) onto D(0:b(j)) with a doubling tree and removes
    the copies after the layer. MAF mode keeps a window D(0:H) of copies:
    the first copying layer fans A(j) out with measurement-based fan-out
    (pool D(H:2H)), later layers retarget the window from A(p) to A(j) by
    fanning out A(p) xor A(j). The last copies are left in place; the
    inverse in step 3 clears them. Layers with one branch use A(j) directly.

    :raises SynthesisError: if C or D is too small.
    """
    if len(c) < 2 * pbst.num_branches:
        raise SynthesisError(f"Recording {pbst.num_branches} branches needs {2 * pbst.num_branches} C wires.")
    window = copy_window(pbst)
    needed_d = 2 * window if mode == GarbageMode.MAF else window
    if len(dreg) < needed_d:
        raise SynthesisError(f"{mode.name} branch recording needs {needed_d} D wires, got {len(dreg)}.")

    instructions: List[Instruction] = []
    copied: Optional[int] = None
    for j in range(pbst.n):
        branches = pbst.by_layer[j]
        if not branches:
            continue

        for k in branches:
            if pbst.parent[k] is None:
                instructions.append(ir.x(c[2 * k - 2]))
            else:
                instructions.append(ir.cx(_record_wire(c, pbst.parent[k], pbst.side[k]), c[2 * k - 2]))

        count = len(branches)
        if count == 1:
            controls = [a[j]]
        elif mode == GarbageMode.COPY:
            controls = list(dreg[:count])
            instructions.append(ir.fanout(a[j], controls, FanoutMode.TREE))
        else:
            controls = list(dreg[:count])
            targets = list(dreg[:window])
            pool = dreg[window : 2 * window]
            if copied is None:
                instructions.append(ir.fanout(a[j], targets, FanoutMode.MAF, pool))
            else:
                instructions.append(ir.cx(a[j], a[copied]))
                instructions.append(ir.fanout(a[copied], targets, FanoutMode.MAF, pool))
                instructions.append(ir.cx(a[j], a[copied]))
            copied = j

        for control, k in zip(controls, branches):
            instructions.append(ir.cswap(control, c[2 * k - 2], c[2 * k - 1]))

        if count > 1 and mode == GarbageMode.COPY:
            instructions.append(ir.fanout(a[j], controls, FanoutMode.UNTREE))
    return instructions


def emit_onehot_clear(pbst: PathBST, b: Sequence[int], c: Sequence[int]) -> List[Instruction]:
    """Step 2: B(i) ^= record of q_i at its lowest branch."""
    return [
        ir.cx(_record_wire(c, pbst.lowest[i], pbst.lowest_side[i]), b[i])
        for i in range(pbst.d)
        if pbst.lowest[i] is not None
    ]


def emit_garbage_elim(
    pbst: PathBST,
    a: Sequence[int],
    b: Sequence[int],
    c: Sequence[int],
    dreg: Sequence[int],
    mode: GarbageMode = GarbageMode.COPY,
) -> List[Instruction]:
    """All three substeps; a single-entry tree emits nothing."""
    if pbst.num_branches == 0:
        return []
    record = emit_branch_records(pbst, a, c, dreg, mode)
    num_qubits = max(list(a) + list(b) + list(c) + list(dreg)) + 1
    undo = Circuit(num_qubits, 0, record).inverse()
    return record + emit_onehot_clear(pbst, b, c) + list(undo)
