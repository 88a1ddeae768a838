"""
End-to-end sparse state preparation.

    |0>_A |0>_B |0>_C |0>_D
      -- amplitude loading on A(0:h) -->   sum_i a_i |i>
      -- one-hot encoding into B      -->   sum_i a_i |i>|e_i>
      -- permutation of A columns    -->   sum_i a_i |q_i>|e_i>
      -- garbage elimination         -->   sum_i a_i |q_i>

with h = ceil(log2 d). A single-entry state skips straight to X gates on A.
"""
from typing import List
from typing import Optional

from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import Instruction
from sqsp.circuit.lower import lower
from sqsp.circuit import ir
from sqsp.core.constants import GarbageMode
from sqsp.core.constants import Mode
from sqsp.core.constants import OneHotMode
from sqsp.core.constants import PermutationMode
from sqsp.core.constants import Stage
from sqsp.gqsp.grover_rudolph import build_amplitude_bst
from sqsp.gqsp.grover_rudolph import emit_grover_rudolph
from sqsp.pipeline.garbage import emit_garbage_elim
from sqsp.pipeline.layout import RegisterLayout
from sqsp.pipeline.onehot import emit_onehot
from sqsp.pipeline.path_tree import build_path_bst
from sqsp.pipeline.permutation import emit_permutation
from sqsp.state.model import SparseStateSpec


def _tag(instructions: List[Instruction], stage: Stage) -> List[Instruction]:
    return [instr.with_stage(stage) for instr in instructions]


def build_sqsp(
    spec: SparseStateSpec,
    mode: Mode = Mode.UNITARY,
    onehot_mode: Optional[OneHotMode] = None,
) -> Circuit:
    """
    Stage-tagged circuit with composite instructions, before lowering.

    In MAF mode a ROUND_BARRIER closes every stage but the last, tagged
    with the stage it closes.

    :param onehot_mode: BASELINE or COPY in unitary mode (default COPY);
        MAF mode always uses measurement-based copies.
    :raises ValueError: when `onehot_mode` does not fit `mode`.
    """
    layout = RegisterLayout.for_spec(spec)
    circuit = Circuit(layout.num_qubits, 0, register_map=layout.spans)
    a, b, c, dreg = layout.a, layout.b, layout.c, layout.dreg

    if spec.d == 1:
        flips = [ir.x(a[j]) for j in range(spec.n) if spec.bit(0, j)]
        return circuit.extend(_tag(flips, Stage.PERMUTATION))

    if mode == Mode.MAF:
        if onehot_mode not in (None, OneHotMode.MAF):
            raise ValueError(f"MAF compilation cannot use {onehot_mode.name} one-hot encoding.")
        onehot_mode = OneHotMode.MAF
        permutation_mode = PermutationMode.PARCX_MAF
        garbage_mode = GarbageMode.MAF
    else:
        if onehot_mode == OneHotMode.MAF:
            raise ValueError("Unitary compilation cannot use MAF one-hot encoding.")
        onehot_mode = onehot_mode or OneHotMode.COPY
        permutation_mode = PermutationMode.ORCX
        garbage_mode = GarbageMode.COPY

    index_wires = a[: layout.height]
    bst = build_amplitude_bst(spec.amplitudes)
    pbst = build_path_bst(spec)
    stages = [
        (Stage.GQSP, emit_grover_rudolph(bst, index_wires, pool=c)),
        (Stage.ONEHOT, emit_onehot(index_wires, b, c, onehot_mode)),
        (Stage.PERMUTATION, emit_permutation(spec, a, b, c, permutation_mode)),
        (Stage.GARBAGE, emit_garbage_elim(pbst, a, b, c, dreg, garbage_mode)),
    ]
    for position, (stage, instructions) in enumerate(stages):
        if mode == Mode.MAF and position < len(stages) - 1:
            # each MAF stage closes with its own round
            instructions = instructions + [ir.round_barrier()]
        circuit.extend(_tag(instructions, stage))
    return circuit


def compile_sqsp(
    spec: SparseStateSpec,
    mode: Mode = Mode.UNITARY,
    onehot_mode: Optional[OneHotMode] = None,
) -> Circuit:
    """
    Native circuit preparing `spec` on register A from |0...0>, with every
    ancilla returned to |0>.

    The register map names A, B, C and D; every instruction carries its
    stage tag.
    """
    return lower(build_sqsp(spec, mode, onehot_mode))
