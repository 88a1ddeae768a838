"""
Permutation stage: sum_i a_i |i>|e_i> -> sum_i a_i |q_i>|e_i>.

Column j flips A(j) on the branches where bit j of the index differs from
bit j of q_i. With B one-hot, "B holds one of the set" is an OR over the
set, which equals its parity, so either controlled flip does the job.
"""
from typing import List
from typing import Sequence
from typing import Tuple

from sqsp.circuit import ir
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.constants import PermutationMode
from sqsp.core.utils import ceil_log2
from sqsp.core.utils import index_bits


def index_bit(i: int, j: int, height: int) -> int:
    """Bit j of i written MSB-first on `height` bits; 0 past the end."""
    if j >= height:
        return 0
    return index_bits(i, height)[j]


def column_sets(spec) -> List[Tuple[int, ...]]:
    """CQ per column j: the entries i whose index bit j differs from q_i(j)."""
    height = ceil_log2(spec.d)
    return [
        tuple(i for i in range(spec.d) if index_bit(i, j, height) != spec.bit(i, j))
        for j in range(spec.n)
    ]


def emit_permutation(
    spec,
    a: Sequence[int],
    b: Sequence[int],
    c: Sequence[int] = (),
    mode: PermutationMode = PermutationMode.ORCX,
) -> List[Instruction]:
    """
    Controlled flips of every A column, in column order.

    ORCX uses OR-controlled X with C as the AND-tree pool. PARCX_MAF uses
    parity-controlled X realized by measurement-based fan-out with pool
    C(0:|CQ|). Columns with an empty CQ emit nothing.
    """
    instructions: List[Instruction] = []
    for j, members in enumerate(column_sets(spec)):
        if not members:
            continue
        controls = [b[i] for i in members]
        if mode == PermutationMode.ORCX:
            instructions.append(ir.or_cx(controls, a[j], c))
        else:
            instructions.append(ir.par_cx(controls, a[j], FanoutMode.MAF, c[: len(controls)]))
    return instructions
