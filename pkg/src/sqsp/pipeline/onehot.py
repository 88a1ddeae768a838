"""
One-hot encoding: sum_i a_i |i>|0_B> -> sum_i a_i |i>|e_i>.

Index bit j (qubit A(j)) splits every occupied B block of width 2^(h-j)
in half by a controlled swap, so qubit A(j) controls 2^j swaps with stride
2^(h-j-1).
"""
from typing import List
from typing import Sequence

from sqsp.circuit import ir
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import FanoutMode
from sqsp.core.constants import OneHotMode
from sqsp.core.errors import SynthesisError


def _swap_pairs(height: int, j: int, b: Sequence[int]):
    width = 2 ** (height - j)
    for i in range(2**j):
        yield i, b[i * width], b[i * width + width // 2]


def emit_onehot(
    a: Sequence[int],
    b: Sequence[int],
    c: Sequence[int] = (),
    mode: OneHotMode = OneHotMode.COPY,
) -> List[Instruction]:
    """
    One-hot encode the index held on wires `a` into register `b`.

    BASELINE controls every swap of layer j by A(j) directly. COPY first
    copies A(j) onto C(0:2^j) with a doubling tree and removes the copies
    afterwards. MAF copies with measurement-based fan-out, borrowing
    C(2^j:2^(j+1)) as its pool.

    :raises SynthesisError: when B or C is too small.
    """
    height = len(a)
    if len(b) < 2**height:
        raise SynthesisError(f"One-hot encoding of {height} bits needs {2 ** height} B wires, got {len(b)}.")
    if height and mode != OneHotMode.BASELINE:
        needed = 2 ** (height - 1) if mode == OneHotMode.COPY else 2**height
        if len(c) < needed:
            raise SynthesisError(f"{mode.name} one-hot encoding needs {needed} C wires, got {len(c)}.")

    instructions: List[Instruction] = [ir.x(b[0])]
    for j in range(height):
        copies = 2**j
        if mode == OneHotMode.BASELINE:
            controls = [a[j]] * copies
        else:
            controls = list(c[:copies])

        if mode == OneHotMode.COPY:
            copy = ir.fanout(a[j], controls, FanoutMode.TREE)
            uncopy = ir.fanout(a[j], controls, FanoutMode.UNTREE)
        elif mode == OneHotMode.MAF:
            pool = c[copies : 2 * copies]
            copy = uncopy = ir.fanout(a[j], controls, FanoutMode.MAF, pool)
        else:
            copy = uncopy = None

        if copy is not None:
            instructions.append(copy)
        for i, first, second in _swap_pairs(height, j, b):
            instructions.append(ir.cswap(controls[i], first, second))
        if uncopy is not None:
            instructions.append(uncopy)
    return instructions
