"""
Amplitude loading by a binary tree of controlled rotations.

The tree over d leaves (padded with zeros to 2^h, h = ceil(log2 d)) stores
at node (i, k) the norm x_{i,k} of the amplitudes below it, so that
x_{i,k}^2 = x_{i+1,2k}^2 + x_{i+1,2k+1}^2 and the root is 1.

Layer i of the circuit rotates qubit i by RY(theta_{i,k}) with
theta_{i,k} = 2 arccos(x_{i+1,2k} / x_{i,k}), controlled on the first i
qubits holding pattern k. Complex amplitudes are handled by a phase per
node: a node carries the mean of its children's phases, and an RZ of the
children's phase difference splits it again. The root phase is global and
is dropped.
"""
from typing import List
from typing import Optional
from typing import Sequence

import numpy as np

from sqsp.circuit import ir
from sqsp.circuit.ir import Instruction
from sqsp.core.constants import ZERO_AMPLITUDE
from sqsp.core.utils import ceil_log2
from sqsp.core.utils import index_bits


class AmplitudeBST:
    """
    Magnitude and phase tree of an amplitude vector.

    Attributes:
        height (int): number of rotation layers, ceil(log2 d).
        magnitudes (List[np.ndarray]): x_{i,k}, layer i holds 2**i values.
        phases (List[np.ndarray]): node phases, same shape as `magnitudes`.
        thetas (List[np.ndarray]): RY angles, layer i < height holds 2**i values.
        lambdas (List[np.ndarray]): RZ angles splitting each node's phase.
    """

    height: int
    magnitudes: List[np.ndarray]
    phases: List[np.ndarray]
    thetas: List[np.ndarray]
    lambdas: List[np.ndarray]

    def __init__(
        self,
        height: int,
        magnitudes: List[np.ndarray],
        phases: List[np.ndarray],
        thetas: List[np.ndarray],
        lambdas: List[np.ndarray],
    ) -> None:
        self.height = height
        self.magnitudes = magnitudes
        self.phases = phases
        self.thetas = thetas
        self.lambdas = lambdas

    def x(self, i: int, k: int) -> float:
        return float(self.magnitudes[i][k])

    def theta(self, i: int, k: int) -> float:
        return float(self.thetas[i][k])

    def lam(self, i: int, k: int) -> float:
        return float(self.lambdas[i][k])

    def __repr__(self) -> str:
        return f"AmplitudeBST(height={self.height})"


def build_amplitude_bst(amplitudes: Sequence[complex]) -> AmplitudeBST:
    """
    Build the tree for amplitudes alpha_0..alpha_{d-1}, assumed normalized.

    Nodes with x below 1e-14 get theta = 0; a zero child inherits its
    sibling's phase so it never asks for a phase correction.
    """
    leaves = np.asarray(amplitudes, dtype=complex).reshape(-1)
    height = ceil_log2(max(1, leaves.size))
    padded = np.zeros(2**height, dtype=complex)
    padded[: leaves.size] = leaves

    magnitudes = [np.abs(padded)]
    phases = [np.where(np.abs(padded) < ZERO_AMPLITUDE, 0.0, np.angle(padded))]
    thetas: List[np.ndarray] = []
    lambdas: List[np.ndarray] = []

    for _ in range(height):
        child_x = magnitudes[0]
        child_phase = phases[0].copy()
        left_x, right_x = child_x[0::2], child_x[1::2]
        left_phase, right_phase = child_phase[0::2], child_phase[1::2]
        left_phase = np.where(left_x < ZERO_AMPLITUDE, right_phase, left_phase)
        right_phase = np.where(right_x < ZERO_AMPLITUDE, left_phase, right_phase)

        node_x = np.sqrt(left_x**2 + right_x**2)
        ratio = np.divide(left_x, node_x, out=np.ones_like(node_x), where=node_x >= ZERO_AMPLITUDE)
        theta = 2.0 * np.arccos(np.clip(ratio, -1.0, 1.0))
        theta = np.where(node_x < ZERO_AMPLITUDE, 0.0, theta)
        lam = np.where(node_x < ZERO_AMPLITUDE, 0.0, right_phase - left_phase)

        magnitudes.insert(0, node_x)
        phases.insert(0, (left_phase + right_phase) / 2.0)
        thetas.insert(0, theta)
        lambdas.insert(0, lam)

    return AmplitudeBST(height, magnitudes, phases, thetas, lambdas)


def emit_grover_rudolph(
    bst: AmplitudeBST,
    qubits: Sequence[int],
    pool: Sequence[int] = (),
    layers: Optional[int] = None,
) -> List[Instruction]:
    """
    Rotation layers loading the tree onto `qubits` (qubit i = layer i).

    Instructions come layer-major, pattern-minor. Each rotation is an MCRY
    (then an MCRZ for a nonzero phase split) on the first i qubits, with X
    on the controls whose pattern bit is 0. Nodes with x below 1e-14 and
    nodes with nothing to rotate emit nothing.

    :param pool: clean wires the multi-controlled rotations may borrow.
    :param layers: emit only the first `layers` layers.
    """
    height = bst.height if layers is None else min(layers, bst.height)
    if len(qubits) < bst.height:
        raise ValueError(f"Loading {bst.height} layers needs {bst.height} qubits, got {len(qubits)}.")

    instructions: List[Instruction] = []
    for i in range(height):
        controls = tuple(qubits[:i])
        target = qubits[i]
        for k in range(2**i):
            theta, lam = bst.theta(i, k), bst.lam(i, k)
            if bst.x(i, k) < ZERO_AMPLITUDE or (theta == 0.0 and lam == 0.0):
                continue
            negated = [q for q, bit in zip(controls, index_bits(k, i)) if bit == 0]
            decoration = [ir.x(q) for q in negated]
            body = []
            if theta != 0.0:
                body.append(ir.mcry(theta, controls, target, pool))
            if lam != 0.0:
                body.append(ir.mcrz(lam, controls, target, pool))
            instructions.extend(decoration + body + decoration)
    return instructions
