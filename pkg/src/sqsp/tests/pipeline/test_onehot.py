# pylint: disable=missing-function-docstring, missing-class-docstring
import math

import numpy as np
import pytest
from sqsp.circuit import ir
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import GateKind
from sqsp.circuit.lower import lower
from sqsp.circuit.metrics import metrics
from sqsp.core.constants import OneHotMode
from sqsp.core.errors import SynthesisError
from sqsp.pipeline.onehot import emit_onehot
from sqsp.sim.simulator import Simulator


def _wires(height):
    a = list(range(height))
    b = list(range(height, height + 2**height))
    c = list(range(height + 2**height, height + 2 ** (height + 1)))
    return a, b, c


def _expected(height):
    """Uniform superposition of |i>_A |e_i>_B with C clean."""
    num_qubits = height + 2 ** (height + 1)
    vector = np.zeros(2**num_qubits, dtype=complex)
    for i in range(2**height):
        bits = format(i, f"0{height}b") + "".join("1" if k == i else "0" for k in range(2**height))
        bits += "0" * 2**height
        vector[int(bits, 2)] = 1.0 / math.sqrt(2**height)
    return vector


def _circuit(height, mode):
    a, b, c = _wires(height)
    circuit = Circuit(height + 2 ** (height + 1), instructions=[ir.h(q) for q in a])
    circuit.extend(emit_onehot(a, b, c, mode))
    return lower(circuit)


class TestOneHot:
    @pytest.mark.parametrize("mode", [OneHotMode.BASELINE, OneHotMode.COPY])
    @pytest.mark.parametrize("height", [1, 2, 3])
    def test_unitary_modes(self, mode, height):
        final = Simulator().statevector(_circuit(height, mode)).amplitudes
        assert math.isclose(abs(np.vdot(_expected(height), final)) ** 2, 1.0, abs_tol=1e-10)

    @pytest.mark.parametrize("height", [1, 2])
    def test_maf_every_branch(self, height):
        circuit = _circuit(height, OneHotMode.MAF)
        expected = _expected(height)
        for result in Simulator().enumerate_branches(circuit):
            overlap = abs(np.vdot(expected, result.final_state.amplitudes)) ** 2
            assert math.isclose(overlap, 1.0, abs_tol=1e-10)

    def test_swap_count(self):
        a, b, c = _wires(3)
        instructions = emit_onehot(a, b, c, OneHotMode.BASELINE)
        assert instructions[0] == ir.x(b[0])
        assert sum(1 for instr in instructions if instr.kind == GateKind.CSWAP) == 7

    def test_layer_controls(self):
        a, b, c = _wires(2)
        swaps = [instr for instr in emit_onehot(a, b, c, OneHotMode.BASELINE) if instr.kind == GateKind.CSWAP]
        assert swaps[0].qubits == (a[0], b[0], b[2])
        assert swaps[1].qubits == (a[1], b[0], b[1])
        assert swaps[2].qubits == (a[1], b[2], b[3])

    def test_maf_rounds(self):
        circuit = _circuit(3, OneHotMode.MAF)
        assert metrics(circuit).maf_rounds == 2 * 3

    def test_copies_shorten_depth(self):
        baseline = metrics(_circuit(3, OneHotMode.BASELINE)).quantum_depth
        copied = metrics(_circuit(3, OneHotMode.COPY)).quantum_depth
        assert copied < baseline

    def test_zero_height(self):
        assert emit_onehot([], [5], [], OneHotMode.COPY) == [ir.x(5)]

    def test_small_registers(self):
        a, b, c = _wires(2)
        with pytest.raises(SynthesisError):
            emit_onehot(a, b[:3], c, OneHotMode.BASELINE)
        with pytest.raises(SynthesisError):
            emit_onehot(a, b, c[:1], OneHotMode.COPY)
        with pytest.raises(SynthesisError):
            emit_onehot(a, b, c[:3], OneHotMode.MAF)
