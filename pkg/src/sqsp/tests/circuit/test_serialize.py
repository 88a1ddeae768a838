# pylint: disable=missing-function-docstring, missing-class-docstring
import math

import pytest
from sqsp.circuit import ir
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import CondGate
from sqsp.circuit.ir import GateKind
from sqsp.circuit.serialize import format_instruction
from sqsp.circuit.serialize import parse_circuit
from sqsp.circuit.serialize import parse_instruction
from sqsp.circuit.serialize import serialize
from sqsp.core.constants import FanoutMode
from sqsp.core.constants import Stage
from sqsp.core.errors import CircuitParseError

DOCUMENT = """qubits 5
cbits 1
# register: A 0 2
# stage: onehot
h q0
ry(0.5) q1
cx q0 q1
mcx q0 q1 q2 q3 pool q4
fanout.maf q0 q1 q2 pool q3 q4

# a free comment
measure q0 -> c0
round
# stage: none
cond !xor(c0) z q1
"""


class TestFormat:
    @pytest.mark.parametrize(
        "instr, line",
        [
            (ir.h(3), "h q3"),
            (ir.idle(2), "id q2"),
            (ir.rz(-0.25, 0), "rz(-0.25) q0"),
            (ir.u1q(0.1, 0.2, 0.3, 1), "u(0.1,0.2,0.3) q1"),
            (ir.toffoli(0, 1, 2), "ccx q0 q1 q2"),
            (ir.par_cx([0, 1], 2, FanoutMode.SEQUENTIAL), "parcx.seq q0 q1 q2"),
            (ir.or_cx([0, 1, 2], 3, pool=[4]), "orcx q0 q1 q2 q3 pool q4"),
            (ir.measure(2, 1), "measure q2 -> c1"),
            (ir.cond([0, 3], CondGate.X, 4), "cond xor(c0,c3) x q4"),
            (ir.round_barrier(), "round"),
        ],
    )
    def test_lines(self, instr, line):
        assert format_instruction(instr) == line
        assert parse_instruction(line) == instr


class TestParse:
    def test_document(self):
        circuit = parse_circuit(DOCUMENT)
        assert circuit.num_qubits == 5
        assert circuit.num_cbits == 1
        assert circuit.register_map == {"A": (0, 2)}
        kinds = [instr.kind for instr in circuit]
        assert kinds == [
            GateKind.H,
            GateKind.RY,
            GateKind.CNOT,
            GateKind.MCX,
            GateKind.FANOUT,
            GateKind.MEASURE,
            GateKind.ROUND_BARRIER,
            GateKind.COND,
        ]
        assert circuit.instructions[4].mode == FanoutMode.MAF
        assert circuit.instructions[4].pool == (3, 4)
        assert circuit.instructions[0].stage == Stage.ONEHOT
        assert circuit.instructions[-1].stage is None
        assert circuit.instructions[-1].condition.negated

    def test_round_trip_is_exact(self):
        circuit = Circuit(3, 1, register_map={"A": (0, 2), "B": (2, 1)})
        circuit.append(ir.ry(math.pi / 3, 0).with_stage(Stage.GQSP))
        circuit.append(ir.mcrz(1e-17, [0], 1).with_stage(Stage.GQSP))
        circuit.append(ir.measure(1, 0).with_stage(Stage.GARBAGE))
        circuit.append(ir.cond([0], CondGate.Z, 2).with_stage(Stage.GARBAGE))
        assert parse_circuit(serialize(circuit)) == circuit

    @pytest.mark.parametrize(
        "text, line_number",
        [
            ("", 1),
            ("qubits 2\n", 1),
            ("qubits two\ncbits 0\n", 1),
            ("qubits 2\ncbits 0\nfoo q0\n", 3),
            ("qubits 2\ncbits 0\nh q0\ncx q0 q2\n", 4),
            ("qubits 2\ncbits 0\nh 0\n", 3),
            ("qubits 2\ncbits 0\nry q0\n", 3),
            ("qubits 2\ncbits 0\nfanout.zig q0 q1\n", 3),
            ("qubits 2\ncbits 1\ncond xor(c0) x q1\n", 3),
            ("qubits 2\ncbits 1\n# stage: nowhere\n", 3),
            ("qubits 2\ncbits 1\n# register: A 0\n", 3),
            ("qubits 2\ncbits 1\nmeasure q0 -> q1\n", 3),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line_number):
        with pytest.raises(CircuitParseError) as excinfo:
            parse_circuit(text)
        assert excinfo.value.line_number == line_number
