# pylint: disable=missing-function-docstring, missing-class-docstring
import math

import pytest
from sqsp.circuit.ir import GateKind
from sqsp.circuit.metrics import metrics
from sqsp.core.constants import END_TO_END_ATOL
from sqsp.core.constants import Mode
from sqsp.core.constants import OneHotMode
from sqsp.core.constants import Stage
from sqsp.core.utils import ceil_log2
from sqsp.core.utils import index_bits
from sqsp.pipeline.compiler import build_sqsp
from sqsp.pipeline.compiler import compile_sqsp
from sqsp.pipeline.layout import RegisterLayout
from sqsp.pipeline.permutation import column_sets
from sqsp.sim.simulator import OutcomePolicy
from sqsp.sim.simulator import Simulator
from sqsp.state.model import SparseStateSpec
from sqsp.state.model import embed
from sqsp.state.model import random_spec
from sqsp.synth.fanout import MAF_FANOUT_DEPTH

SMALL = [(3, 2), (3, 3), (3, 4), (2, 4)]

# every (n, d) with n in 2..8 and d in 1..4 that fits an 18-wire statevector
SWEEP = [
    (n, d)
    for n in range(2, 9)
    for d in range(1, 5)
    if d <= 2**n and RegisterLayout(n, d).num_qubits <= 18
]

RESIDUAL_ATOL = 1.0e-12


def _all_ones_columns(n, d):
    """Entries whose every A column differs from the loaded index, so each column flips on all d."""
    height = ceil_log2(d)
    entries = []
    for i in range(d):
        padded = index_bits(i, height) + (0,) * (n - height)
        entries.append((1.0 / math.sqrt(d), "".join("0" if bit else "1" for bit in padded)))
    return SparseStateSpec(n, entries)


def _busy_columns(n, d, seed):
    """A random spec whose first entry is all ones, so no column is empty."""
    base = random_spec(n, d, seed=seed)
    bitstrings = list(base.bitstrings)
    ones = "1" * n
    if ones in bitstrings:
        bitstrings.remove(ones)
    else:
        bitstrings.pop()
    bitstrings.insert(0, ones)
    return SparseStateSpec(n, [(complex(a), bits) for a, bits in zip(base.amplitudes, bitstrings)])


class TestEndToEnd:
    @pytest.mark.parametrize("n, d", SMALL)
    def test_unitary_prepares_target(self, n, d):
        spec = random_spec(n, d, seed=n + d)
        circuit = compile_sqsp(spec, Mode.UNITARY)
        assert GateKind.MEASURE not in circuit.count_ops()
        result = Simulator().run(circuit, target=embed(spec))
        assert result.fidelity >= 1.0 - END_TO_END_ATOL
        assert result.ancilla_residual < RESIDUAL_ATOL

    @pytest.mark.parametrize("n, d", SMALL)
    def test_maf_prepares_target_on_sampled_branches(self, n, d):
        spec = random_spec(n, d, seed=10 + n + d)
        circuit = compile_sqsp(spec, Mode.MAF)
        simulator = Simulator()
        for seed in range(3):
            result = simulator.run(circuit, OutcomePolicy.sample(seed), target=embed(spec))
            assert result.fidelity >= 1.0 - END_TO_END_ATOL
            assert result.ancilla_residual < RESIDUAL_ATOL

    @pytest.mark.parametrize("n, d", SWEEP)
    def test_sweep_unitary(self, n, d):
        spec = random_spec(n, d, seed=100 * n + d)
        result = Simulator().run(compile_sqsp(spec, Mode.UNITARY), target=embed(spec))
        assert result.fidelity >= 1.0 - END_TO_END_ATOL
        assert result.ancilla_residual < RESIDUAL_ATOL

    @pytest.mark.parametrize("n, d", SWEEP)
    def test_sweep_maf_twenty_seeds(self, n, d):
        spec = random_spec(n, d, seed=200 * n + d)
        circuit = compile_sqsp(spec, Mode.MAF)
        simulator = Simulator()
        target = embed(spec)
        for seed in range(20):
            result = simulator.run(circuit, OutcomePolicy.sample(seed), target=target)
            assert result.fidelity >= 1.0 - END_TO_END_ATOL
            assert result.ancilla_residual < RESIDUAL_ATOL

    @pytest.mark.parametrize("n, d, seed", [(2, 2, 0), (3, 2, 1), (4, 2, 2)])
    def test_maf_every_branch(self, n, d, seed):
        spec = random_spec(n, d, seed=seed)
        circuit = compile_sqsp(spec, Mode.MAF)
        count = circuit.count_ops()[GateKind.MEASURE]
        results = Simulator().enumerate_branches(circuit, max_measurements=count, target=embed(spec))
        assert math.isclose(sum(result.branch_probability for result in results), 1.0, abs_tol=END_TO_END_ATOL)
        for result in results:
            assert result.fidelity >= 1.0 - END_TO_END_ATOL
            assert result.ancilla_residual < RESIDUAL_ATOL

    def test_baseline_onehot(self):
        spec = random_spec(3, 4, seed=4)
        circuit = compile_sqsp(spec, Mode.UNITARY, OneHotMode.BASELINE)
        result = Simulator().run(circuit, target=embed(spec))
        assert result.fidelity >= 1.0 - END_TO_END_ATOL

    def test_real_amplitudes(self):
        spec = random_spec(3, 3, seed=2, real=True)
        result = Simulator().run(compile_sqsp(spec), target=embed(spec))
        assert result.fidelity >= 1.0 - END_TO_END_ATOL

    def test_single_entry_is_x_gates(self):
        spec = SparseStateSpec(4, [(1.0, "1011")])
        circuit = compile_sqsp(spec, Mode.MAF)
        assert set(circuit.count_ops()) == {GateKind.X}
        assert [instr.qubits[0] for instr in circuit] == [0, 2, 3]
        assert circuit.stages() == (Stage.PERMUTATION,)
        result = Simulator().run(circuit, target=embed(spec))
        assert result.fidelity >= 1.0 - END_TO_END_ATOL


class TestStructure:
    @pytest.mark.parametrize("mode", [Mode.UNITARY, Mode.MAF])
    def test_stage_tags_and_registers(self, mode):
        spec = random_spec(5, 6, seed=1)
        circuit = compile_sqsp(spec, mode)
        assert circuit.stages() == (Stage.GQSP, Stage.ONEHOT, Stage.PERMUTATION, Stage.GARBAGE)
        assert set(circuit.register_map) == {"A", "B", "C", "D"}
        report = metrics(circuit)
        assert set(report.per_stage) == {"gqsp", "onehot", "permutation", "garbage"}
        assert report.ancilla == 2 ** ceil_log2(6) + 3 * 6

    @pytest.mark.parametrize("n, d", [(4, 3), (6, 5), (7, 9)])
    def test_maf_round_budget(self, n, d):
        report = metrics(compile_sqsp(random_spec(n, d, seed=d), Mode.MAF))
        assert 0 < report.maf_rounds <= 4 * n + 2 * ceil_log2(d) + 4

    def test_maf_stages_end_in_barriers(self):
        circuit = compile_sqsp(random_spec(4, 5, seed=2), Mode.MAF)
        for stage in (Stage.GQSP, Stage.ONEHOT, Stage.PERMUTATION):
            assert circuit.stage_slice(stage).instructions[-1].kind == GateKind.ROUND_BARRIER
        assert circuit.instructions[-1].kind != GateKind.ROUND_BARRIER
        report = metrics(circuit)
        assert report.per_stage["gqsp"].maf_rounds == 1
        assert report.maf_rounds == sum(part.maf_rounds for part in report.per_stage.values())

    def test_unitary_has_no_rounds(self):
        report = metrics(compile_sqsp(random_spec(5, 7, seed=3), Mode.UNITARY))
        assert report.maf_rounds == 0
        assert report.classical_depth_bound == 0

    def test_classical_depth_bound(self):
        circuit = compile_sqsp(random_spec(6, 8, seed=5), Mode.MAF)
        fan_in = max(len(instr.condition.cbits) for instr in circuit if instr.kind == GateKind.COND)
        assert metrics(circuit).classical_depth_bound <= ceil_log2(fan_in) + 1

    def test_build_keeps_composites(self):
        circuit = build_sqsp(random_spec(4, 4, seed=0), Mode.UNITARY)
        assert not circuit.native
        assert GateKind.OR_CX in circuit.count_ops()

    def test_onehot_mode_conflicts(self):
        spec = random_spec(3, 3, seed=0)
        with pytest.raises(ValueError):
            build_sqsp(spec, Mode.MAF, OneHotMode.COPY)
        with pytest.raises(ValueError):
            build_sqsp(spec, Mode.UNITARY, OneHotMode.MAF)


class TestPermutationDepth:
    DIMS = [4, 8, 16, 32]

    @staticmethod
    def _permutation_depth(spec, mode):
        return metrics(compile_sqsp(spec, mode)).per_stage["permutation"].quantum_depth

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_maf_depth_equal_across_d(self, seed):
        depths = [self._permutation_depth(_busy_columns(12, d, seed), Mode.MAF) for d in self.DIMS]
        assert depths == [MAF_FANOUT_DEPTH * 12 + 1] * len(self.DIMS)

    @pytest.mark.parametrize("seed", [0, 1])
    @pytest.mark.parametrize("d", DIMS)
    def test_maf_depth_follows_column_count(self, d, seed):
        spec = random_spec(12, d, seed=seed)
        columns = sum(1 for members in column_sets(spec) if members)
        # the first block starts one layer early; the last one adds corrections and H
        assert self._permutation_depth(spec, Mode.MAF) == MAF_FANOUT_DEPTH * columns + 1

    def test_unitary_depth_grows_with_d(self):
        depths = [self._permutation_depth(_all_ones_columns(6, d), Mode.UNITARY) for d in (4, 8, 16)]
        assert depths[0] < depths[1] < depths[2]
