"""
Dense statevector simulator with mid-circuit measurement and feedforward.

The state of Q wires is a complex tensor of shape (2,) * Q with axis q for
qubit q, so the flattened vector has qubit 0 as its most significant bit.
Single-qubit gates contract one axis; CNOT exchanges the two target slices
inside the control=1 slice.

Sampling uses numpy's counter-based Philox bit generator, seeded with a
64-bit integer, which gives the same outcome stream on every platform.
"""
import enum
import json
import math
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
import psutil

from sqsp.circuit.ir import GateKind
from sqsp.circuit.ir import Circuit
from sqsp.circuit.ir import CondGate
from sqsp.circuit.ir import Instruction
from sqsp.circuit.metrics import Metrics
from sqsp.core.constants import DEFAULT_MAX_MEASUREMENTS
from sqsp.core.constants import DEFAULT_MAX_QUBITS
from sqsp.core.constants import NORM_ATOL
from sqsp.core.constants import ZERO_PROBABILITY
from sqsp.core.errors import SimulationError
from sqsp.state.model import DenseState

_SQRT_HALF = 1.0 / math.sqrt(2.0)

_FIXED_MATRICES = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.IDLE: np.eye(2, dtype=complex),
    GateKind.H: np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
}

_COND_MATRICES = {
    CondGate.X: _FIXED_MATRICES[GateKind.X],
    CondGate.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def gate_matrix(instr: Instruction) -> np.ndarray:
    """
    2x2 matrix of a native single-qubit instruction.

    RY(a) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]], RZ(a) = diag(e^{-ia/2}, e^{ia/2})
    and U1Q(a, b, c) = [[cos a/2, -e^{ic} sin a/2], [e^{ib} sin a/2, e^{i(b+c)} cos a/2]].
    """
    kind = instr.kind
    if kind in _FIXED_MATRICES:
        return _FIXED_MATRICES[kind]
    if kind == GateKind.RY:
        half = instr.params[0] / 2.0
        return np.array([[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]], dtype=complex)
    if kind == GateKind.RZ:
        half = instr.params[0] / 2.0
        return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)
    if kind == GateKind.U1Q:
        theta, phi, lam = instr.params
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        return np.array(
            [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
            dtype=complex,
        )
    raise SimulationError(f"{kind.name} is not a single-qubit gate.")


class PolicyKind(enum.Enum):
    SAMPLE = "sample"
    FORCED = "forced"


class OutcomePolicy:
    """
    How measurement outcomes are chosen.

    Use `OutcomePolicy.sample(seed)` for Born-rule sampling or
    `OutcomePolicy.forced("0110")` to project onto fixed outcomes given in
    measurement order.
    """

    kind: PolicyKind
    seed: Optional[int]
    outcomes: Tuple[int, ...]

    def __init__(self, kind: PolicyKind, seed: Optional[int] = None, outcomes: Sequence[int] = ()) -> None:
        self.kind = kind
        self.seed = seed
        self.outcomes = tuple(int(b) for b in outcomes)
        if kind == PolicyKind.SAMPLE and (seed is None or seed < 0 or seed >= 2**64):
            raise ValueError(f"Sampling seed must be a 64-bit unsigned integer, got {seed!r}.")
        if any(b not in (0, 1) for b in self.outcomes):
            raise ValueError(f"Forced outcomes must be bits, got {self.outcomes}.")

    @classmethod
    def sample(cls, seed: int = 0) -> "OutcomePolicy":
        return cls(PolicyKind.SAMPLE, seed=seed)

    @classmethod
    def forced(cls, outcomes) -> "OutcomePolicy":
        if isinstance(outcomes, str):
            outcomes = [int(ch) for ch in outcomes]
        return cls(PolicyKind.FORCED, outcomes=outcomes)

    def __repr__(self) -> str:
        if self.kind == PolicyKind.SAMPLE:
            return f"OutcomePolicy.sample({self.seed})"
        return f"OutcomePolicy.forced({''.join(map(str, self.outcomes))!r})"


class MeasurementRecord:
    """One entry of the measurement log."""

    __slots__ = ("qubit", "cbit", "outcome", "probability")

    def __init__(self, qubit: int, cbit: int, outcome: int, probability: float) -> None:
        self.qubit = qubit
        self.cbit = cbit
        self.outcome = outcome
        self.probability = probability

    def __repr__(self) -> str:
        return f"MeasurementRecord(q{self.qubit} -> c{self.cbit} = {self.outcome}, p={self.probability:.6g})"


class SimState:
    """
    Mutable simulation state.

    Attributes:
        tensor (np.ndarray): amplitudes with shape (2,) * num_qubits.
        cbits (List[int]): classical bit values, 0 until written.
        log (List[MeasurementRecord]): measurements in execution order.
    """

    tensor: np.ndarray
    cbits: List[int]
    log: List[MeasurementRecord]

    def __init__(self, num_qubits: int, num_cbits: int = 0) -> None:
        self.tensor = np.zeros((2,) * num_qubits, dtype=complex)
        self.tensor[(0,) * num_qubits] = 1.0
        self.cbits = [0] * num_cbits
        self.log = []
        self._round_writes = set()

    @property
    def num_qubits(self) -> int:
        return self.tensor.ndim

    @property
    def amplitudes(self) -> np.ndarray:
        return self.tensor.reshape(-1)

    @property
    def outcomes(self) -> str:
        return "".join(str(record.outcome) for record in self.log)

    @property
    def branch_probability(self) -> float:
        return float(np.prod([record.probability for record in self.log])) if self.log else 1.0

    def norm(self) -> float:
        return float(np.linalg.norm(self.tensor))

    def copy(self) -> "SimState":
        state = SimState.__new__(SimState)
        state.tensor = self.tensor.copy()
        state.cbits = list(self.cbits)
        state.log = list(self.log)
        state._round_writes = set(self._round_writes)
        return state

    def to_dense(self) -> DenseState:
        return DenseState(self.num_qubits, self.amplitudes.copy(), normalized=False)


class RunResult:
    """
    Outcome of one simulated branch.

    Attributes:
        final_state (DenseState): amplitudes after the last instruction.
        outcomes (str): measured bits in measurement order.
        branch_probability (float): product of the realized outcome probabilities.
        fidelity (Optional[float]): overlap with the target padded by |0> ancillas.
        ancilla_residual (Optional[float]): population outside the all-zero ancilla subspace.
        metrics (Optional[Metrics]): metrics of the simulated circuit.
    """

    final_state: DenseState
    outcomes: str
    branch_probability: float
    fidelity: Optional[float]
    ancilla_residual: Optional[float]
    metrics: Optional[Metrics]

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        final_state: DenseState,
        outcomes: str,
        branch_probability: float,
        fidelity: Optional[float] = None,
        ancilla_residual: Optional[float] = None,
        metrics: Optional[Metrics] = None,
    ) -> None:
        self.final_state = final_state
        self.outcomes = outcomes
        self.branch_probability = branch_probability
        self.fidelity = fidelity
        self.ancilla_residual = ancilla_residual
        self.metrics = metrics

    def _serialize(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "outcomes": self.outcomes,
            "branch_probability": self.branch_probability,
            "fidelity": self.fidelity,
            "ancilla_residual": self.ancilla_residual,
        }
        if self.metrics is not None:
            data["metrics"] = self.metrics._serialize()
        return data

    def to_json(self) -> str:
        return json.dumps(self._serialize())

    def __repr__(self) -> str:
        return (
            f"RunResult(outcomes={self.outcomes!r}, branch_probability={self.branch_probability:.6g}, "
            f"fidelity={self.fidelity})"
        )


def _target_overlap(state: SimState, target: DenseState) -> Tuple[float, float]:
    """(fidelity, ancilla residual) of a state against target (x) |0...0>."""
    n = target.num_qubits
    q = state.num_qubits
    if n > q:
        raise SimulationError(f"Target has {n} qubits but the circuit only {q}.")
    clean = state.amplitudes.reshape(2**n, 2 ** (q - n))[:, 0]
    overlap = np.vdot(target.amplitudes, clean)
    residual = max(0.0, 1.0 - float(np.vdot(clean, clean).real))
    return float(min(1.0, abs(overlap) ** 2)), residual


class Simulator:
    """
    Executes native circuits on a dense statevector.

    :param max_qubits: widest circuit accepted.
    :param max_measurements: largest MEASURE count `enumerate_branches` expands.
    :param check_norm: verify the norm after every unitary instruction.
    """

    max_qubits: int
    max_measurements: int
    check_norm: bool

    def __init__(
        self,
        max_qubits: int = DEFAULT_MAX_QUBITS,
        max_measurements: int = DEFAULT_MAX_MEASUREMENTS,
        check_norm: bool = False,
    ) -> None:
        self.max_qubits = max_qubits
        self.max_measurements = max_measurements
        self.check_norm = check_norm

    def new_state(self, num_qubits: int, num_cbits: int = 0) -> SimState:
        """
        All-zero state, after checking the wire limit and free memory.

        :raises SimulationError: if the state is too wide or would not fit in memory.
        """
        if num_qubits > self.max_qubits:
            raise SimulationError(f"{num_qubits} qubits exceed the simulator limit of {self.max_qubits}.")
        # the state, one branch copy and numpy temporaries
        needed = 3 * 16 * 2**num_qubits
        available = psutil.virtual_memory().available
        if needed > available:
            raise SimulationError(
                f"A {num_qubits}-qubit state needs about {needed >> 20} MiB, "
                f"only {available >> 20} MiB available."
            )
        return SimState(num_qubits, num_cbits)

    def apply(self, state: SimState, instr: Instruction) -> SimState:
        """
        Apply one native non-measuring instruction in place.

        :raises SimulationError: on composite or MEASURE instructions and out-of-range operands.
        """
        kind = instr.kind
        if not instr.is_native:
            raise SimulationError(f"Cannot simulate composite {kind.name}; lower the circuit first.")
        for q in instr.qubits:
            if q >= state.num_qubits:
                raise SimulationError(f"Wire {q} out of range for {state.num_qubits} qubits.")

        if kind == GateKind.MEASURE:
            raise SimulationError("Use `measure` for MEASURE instructions.")
        if kind == GateKind.ROUND_BARRIER:
            state._round_writes.clear()
            return state
        if kind == GateKind.IDLE:
            return state
        if kind == GateKind.CNOT:
            self._apply_cnot(state, *instr.qubits)
        elif kind == GateKind.COND:
            for c in instr.condition.cbits:
                if c >= len(state.cbits):
                    raise SimulationError(f"Classical bit {c} out of range.")
            if instr.condition.evaluate(state.cbits):
                self._apply_single(state, _COND_MATRICES[instr.cond_gate], instr.qubits[0])
        else:
            self._apply_single(state, gate_matrix(instr), instr.qubits[0])

        if self.check_norm and abs(state.norm() - 1.0) > NORM_ATOL:
            raise SimulationError(f"Norm drifted to {state.norm():.12g} after {instr!r}.")
        return state

    @staticmethod
    def _apply_single(state: SimState, matrix: np.ndarray, q: int) -> None:
        moved = np.tensordot(matrix, state.tensor, axes=([1], [q]))
        state.tensor = np.moveaxis(moved, 0, q)

    @staticmethod
    def _apply_cnot(state: SimState, control: int, target: int) -> None:
        index = [slice(None)] * state.num_qubits
        index[control] = 1
        index = tuple(index)
        axis = target if target < control else target - 1
        block = state.tensor[index]
        state.tensor[index] = np.flip(block, axis=axis).copy()

    def probability_of_one(self, state: SimState, qubit: int) -> float:
        index = [slice(None)] * state.num_qubits
        index[qubit] = 1
        block = state.tensor[tuple(index)]
        return float(np.vdot(block, block).real)

    @staticmethod
    def project(state: SimState, qubit: int, outcome: int, probability: float) -> None:
        """Project `qubit` onto |outcome> and renormalize in place."""
        index = [slice(None)] * state.num_qubits
        index[qubit] = 1 - outcome
        state.tensor[tuple(index)] = 0.0
        state.tensor = state.tensor / math.sqrt(probability)

    def measure(
        self,
        state: SimState,
        qubit: int,
        cbit: int,
        policy: OutcomePolicy,
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[int, SimState]:
        """
        Computational-basis measurement of `qubit` into `cbit`.

        The measured wire keeps the post-measurement basis state.

        :raises SimulationError: on a forced outcome with probability below
            1e-12, a missing forced outcome or a bit written twice in a round.
        """
        if qubit >= state.num_qubits or cbit >= len(state.cbits):
            raise SimulationError(f"Measurement q{qubit} -> c{cbit} is out of range.")
        if cbit in state._round_writes:
            raise SimulationError(f"Classical bit c{cbit} written twice in one round.")

        p_one = min(1.0, max(0.0, self.probability_of_one(state, qubit)))
        if policy.kind == PolicyKind.FORCED:
            position = len(state.log)
            if position >= len(policy.outcomes):
                raise SimulationError(f"No forced outcome for measurement {position}.")
            outcome = policy.outcomes[position]
        else:
            if rng is None:
                rng = np.random.Generator(np.random.Philox(policy.seed))
            outcome = 1 if rng.random() < p_one else 0

        probability = p_one if outcome else 1.0 - p_one
        if probability < ZERO_PROBABILITY:
            raise SimulationError(
                f"Outcome {outcome} on q{qubit} has probability {probability:.3g}; branch is impossible."
            )

        self._collapse(state, qubit, cbit, outcome, probability)
        return outcome, state

    def _collapse(self, state: SimState, qubit: int, cbit: int, outcome: int, probability: float) -> None:
        self.project(state, qubit, outcome, probability)
        state.cbits[cbit] = outcome
        state._round_writes.add(cbit)
        state.log.append(MeasurementRecord(qubit, cbit, outcome, probability))

    def _check_runnable(self, circuit: Circuit) -> None:
        if not circuit.native:
            raise SimulationError("Cannot simulate a circuit with composite instructions; lower it first.")

    def _result(self, state: SimState, target: Optional[DenseState], metrics: Optional[Metrics]) -> RunResult:
        fidelity = residual = None
        if target is not None:
            fidelity, residual = _target_overlap(state, target)
        return RunResult(
            state.to_dense(), state.outcomes, state.branch_probability, fidelity, residual, metrics
        )

    def run(
        self,
        circuit: Circuit,
        policy: Optional[OutcomePolicy] = None,
        target: Optional[DenseState] = None,
        metrics: Optional[Metrics] = None,
    ) -> RunResult:
        """
        Execute a native circuit from |0...0>.

        :param policy: outcome policy, sampling with seed 0 when omitted.
        :param target: state on the leading wires to compare against, with
            every remaining wire expected in |0>.
        :param metrics: echoed back in the result.
        :raises SimulationError: on composite input, a FORCED length mismatch
            or an impossible forced outcome.
        """
        self._check_runnable(circuit)
        policy = policy or OutcomePolicy.sample(0)
        measure_count = circuit.count_ops().get(GateKind.MEASURE, 0)
        if policy.kind == PolicyKind.FORCED and len(policy.outcomes) != measure_count:
            raise SimulationError(
                f"{len(policy.outcomes)} forced outcomes for {measure_count} measurements."
            )

        rng = np.random.Generator(np.random.Philox(policy.seed)) if policy.kind == PolicyKind.SAMPLE else None
        state = self.new_state(circuit.num_qubits, circuit.num_cbits)
        for instr in circuit:
            if instr.kind == GateKind.MEASURE:
                self.measure(state, instr.qubits[0], instr.cbits[0], policy, rng)
            else:
                self.apply(state, instr)
        return self._result(state, target, metrics)

    def enumerate_branches(
        self,
        circuit: Circuit,
        max_measurements: Optional[int] = None,
        target: Optional[DenseState] = None,
        metrics: Optional[Metrics] = None,
    ) -> List[RunResult]:
        """
        One result per outcome string with nonzero probability.

        Branches are explored depth first; the state is copied once per
        measurement with two possible outcomes. Results are ordered by
        outcome string.

        :raises SimulationError: when the circuit measures more often than the limit.
        """
        self._check_runnable(circuit)
        limit = self.max_measurements if max_measurements is None else max_measurements
        measure_count = circuit.count_ops().get(GateKind.MEASURE, 0)
        if measure_count > limit:
            raise SimulationError(
                f"{measure_count} measurements exceed the enumeration limit of {limit}; "
                "raise the limit or sample outcomes instead."
            )

        instructions = circuit.instructions
        results: List[RunResult] = []
        stack = [(0, self.new_state(circuit.num_qubits, circuit.num_cbits))]
        while stack:
            position, state = stack.pop()
            while position < len(instructions) and instructions[position].kind != GateKind.MEASURE:
                self.apply(state, instructions[position])
                position += 1
            if position == len(instructions):
                results.append(self._result(state, target, metrics))
                continue

            instr = instructions[position]
            qubit, cbit = instr.qubits[0], instr.cbits[0]
            p_one = min(1.0, max(0.0, self.probability_of_one(state, qubit)))
            branches = [(outcome, p) for outcome, p in ((1, p_one), (0, 1.0 - p_one)) if p >= ZERO_PROBABILITY]
            if cbit in state._round_writes:
                raise SimulationError(f"Classical bit c{cbit} written twice in one round.")
            for index, (outcome, probability) in enumerate(branches):
                branch = state if index == len(branches) - 1 else state.copy()
                self._collapse(branch, qubit, cbit, outcome, probability)
                stack.append((position + 1, branch))

        results.sort(key=lambda result: result.outcomes)
        return results

    def statevector(self, circuit: Circuit) -> DenseState:
        """
        Final state of a measurement-free native circuit.

        :raises SimulationError: if the circuit measures.
        """
        if GateKind.MEASURE in circuit.count_ops():
            raise SimulationError("statevector() needs a circuit without measurements.")
        return self.run(circuit, OutcomePolicy.sample(0)).final_state
