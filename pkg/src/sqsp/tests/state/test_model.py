# pylint: disable=missing-function-docstring, missing-class-docstring, redefined-outer-name
import json
import math

import numpy as np
import numpy.testing as npt
import pytest
from sqsp.core.errors import SpecError
from sqsp.state.model import DenseState
from sqsp.state.model import SparseStateSpec
from sqsp.state.model import embed
from sqsp.state.model import extract_nonzeros
from sqsp.state.model import fidelity
from sqsp.state.model import format_amplitude
from sqsp.state.model import parse_amplitude
from sqsp.state.model import parse_state_spec
from sqsp.state.model import random_spec

HALF = 1.0 / math.sqrt(2.0)


@pytest.fixture
def bell_like():
    return SparseStateSpec(3, [(HALF, "001"), (complex(0, HALF), "110")])


class TestParseAmplitude:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("0.5", 0.5),
            ("-0.25", -0.25),
            ("0.5+0.5i", 0.5 + 0.5j),
            ("0.5-0.5i", 0.5 - 0.5j),
            ("1e-3+2E-2i", 1e-3 + 2e-2j),
            (" .5 + .25i ", 0.5 + 0.25j),
        ],
    )
    def test_text(self, text, expected):
        assert parse_amplitude(text) == expected

    def test_numbers(self):
        assert parse_amplitude(1) == 1.0
        assert parse_amplitude(0.25) == 0.25

    @pytest.mark.parametrize("value", ["abc", "0.5+i", "1+2j", True, None, [1], "nan", float("inf")])
    def test_rejects(self, value):
        with pytest.raises(SpecError):
            parse_amplitude(value)

    def test_format_round_trip(self):
        for value in (0.5 + 0.25j, -0.125 - 1e-17j, 0.3 + 0j):
            assert parse_amplitude(format_amplitude(value)) == value


class TestSparseStateSpec:
    def test_properties(self, bell_like):
        assert bell_like.n == 3
        assert bell_like.d == 2
        assert bell_like.bitstrings == ("001", "110")
        assert bell_like.bit(0, 2) == 1
        assert bell_like.bit(1, 2) == 0
        npt.assert_allclose(bell_like.amplitudes, [HALF, 1j * HALF])

    @pytest.mark.parametrize(
        "n, entries, invariant",
        [
            (2, [(1.0, "0a")], "bitstring-alphabet"),
            (2, [(1.0, "010")], "bitstring-length"),
            (2, [], "entry-count"),
            (1, [(0.5, "0"), (0.5, "1"), (0.5, "0")], "entry-count"),
            (2, [(HALF, "01"), (HALF, "01")], "distinct-bitstrings"),
            (2, [(0.5, "01"), (0.5, "10")], "normalized"),
            (0, [(1.0, "")], "schema"),
        ],
    )
    def test_invariants(self, n, entries, invariant):
        with pytest.raises(SpecError) as excinfo:
            SparseStateSpec(n, entries)
        assert excinfo.value.invariant == invariant

    def test_norm_tolerance_applies_to_squared_norm(self):
        # |a| - 1 is about 7.5e-10 here, but |a|^2 - 1 is 1.5e-9
        with pytest.raises(SpecError) as excinfo:
            SparseStateSpec(1, [(math.sqrt(1.0 + 1.5e-9), "0")])
        assert excinfo.value.invariant == "normalized"
        spec = SparseStateSpec(1, [(math.sqrt(1.0 + 5.0e-10), "0")])
        assert spec.d == 1

    def test_renormalize_warns(self):
        with pytest.warns(UserWarning):
            spec = SparseStateSpec(1, [(0.7, "0"), (0.7143, "1")], renormalize=True)
        assert math.isclose(float(np.linalg.norm(spec.amplitudes)), 1.0, abs_tol=1e-12)

    def test_renormalize_limit(self):
        with pytest.raises(SpecError):
            SparseStateSpec(1, [(0.5, "0"), (0.5, "1")], renormalize=True)

    def test_json_round_trip(self, bell_like):
        assert parse_state_spec(bell_like.to_json()) == bell_like


class TestParseStateSpec:
    def test_document(self):
        text = json.dumps({"n": 2, "entries": [["0.6", "00"], ["0+0.8i", "11"]]})
        spec = parse_state_spec(text)
        assert spec.d == 2
        npt.assert_allclose(spec.amplitudes, [0.6, 0.8j])

    @pytest.mark.parametrize(
        "text",
        [
            "{not json",
            "[1, 2]",
            '{"entries": []}',
            '{"n": 1, "entries": [[1, "0"]], "extra": 1}',
            '{"n": 1, "entries": {}}',
            '{"n": 1, "entries": [[1, "0"]], "renormalize": "yes"}',
            '{"n": 1, "entries": [[1]]}',
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(SpecError):
            parse_state_spec(text)


class TestDenseState:
    def test_basis(self):
        state = DenseState.basis(3, "101")
        assert state.amplitudes[5] == 1.0
        assert math.isclose(float(state.probabilities().sum()), 1.0)

    def test_from_vector(self):
        state = DenseState.from_vector([HALF, 0, 0, HALF])
        assert state.num_qubits == 2

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            DenseState(2, [1, 0, 0])

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            DenseState(1, [1, 1])
        assert DenseState(1, [1, 1], normalized=False).normalized is False

    def test_tensor_puts_self_first(self):
        state = DenseState.basis(1, 1).tensor(DenseState.basis(2, 0))
        assert state.num_qubits == 3
        assert state.amplitudes[4] == 1.0


class TestOracle:
    def test_embed(self, bell_like):
        state = embed(bell_like)
        assert state.num_qubits == 3
        npt.assert_allclose(state.amplitudes[[1, 6]], [HALF, 1j * HALF])
        assert np.count_nonzero(state.amplitudes) == 2

    def test_fidelity_ignores_global_phase(self, bell_like):
        state = embed(bell_like)
        rotated = DenseState(3, state.amplitudes * np.exp(0.7j))
        assert math.isclose(fidelity(state, rotated), 1.0, abs_tol=1e-12)

    def test_fidelity_orthogonal(self):
        assert fidelity(DenseState.basis(2, 0), DenseState.basis(2, 3)) == 0.0

    def test_fidelity_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(DenseState.basis(2, 0), DenseState.basis(3, 0))

    def test_extract_nonzeros_inverts_embed(self):
        spec = random_spec(5, 7, seed=3)
        recovered = extract_nonzeros(embed(spec))
        assert dict(zip(recovered.bitstrings, recovered.amplitudes)).keys() == set(spec.bitstrings)
        original = dict(zip(spec.bitstrings, spec.amplitudes))
        for bits, amplitude in zip(recovered.bitstrings, recovered.amplitudes):
            assert abs(amplitude - original[bits]) < 1e-12


class TestRandomSpec:
    def test_shape_and_norm(self):
        spec = random_spec(6, 10, seed=1)
        assert spec.n == 6
        assert spec.d == 10
        assert len(set(spec.bitstrings)) == 10
        assert math.isclose(float(np.linalg.norm(spec.amplitudes)), 1.0, abs_tol=1e-12)

    def test_deterministic(self):
        assert random_spec(5, 4, seed=9) == random_spec(5, 4, seed=9)
        assert random_spec(5, 4, seed=9) != random_spec(5, 4, seed=10)

    def test_real(self):
        spec = random_spec(4, 5, seed=2, real=True)
        assert np.all(spec.amplitudes.imag == 0.0)
        assert np.all(spec.amplitudes.real > 0.0)

    def test_full_support(self):
        assert sorted(random_spec(3, 8, seed=0).bitstrings) == [format(i, "03b") for i in range(8)]

    def test_rejects_too_many_entries(self):
        with pytest.raises(SpecError):
            random_spec(2, 5)
