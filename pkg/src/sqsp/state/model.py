"""
Sparse state specifications, dense state vectors and the fidelity oracle.

Bit order: character j of a bitstring is qubit A(j). The leftmost character
is qubit 0 and the most significant bit of the dense index.
"""
import json
import math
import re
import warnings
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from sqsp.core.constants import NORM_ATOL
from sqsp.core.constants import RENORMALIZE_LIMIT
from sqsp.core.errors import SpecError
from sqsp.core.utils import bits_to_index

_UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_AMPLITUDE_RE = re.compile(rf"^\s*([+-]?{_UNSIGNED})\s*(?:([+-])\s*({_UNSIGNED})\s*i)?\s*$")
_BITSTRING_RE = re.compile(r"^[01]*$")

Amplitude = Union[complex, float, int, str]


def parse_amplitude(value: Amplitude) -> complex:
    """
    Parse an amplitude given as "RE+IMi"/"RE-IMi" text or as a JSON number.

    :raises SpecError: on malformed text.
    """
    if isinstance(value, bool):
        raise SpecError(f"Amplitude {value!r} is not a number.", "schema")
    if isinstance(value, (int, float, complex)):
        result = complex(value)
    elif isinstance(value, str):
        match = _AMPLITUDE_RE.match(value)
        if match is None:
            raise SpecError(f"Malformed amplitude {value!r}.", "schema")
        real = float(match.group(1))
        imag = 0.0
        if match.group(2) is not None:
            imag = float(match.group(3))
            if match.group(2) == "-":
                imag = -imag
        result = complex(real, imag)
    else:
        raise SpecError(f"Amplitude {value!r} is not a string or number.", "schema")

    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise SpecError(f"Amplitude {value!r} is not finite.", "schema")
    return result


def format_amplitude(value: complex) -> str:
    """Inverse of `parse_amplitude` for text output."""
    sign = "-" if value.imag < 0 or (value.imag == 0 and math.copysign(1.0, value.imag) < 0) else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


class SparseStateSpec:
    """
    A d-sparse n-qubit target state: sum_i alpha_i |q_i>.

    Entry order is significant, it defines the index i used by the one-hot
    encoding and the leaf order of amplitude loading.

    Attributes:
        n (int): qubit count.
        entries (Tuple[Tuple[complex, str], ...]): (alpha_i, q_i) pairs.
    """

    _n: int
    _entries: Tuple[Tuple[complex, str], ...]

    def __init__(
        self,
        n: int,
        entries: Iterable[Tuple[Amplitude, str]],
        renormalize: bool = False,
    ) -> None:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SpecError(f"Qubit count must be a positive integer, got {n!r}.", "schema")

        parsed: List[Tuple[complex, str]] = []
        for entry in entries:
            try:
                amplitude, bits = entry
            except (TypeError, ValueError) as err:
                raise SpecError(f"Entry {entry!r} is not an [amplitude, bitstring] pair.", "schema") from err
            if not isinstance(bits, str) or not _BITSTRING_RE.match(bits):
                raise SpecError(f"Bitstring {bits!r} is not a {{0,1}}-string.", "bitstring-alphabet")
            if len(bits) != n:
                raise SpecError(
                    f"Bitstring {bits!r} has length {len(bits)}, expected {n}.",
                    "bitstring-length",
                )
            parsed.append((parse_amplitude(amplitude), bits))

        d = len(parsed)
        if d < 1:
            raise SpecError("A state needs at least one entry.", "entry-count")
        if d > 2**n:
            raise SpecError(f"{d} entries exceed 2^{n} basis states.", "entry-count")

        seen = set()
        for _, bits in parsed:
            if bits in seen:
                raise SpecError(f"Duplicate bitstring {bits!r}.", "distinct-bitstrings")
            seen.add(bits)

        norm_sq = sum(abs(a) ** 2 for a, _ in parsed)
        deviation = abs(norm_sq - 1.0)
        if deviation > NORM_ATOL:
            if not renormalize:
                raise SpecError(
                    f"Squared norm is {norm_sq:.12g}, expected 1 within {NORM_ATOL}.",
                    "normalized",
                )
            if deviation > RENORMALIZE_LIMIT:
                raise SpecError(
                    f"Squared norm {norm_sq:.12g} is too far from 1 to renormalize.",
                    "normalized",
                )
            warnings.warn(f"Renormalizing state with squared norm {norm_sq:.12g}.")
            scale = 1.0 / math.sqrt(norm_sq)
            parsed = [(a * scale, bits) for a, bits in parsed]

        self._n = n
        self._entries = tuple(parsed)

    @property
    def n(self) -> int:
        return self._n

    @property
    def d(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> Tuple[Tuple[complex, str], ...]:
        return self._entries

    @property
    def amplitudes(self) -> np.ndarray:
        """alpha_0 .. alpha_{d-1} in entry order."""
        return np.array([a for a, _ in self._entries], dtype=complex)

    @property
    def bitstrings(self) -> Tuple[str, ...]:
        return tuple(bits for _, bits in self._entries)

    def bit(self, i: int, j: int) -> int:
        """q_i(j), bit j of the i-th bitstring counted from the left."""
        return int(self._entries[i][1][j])

    def _serialize(self) -> dict:
        return {
            "n": self._n,
            "entries": [[format_amplitude(a), bits] for a, bits in self._entries],
        }

    def to_json(self) -> str:
        return json.dumps(self._serialize())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseStateSpec):
            return NotImplemented
        return self._n == other._n and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SparseStateSpec(n={self._n}, d={self.d})"


class DenseState:
    """
    A full amplitude vector over `num_qubits` wires, qubit 0 most significant.

    Attributes:
        num_qubits (int): wire count.
        amplitudes (np.ndarray): complex vector of length 2**num_qubits.
        normalized (bool): whether the vector is tagged as a unit vector.
    """

    num_qubits: int
    amplitudes: np.ndarray
    normalized: bool

    def __init__(self, num_qubits: int, amplitudes: Sequence[complex], normalized: bool = True) -> None:
        vector = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if num_qubits < 0 or vector.size != 2**num_qubits:
            raise ValueError(
                f"Amplitude vector of length {vector.size} does not match {num_qubits} qubits."
            )
        if normalized:
            norm = float(np.linalg.norm(vector))
            if abs(norm - 1.0) > NORM_ATOL:
                raise ValueError(f"State norm {norm:.12g} deviates from 1 by more than {NORM_ATOL}.")
        self.num_qubits = num_qubits
        self.amplitudes = vector
        self.normalized = normalized

    @classmethod
    def basis(cls, num_qubits: int, index: Union[int, str]) -> "DenseState":
        """The computational basis state |index>."""
        if isinstance(index, str):
            index = bits_to_index(index)
        vector = np.zeros(2**num_qubits, dtype=complex)
        vector[index] = 1.0
        return cls(num_qubits, vector)

    @classmethod
    def from_vector(cls, amplitudes: Sequence[complex]) -> "DenseState":
        vector = np.asarray(amplitudes, dtype=complex).reshape(-1)
        num_qubits = int(vector.size).bit_length() - 1
        return cls(num_qubits, vector)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tensor(self, other: "DenseState") -> "DenseState":
        """self (x) other, with self on the leading wires."""
        return DenseState(
            self.num_qubits + other.num_qubits,
            np.kron(self.amplitudes, other.amplitudes),
            self.normalized and other.normalized,
        )

    def __repr__(self) -> str:
        return f"DenseState(num_qubits={self.num_qubits})"


def parse_state_spec(text: Union[str, bytes]) -> SparseStateSpec:
    """
    Parse and validate a JSON state document.

    Schema: {"n": int, "renormalize": bool (optional), "entries": [[amplitude, bitstring], ...]}

    :raises SpecError: on malformed JSON or any violated invariant.
    """
    try:
        document = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise SpecError(f"Malformed JSON: {err}", "schema") from err

    if not isinstance(document, dict):
        raise SpecError("Top-level JSON value must be an object.", "schema")
    for key in ("n", "entries"):
        if key not in document:
            raise SpecError(f"Missing field {key!r}.", "schema")
    unknown = set(document) - {"n", "entries", "renormalize"}
    if unknown:
        raise SpecError(f"Unknown fields {sorted(unknown)}.", "schema")

    renormalize = document.get("renormalize", False)
    if not isinstance(renormalize, bool):
        raise SpecError("Field 'renormalize' must be a boolean.", "schema")
    if not isinstance(document["entries"], list):
        raise SpecError("Field 'entries' must be a list.", "schema")

    return SparseStateSpec(document["n"], document["entries"], renormalize=renormalize)


def fidelity(a: DenseState, b: DenseState) -> float:
    """
    |<a|b>|^2 for equal-width states.

    :raises ValueError: on a dimension mismatch.
    """
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"Cannot compare {a.num_qubits}-qubit and {b.num_qubits}-qubit states.")
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    return float(min(1.0, abs(overlap) ** 2))


def embed(spec: SparseStateSpec) -> DenseState:
    """Dense vector with alpha_i at index int(q_i, 2) and zeros elsewhere."""
    vector = np.zeros(2**spec.n, dtype=complex)
    for amplitude, bits in spec.entries:
        vector[bits_to_index(bits)] = amplitude
    return DenseState(spec.n, vector)


def extract_nonzeros(state: DenseState, tol: float = 1.0e-12) -> SparseStateSpec:
    """Sparse view of a dense state, entries in increasing index order."""
    n = state.num_qubits
    entries = [
        (complex(state.amplitudes[index]), format(index, f"0{n}b"))
        for index in np.flatnonzero(np.abs(state.amplitudes) > tol)
    ]
    return SparseStateSpec(n, entries, renormalize=True)


def random_spec(
    n: int,
    d: int,
    seed: int = 0,
    real: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> SparseStateSpec:
    """
    Random spec with d distinct bitstrings and Gaussian amplitudes.

    :param real: draw real nonnegative amplitudes instead of complex ones.
    """
    if d < 1 or d > 2**n:
        raise SpecError(f"Cannot draw {d} distinct {n}-bit strings.", "entry-count")
    if rng is None:
        rng = np.random.Generator(np.random.Philox(seed))

    indices: List[int] = []
    seen = set()
    while len(indices) < d:
        candidate = int(rng.integers(0, 2**n))
        if candidate not in seen:
            seen.add(candidate)
            indices.append(candidate)

    if real:
        amplitudes = np.abs(rng.normal(size=d)) + 1.0e-3
    else:
        amplitudes = rng.normal(size=d) + 1j * rng.normal(size=d)
    amplitudes = amplitudes / np.linalg.norm(amplitudes)

    return SparseStateSpec(
        n, [(complex(a), format(index, f"0{n}b")) for a, index in zip(amplitudes, indices)]
    )
