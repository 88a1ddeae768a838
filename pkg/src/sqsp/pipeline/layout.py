"""Register layout of the sparse-state pipeline."""
from typing import Dict
from typing import Tuple

from sqsp.core.utils import ceil_log2


class RegisterLayout:
    """
    Contiguous wire spans for the four registers.

    A (n wires) holds the prepared state, B (2^ceil(log2 d) wires) the
    one-hot index, C (2d wires) copies and branch records, D (d wires)
    control copies for the garbage stage.

    Attributes:
        n (int): target qubit count.
        d (int): sparsity.
        height (int): ceil(log2 d), the width of the loaded index.
    """

    n: int
    d: int
    height: int

    def __init__(self, n: int, d: int) -> None:
        if n < 1 or d < 1 or d > 2**n:
            raise ValueError(f"No layout for n={n}, d={d}.")
        self.n = n
        self.d = d
        self.height = ceil_log2(d)

    @classmethod
    def for_spec(cls, spec) -> "RegisterLayout":
        return cls(spec.n, spec.d)

    @property
    def b_size(self) -> int:
        return 2**self.height

    @property
    def spans(self) -> Dict[str, Tuple[int, int]]:
        """(start, length) per register name."""
        b_start = self.n
        c_start = b_start + self.b_size
        d_start = c_start + 2 * self.d
        return {
            "A": (0, self.n),
            "B": (b_start, self.b_size),
            "C": (c_start, 2 * self.d),
            "D": (d_start, self.d),
        }

    @property
    def num_qubits(self) -> int:
        return self.n + self.b_size + 3 * self.d

    @property
    def ancilla(self) -> int:
        return self.num_qubits - self.n

    def _wires(self, name: str) -> Tuple[int, ...]:
        start, length = self.spans[name]
        return tuple(range(start, start + length))

    @property
    def a(self) -> Tuple[int, ...]:
        return self._wires("A")

    @property
    def b(self) -> Tuple[int, ...]:
        return self._wires("B")

    @property
    def c(self) -> Tuple[int, ...]:
        return self._wires("C")

    @property
    def dreg(self) -> Tuple[int, ...]:
        return self._wires("D")

    def __repr__(self) -> str:
        return f"RegisterLayout(n={self.n}, d={self.d}, num_qubits={self.num_qubits})"
