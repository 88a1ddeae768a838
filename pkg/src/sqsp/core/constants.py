"""
Shared constants and enumerations.

Tolerances follow a fixed ladder: matrix identities are checked to
`MATRIX_ATOL`, compiled fragments to `FRAGMENT_ATOL` and end-to-end
preparations to `END_TO_END_ATOL`.
"""
import enum

MATRIX_ATOL = 1.0e-12
FRAGMENT_ATOL = 1.0e-10
END_TO_END_ATOL = 1.0e-9

NORM_ATOL = 1.0e-9
RENORMALIZE_LIMIT = 1.0e-3
ZERO_AMPLITUDE = 1.0e-14
ZERO_PROBABILITY = 1.0e-12

DEFAULT_SEED = 0
DEFAULT_MAX_QUBITS = 26
DEFAULT_MAX_MEASUREMENTS = 12

ENV_SEED = "SQSP_SEED"
ENV_LOG_PATH = "SQSP_LOG_PATH"
ENV_MAX_QUBITS = "SQSP_MAX_QUBITS"
ENV_MAX_MEASUREMENTS = "SQSP_MAX_MEASUREMENTS"
ENV_CHECK_NORM = "SQSP_CHECK_NORM"

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_VERIFICATION_FAILURE = 3

BENCH_CSV_HEADER = (
    "n",
    "d",
    "mode",
    "stage",
    "size",
    "quantum_depth",
    "maf_rounds",
    "ancilla",
    "wall_time_ms",
)


class Mode(enum.Enum):
    """Compilation mode of the full pipeline."""

    UNITARY = "unitary"
    MAF = "maf"


class Stage(enum.Enum):
    """Pipeline stage tags carried by every emitted instruction."""

    GQSP = "gqsp"
    ONEHOT = "onehot"
    PERMUTATION = "permutation"
    GARBAGE = "garbage"


class FanoutMode(enum.Enum):
    """
    Realization of a fan-out gate.

    SEQUENTIAL: one CNOT per target.
    TREE: doubling copies, targets must start in |0>.
    UNTREE: TREE run backwards, targets must hold copies of the control.
    MAF: constant-depth block with one measurement round.
    """

    SEQUENTIAL = "seq"
    TREE = "tree"
    UNTREE = "untree"
    MAF = "maf"


class OneHotMode(enum.Enum):
    """Construction used for the one-hot encoding stage."""

    BASELINE = "baseline"
    COPY = "copy"
    MAF = "maf"


class PermutationMode(enum.Enum):
    """Construction used for the permutation stage."""

    ORCX = "orcx"
    PARCX_MAF = "parcx_maf"


class GarbageMode(enum.Enum):
    """Construction used for the garbage elimination stage."""

    COPY = "copy"
    MAF = "maf"
