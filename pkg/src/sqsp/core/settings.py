"""Environment-driven configuration."""
import os
from typing import Optional

from sqsp.core.constants import DEFAULT_MAX_MEASUREMENTS
from sqsp.core.constants import DEFAULT_MAX_QUBITS
from sqsp.core.constants import DEFAULT_SEED
from sqsp.core.constants import ENV_CHECK_NORM
from sqsp.core.constants import ENV_LOG_PATH
from sqsp.core.constants import ENV_MAX_MEASUREMENTS
from sqsp.core.constants import ENV_MAX_QUBITS
from sqsp.core.constants import ENV_SEED
from sqsp.core.utils import string_to_bool


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value, 0)
    except ValueError as err:
        raise ValueError(f"Environment variable {name}={value!r} is not an integer.") from err


class Settings:
    """
    Run settings resolved from the environment at construction time.

    Attributes:
        seed (int): default sampling seed, overridden by `SQSP_SEED`.
        log_path (Optional[str]): log directory, from `SQSP_LOG_PATH`.
        max_qubits (int): dense simulator wire limit, from `SQSP_MAX_QUBITS`.
        max_measurements (int): branch enumeration limit, from `SQSP_MAX_MEASUREMENTS`.
        check_norm (bool): verify the state norm after every gate, from `SQSP_CHECK_NORM`.
    """

    seed: int
    log_path: Optional[str]
    max_qubits: int
    max_measurements: int
    check_norm: bool

    def __init__(self) -> None:
        self.seed = _env_int(ENV_SEED, DEFAULT_SEED)
        self.log_path = os.environ.get(ENV_LOG_PATH)
        self.max_qubits = _env_int(ENV_MAX_QUBITS, DEFAULT_MAX_QUBITS)
        self.max_measurements = _env_int(ENV_MAX_MEASUREMENTS, DEFAULT_MAX_MEASUREMENTS)

        try:
            self.check_norm = string_to_bool(os.environ.get(ENV_CHECK_NORM, "false"))
        except TypeError as err:
            raise ValueError(f"{ENV_CHECK_NORM} must be true/false or 1/0.") from err

        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError(f"{ENV_SEED} must be a 64-bit unsigned integer, got {self.seed}.")
