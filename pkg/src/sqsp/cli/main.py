"""
Command-line entry point: `sqsp compile | verify | bench`.

Exit codes: 0 on success, 2 on input errors, 3 when verification fails.
"""
import argparse
import json
import sys
from typing import List
from typing import Optional
from typing import Sequence

from sqsp.circuit.metrics import metrics
from sqsp.circuit.serialize import parse_circuit
from sqsp.circuit.serialize import serialize
from sqsp.cli import bench
from sqsp.core.constants import END_TO_END_ATOL
from sqsp.core.constants import EXIT_INPUT_ERROR
from sqsp.core.constants import EXIT_OK
from sqsp.core.constants import EXIT_VERIFICATION_FAILURE
from sqsp.core.constants import Mode
from sqsp.core.errors import SqspError
from sqsp.core.logging import SqspLogger
from sqsp.core.settings import Settings
from sqsp.core.utils import parse_int_range
from sqsp.core.utils import parse_int_set
from sqsp.pipeline.compiler import compile_sqsp
from sqsp.sim.simulator import OutcomePolicy
from sqsp.sim.simulator import RunResult
from sqsp.sim.simulator import Simulator
from sqsp.state.model import SparseStateSpec
from sqsp.state.model import embed
from sqsp.state.model import parse_state_spec

MODES = ("unitary", "maf")


class CliParams:
    """
    Parsed command-line parameters.

    Attributes:
        command (str): one of "compile", "verify", "bench".
        input (Optional[str]): state spec JSON path.
        mode (str): "unitary" or "maf"; bench also accepts "both".
        out (Optional[str]): circuit output path for compile.
        metrics (Optional[str]): metrics JSON output path for compile.
        circuit (Optional[str]): stored circuit to verify instead of compiling.
        seeds (int): sampled runs per verification.
        exhaustive (bool): enumerate every measurement branch.
        max_measurements (Optional[int]): branch enumeration limit, defaults to SQSP_MAX_MEASUREMENTS.
        n_range (Optional[str]): bench qubit range "a:b".
        d_set (Optional[str]): bench sparsities "4,8,16".
        csv (Optional[str]): bench CSV output path.
        jobs (int): bench worker processes, 0 for one per physical core.
        seed (Optional[int]): sampling/spec seed, defaults to SQSP_SEED.
        log_path (Optional[str]): log directory, defaults to SQSP_LOG_PATH.
    """

    command: str
    input: Optional[str]
    mode: str
    out: Optional[str]
    metrics: Optional[str]
    circuit: Optional[str]
    seeds: int
    exhaustive: bool
    max_measurements: Optional[int]
    n_range: Optional[str]
    d_set: Optional[str]
    csv: Optional[str]
    jobs: int
    seed: Optional[int]
    log_path: Optional[str]

    # pylint: disable=too-many-arguments,too-many-locals
    def __init__(
        self,
        command: str,
        input: Optional[str] = None,  # pylint: disable=redefined-builtin
        mode: str = "unitary",
        out: Optional[str] = None,
        metrics: Optional[str] = None,  # pylint: disable=redefined-outer-name
        circuit: Optional[str] = None,
        seeds: int = 1,
        exhaustive: bool = False,
        max_measurements: Optional[int] = None,
        n_range: Optional[str] = None,
        d_set: Optional[str] = None,
        csv: Optional[str] = None,
        jobs: int = 1,
        seed: Optional[int] = None,
        log_path: Optional[str] = None,
    ) -> None:
        self.command = command
        self.input = input
        self.mode = mode
        self.out = out
        self.metrics = metrics
        self.circuit = circuit
        self.seeds = seeds
        self.exhaustive = exhaustive
        self.max_measurements = max_measurements
        self.n_range = n_range
        self.d_set = d_set
        self.csv = csv
        self.jobs = jobs
        self.seed = seed
        self.log_path = log_path

    @staticmethod
    def parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog="sqsp", description="Sparse quantum state preparation compiler.")
        commands = parser.add_subparsers(dest="command", required=True)

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--log-path", type=str, help="directory of the log file", default=None)
        common.add_argument("--seed", type=int, help="seed (defaults to SQSP_SEED or 0)", default=None)

        compile_cmd = commands.add_parser("compile", parents=[common], help="compile a state spec")
        compile_cmd.add_argument("--input", type=str, required=True, help="state spec JSON")
        compile_cmd.add_argument("--mode", choices=MODES, default="unitary")
        compile_cmd.add_argument("--out", type=str, default=None, help="circuit output (stdout if omitted)")
        compile_cmd.add_argument("--metrics", type=str, default=None, help="metrics JSON output")

        verify_cmd = commands.add_parser("verify", parents=[common], help="simulate and check fidelity")
        verify_cmd.add_argument("--input", type=str, required=True, help="state spec JSON")
        verify_cmd.add_argument("--mode", choices=MODES, default="unitary")
        verify_cmd.add_argument("--circuit", type=str, default=None, help="stored circuit to check")
        runs = verify_cmd.add_mutually_exclusive_group()
        runs.add_argument("--seeds", type=int, default=1, help="number of sampled runs")
        runs.add_argument("--exhaustive", action="store_true", help="enumerate every measurement branch")
        verify_cmd.add_argument(
            "--max-measurements",
            type=int,
            default=None,
            help="largest MEASURE count --exhaustive expands (defaults to SQSP_MAX_MEASUREMENTS or 12)",
        )

        bench_cmd = commands.add_parser("bench", parents=[common], help="compile a sweep and report metrics")
        bench_cmd.add_argument("--n-range", type=str, required=True, help="qubit range like 6:14")
        bench_cmd.add_argument("--d-set", type=str, required=True, help="sparsities like 4,8,16")
        bench_cmd.add_argument("--mode", choices=MODES + ("both",), default="both")
        bench_cmd.add_argument("--csv", type=str, default=None, help="CSV output (stdout if omitted)")
        bench_cmd.add_argument("--jobs", type=int, default=1, help="worker processes, 0 for all cores")
        return parser

    @classmethod
    def parse(cls, argv: Optional[Sequence[str]] = None) -> "CliParams":
        """
        Parses command-line arguments into a CliParams instance.

        Note:
            argparse exits with status 2 on unknown or malformed arguments.
        """
        args = cls.parser().parse_args(argv)
        return cls(
            args.command,
            input=getattr(args, "input", None),
            mode=args.mode,
            out=getattr(args, "out", None),
            metrics=getattr(args, "metrics", None),
            circuit=getattr(args, "circuit", None),
            seeds=getattr(args, "seeds", 1),
            exhaustive=getattr(args, "exhaustive", False),
            max_measurements=getattr(args, "max_measurements", None),
            n_range=getattr(args, "n_range", None),
            d_set=getattr(args, "d_set", None),
            csv=getattr(args, "csv", None),
            jobs=getattr(args, "jobs", 1),
            seed=args.seed,
            log_path=args.log_path,
        )


def _read_spec(path: str) -> SparseStateSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_state_spec(handle.read())


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_compile(params: CliParams, logger: SqspLogger) -> int:
    spec = _read_spec(params.input)
    circuit = compile_sqsp(spec, Mode(params.mode))
    result = metrics(circuit)
    _write(params.out, serialize(circuit))
    if params.metrics is not None:
        _write(params.metrics, result.to_json() + "\n")
    logger.info(f"compiled n={spec.n} d={spec.d} mode={params.mode}: {result!r}")
    return EXIT_OK


def cmd_verify(params: CliParams, settings: Settings, logger: SqspLogger) -> int:
    spec = _read_spec(params.input)
    if params.circuit is not None:
        with open(params.circuit, "r", encoding="utf-8") as handle:
            circuit = parse_circuit(handle.read())
    else:
        circuit = compile_sqsp(spec, Mode(params.mode))

    limit = settings.max_measurements if params.max_measurements is None else params.max_measurements
    if limit < 0:
        raise ValueError(f"--max-measurements must not be negative, got {limit}.")
    simulator = Simulator(settings.max_qubits, limit, settings.check_norm)
    target = embed(spec)
    echo = metrics(circuit)
    if params.exhaustive:
        results = simulator.enumerate_branches(circuit, target=target, metrics=echo)
    else:
        if params.seeds < 1:
            raise ValueError(f"--seeds must be positive, got {params.seeds}.")
        base = settings.seed if params.seed is None else params.seed
        results = [
            simulator.run(circuit, OutcomePolicy.sample(base + offset), target=target, metrics=echo)
            for offset in range(params.seeds)
        ]

    worst: RunResult = min(results, key=lambda result: result.fidelity)
    residual = max(result.ancilla_residual for result in results)
    print(f"runs: {len(results)}")
    print(f"min fidelity: {worst.fidelity!r}")
    print(f"max ancilla residual: {residual!r}")
    logger.info(f"verified n={spec.n} d={spec.d} mode={params.mode}: min fidelity {worst.fidelity!r}")

    if worst.fidelity < 1.0 - END_TO_END_ATOL:
        print(f"worst branch outcomes: {worst.outcomes!r}")
        logger.error(f"verification failed on branch {worst.outcomes!r}")
        return EXIT_VERIFICATION_FAILURE
    return EXIT_OK


def cmd_bench(params: CliParams, settings: Settings, logger: SqspLogger) -> int:
    low, high = parse_int_range(params.n_range)
    d_values = parse_int_set(params.d_set)
    if low < 1 or min(d_values) < 1:
        raise ValueError("Sweep values must be positive.")
    modes = [Mode.UNITARY, Mode.MAF] if params.mode == "both" else [Mode(params.mode)]
    seed = settings.seed if params.seed is None else params.seed

    def progress(rows: List[bench.BenchRow]) -> None:
        total = rows[-1]
        logger.info(
            f"bench n={total.n} d={total.d} mode={total.mode}: size={total.size} "
            f"depth={total.quantum_depth} rounds={total.maf_rounds} ({total.wall_time_ms} ms)"
        )

    points = bench.sweep_points(range(low, high + 1), d_values, modes)
    rows = bench.sweep(points, seed=seed, jobs=params.jobs, progress=progress)

    if params.csv is None:
        bench.write_csv(rows, sys.stdout)
    else:
        with open(params.csv, "w", encoding="utf-8", newline="") as handle:
            bench.write_csv(rows, handle)
    for line in bench.permutation_fits(rows):
        print(line)
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch the command and map failures to exit codes."""
    try:
        params = CliParams.parse(argv)
    except SystemExit as err:
        return int(err.code) if isinstance(err.code, int) else EXIT_INPUT_ERROR

    try:
        settings = Settings()
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        logger = SqspLogger(log_path=params.log_path)
        logger.error(f"sqsp {params.command} configuration error: {err}")
        logger.close()
        return EXIT_INPUT_ERROR

    logger = SqspLogger(log_path=params.log_path or settings.log_path)
    logger.info(f"sqsp {params.command} started")
    try:
        if params.command == "compile":
            code = cmd_compile(params, logger)
        elif params.command == "verify":
            code = cmd_verify(params, settings, logger)
        else:
            code = cmd_bench(params, settings, logger)
    except (SqspError, ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        logger.error(f"sqsp {params.command} failed: {err}")
        code = EXIT_INPUT_ERROR
    finally:
        logger.info(f"sqsp {params.command} finished")
        logger.close()
    return code


if __name__ == "__main__":
    sys.exit(run())
