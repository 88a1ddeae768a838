"""
Compilation sweeps and scaling fits for `sqsp bench`.

Sweep points compile without simulation, optionally in a process pool.
Rows come back in (n, d, mode, stage) order whatever the completion order.
"""
import csv
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import TextIO
from typing import Tuple

import numpy as np
import psutil

from sqsp.circuit.metrics import metrics
from sqsp.core.constants import BENCH_CSV_HEADER
from sqsp.core.constants import Mode
from sqsp.core.constants import Stage
from sqsp.pipeline.compiler import compile_sqsp
from sqsp.state.model import random_spec

TOTAL = "total"
_STAGE_ORDER = {stage.value: position for position, stage in enumerate(Stage)}
_STAGE_ORDER[TOTAL] = len(_STAGE_ORDER)
_MODE_ORDER = {Mode.UNITARY.value: 0, Mode.MAF.value: 1}


class BenchRow:
    """One CSV row: metrics of one stage of one compiled sweep point."""

    __slots__ = BENCH_CSV_HEADER

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        n: int,
        d: int,
        mode: str,
        stage: str,
        size: int,
        quantum_depth: int,
        maf_rounds: int,
        ancilla: int,
        wall_time_ms: float,
    ) -> None:
        self.n = n
        self.d = d
        self.mode = mode
        self.stage = stage
        self.size = size
        self.quantum_depth = quantum_depth
        self.maf_rounds = maf_rounds
        self.ancilla = ancilla
        self.wall_time_ms = wall_time_ms

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.n, self.d, _MODE_ORDER[self.mode], _STAGE_ORDER[self.stage])

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, field) for field in BENCH_CSV_HEADER)

    def __repr__(self) -> str:
        return f"BenchRow(n={self.n}, d={self.d}, mode={self.mode}, stage={self.stage})"


def bench_point(n: int, d: int, mode: Mode, seed: int = 0) -> List[BenchRow]:
    """Compile one random (n, d) spec and report every stage plus the total."""
    spec = random_spec(n, d, seed=seed)
    start = time.perf_counter()
    circuit = compile_sqsp(spec, mode)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    result = metrics(circuit)

    rows = []
    for stage, part in list(result.per_stage.items()) + [(TOTAL, result)]:
        rows.append(
            BenchRow(
                n,
                d,
                mode.value,
                stage,
                part.size,
                part.quantum_depth,
                part.maf_rounds,
                part.ancilla,
                round(elapsed_ms, 3),
            )
        )
    return rows


def _bench_point_args(args: Tuple[int, int, Mode, int]) -> List[BenchRow]:
    return bench_point(*args)


def sweep_points(
    n_values: Iterable[int], d_values: Iterable[int], modes: Sequence[Mode]
) -> List[Tuple[int, int, Mode]]:
    """Every (n, d, mode) with 1 <= d <= 2^n."""
    return [(n, d, mode) for n in n_values for d in d_values for mode in modes if 1 <= d <= 2**n]


def resolve_jobs(jobs: int) -> int:
    """Worker count; 0 means one per physical core."""
    if jobs < 0:
        raise ValueError(f"Job count must be nonnegative, got {jobs}.")
    if jobs == 0:
        return psutil.cpu_count(logical=False) or 1
    return jobs


def sweep(
    points: Sequence[Tuple[int, int, Mode]],
    seed: int = 0,
    jobs: int = 1,
    progress=None,
) -> List[BenchRow]:
    """
    Compile every sweep point and collect its rows in deterministic order.

    :param progress: optional callable receiving each point's rows as they finish.
    """
    tasks = [(n, d, mode, seed) for n, d, mode in points]
    workers = resolve_jobs(jobs)
    rows: List[BenchRow] = []
    if workers == 1 or len(tasks) <= 1:
        results = map(_bench_point_args, tasks)
        for point_rows in results:
            if progress is not None:
                progress(point_rows)
            rows.extend(point_rows)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for point_rows in executor.map(_bench_point_args, tasks):
                if progress is not None:
                    progress(point_rows)
                rows.extend(point_rows)
    rows.sort(key=lambda row: row.sort_key)
    return rows


def write_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BENCH_CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_tuple())


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float]:
    """
    Least-squares line through the points.

    :return: (slope, intercept, r2); r2 is 1.0 when every y is equal.
    :raises ValueError: with fewer than two distinct x values.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or np.unique(x).size < 2:
        raise ValueError("A line fit needs at least two distinct x values.")
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if total == 0.0 else 1.0 - residual / total
    return float(slope), float(intercept), r2


def _select(rows: Iterable[BenchRow], stage: str, mode: str) -> List[BenchRow]:
    return [row for row in rows if row.stage == stage and row.mode == mode]


def permutation_fits(rows: Sequence[BenchRow]) -> List[str]:
    """
    Report lines for the permutation-stage depth slopes: against n at each
    fixed d (unitary), and against d at each fixed n (both modes).
    """
    stage = Stage.PERMUTATION.value
    lines: List[str] = []

    unitary = _select(rows, stage, Mode.UNITARY.value)
    for d in sorted({row.d for row in unitary}):
        points = [(row.n, row.quantum_depth) for row in unitary if row.d == d]
        line = _fit_report(points, f"permutation depth vs n (unitary, d={d})")
        if line is not None:
            lines.append(line)

    for mode in (Mode.UNITARY.value, Mode.MAF.value):
        selected = _select(rows, stage, mode)
        for n in sorted({row.n for row in selected}):
            points = [(row.d, row.quantum_depth) for row in selected if row.n == n]
            line = _fit_report(points, f"permutation depth vs d ({mode}, n={n})")
            if line is not None:
                lines.append(line)
    return lines


def _fit_report(points: List[Tuple[int, int]], label: str) -> Optional[str]:
    try:
        slope, intercept, r2 = fit_line([p[0] for p in points], [p[1] for p in points])
    except ValueError:
        return None
    return f"{label}: slope={slope:.4f} intercept={intercept:.4f} r2={r2:.4f}"
