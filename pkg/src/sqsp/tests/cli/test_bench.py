# pylint: disable=missing-function-docstring, missing-class-docstring
import io
import math

import pytest
from sqsp.cli import bench
from sqsp.cli.bench import BenchRow
from sqsp.core.constants import BENCH_CSV_HEADER
from sqsp.core.constants import Mode


def _row(n, d, mode, stage, depth):
    return BenchRow(n, d, mode, stage, 10, depth, 0, 5, 1.0)


class TestFitLine:
    def test_exact_line(self):
        slope, intercept, r2 = bench.fit_line([1, 2, 3, 4], [3, 5, 7, 9])
        assert math.isclose(slope, 2.0)
        assert math.isclose(intercept, 1.0, abs_tol=1e-9)
        assert math.isclose(r2, 1.0)

    def test_flat_line(self):
        slope, _, r2 = bench.fit_line([4, 8, 16], [12, 12, 12])
        assert math.isclose(slope, 0.0, abs_tol=1e-12)
        assert r2 == 1.0

    @pytest.mark.parametrize("xs", [[3], [2, 2, 2]])
    def test_needs_two_x_values(self, xs):
        with pytest.raises(ValueError):
            bench.fit_line(xs, [1] * len(xs))


class TestSweep:
    def test_sweep_points_drop_oversized_d(self):
        points = bench.sweep_points([2, 3], [4, 8], [Mode.UNITARY])
        assert points == [(2, 4, Mode.UNITARY), (3, 4, Mode.UNITARY), (3, 8, Mode.UNITARY)]

    def test_resolve_jobs(self, monkeypatch):
        assert bench.resolve_jobs(3) == 3
        monkeypatch.setattr("sqsp.cli.bench.psutil.cpu_count", lambda logical=True: None)
        assert bench.resolve_jobs(0) == 1
        monkeypatch.setattr("sqsp.cli.bench.psutil.cpu_count", lambda logical=True: 6)
        assert bench.resolve_jobs(0) == 6
        with pytest.raises(ValueError):
            bench.resolve_jobs(-1)

    def test_bench_point_rows(self):
        rows = bench.bench_point(4, 5, Mode.MAF, seed=1)
        assert [row.stage for row in rows] == ["gqsp", "onehot", "permutation", "garbage", "total"]
        assert all(row.ancilla == 8 + 15 for row in rows)
        assert len({row.wall_time_ms for row in rows}) == 1
        assert rows[-1].maf_rounds == sum(row.maf_rounds for row in rows[:-1])

    def test_sweep_order_and_progress(self):
        seen = []
        points = [(3, 4, Mode.MAF), (3, 2, Mode.UNITARY), (3, 2, Mode.MAF)]
        rows = bench.sweep(points, progress=seen.append)
        assert len(seen) == 3
        keys = [(row.d, row.mode) for row in rows if row.stage == "total"]
        assert keys == [(2, "unitary"), (2, "maf"), (4, "maf")]

    def test_write_csv(self):
        stream = io.StringIO()
        bench.write_csv([_row(6, 4, "maf", "total", 9)], stream)
        lines = stream.getvalue().splitlines()
        assert lines == [",".join(BENCH_CSV_HEADER), "6,4,maf,total,10,9,0,5,1.0"]


class TestPermutationFits:
    def test_reports_both_directions(self):
        rows = [
            _row(n, d, mode, "permutation", n * d if mode == "unitary" else 7)
            for n in (6, 7)
            for d in (4, 8)
            for mode in ("unitary", "maf")
        ]
        lines = bench.permutation_fits(rows)
        assert lines[0].startswith("permutation depth vs n (unitary, d=4): slope=4.0000")
        flat = [line for line in lines if line.startswith("permutation depth vs d (maf, n=6)")]
        assert len(flat) == 1 and flat[0].endswith("r2=1.0000")
        assert len(lines) == 2 + 2 + 2

    def test_skips_single_points(self):
        assert bench.permutation_fits([_row(6, 4, "maf", "permutation", 7)]) == []
