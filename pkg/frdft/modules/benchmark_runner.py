"""
Benchmark Runner Module - Fractional DFT Toolkit

Times the fast apply path and the closed-form matrix path across power-of-two
sizes and derives log-log slopes. The apply path is quasi-linear (slope near
1); building the matrix is cubic, so doubling N should cost about eight times
as much.

Features:
- Median of repeated wall-clock timings per size
- Slopes between consecutive sizes and a least-squares fitted slope per path
- Host CPU count and process memory recorded with each run
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import psutil

from frdft.modules.dft_engine import is_power_of_two
from frdft.modules.errors import InvalidInputError
from frdft.modules.fractional_transform import RAW, FractionalTransform

APPLY = 'apply'
MATRIX = 'matrix'

BENCH_ALPHA = 0.7

# Fewest timed runs the command line accepts per size
MIN_BENCH_REPEATS = 5


@dataclass(frozen=True)
class BenchRecord:
    n: int
    path: str
    seconds: float
    slope: Optional[float] = None


@dataclass(frozen=True)
class BenchReport:
    records: Tuple[BenchRecord, ...]
    repeats: int
    cpu_count: int
    rss_bytes: int

    def for_path(self, path: str) -> List[BenchRecord]:
        return [r for r in self.records if r.path == path]

    def fitted_slope(self, path: str) -> Optional[float]:
        """Least-squares slope of log(seconds) against log(n)."""
        records = self.for_path(path)
        if len(records) < 2:
            return None
        logs_n = np.log([r.n for r in records])
        logs_t = np.log([r.seconds for r in records])
        return float(np.polyfit(logs_n, logs_t, 1)[0])

    def header(self) -> Dict[str, str]:
        info = {
            'repeats': str(self.repeats),
            'cpu_count': str(self.cpu_count),
            'rss_bytes': str(self.rss_bytes),
        }
        for path in (APPLY, MATRIX):
            slope = self.fitted_slope(path)
            if slope is not None:
                info[f'{path}_fitted_slope'] = f'{slope:.4f}'
        return info


class BenchmarkRunner:
    """
    Complexity measurements for the apply and matrix paths.
    """

    def __init__(self, transform: Optional[FractionalTransform] = None,
                 repeats: int = 5, matrix_max: int = 1024,
                 matrix_sizes: Iterable[int] = (), seed: int = 0,
                 clock: Callable[[], float] = time.perf_counter):
        """
        Initialize the runner.

        Args:
            transform (FractionalTransform): Transform under measurement
            repeats (int): Timed runs per size; the median is reported
            matrix_max (int): Largest N for which the matrix path is timed
            matrix_sizes: Extra sizes timed on the matrix path only
            seed (int): Seed for the random input signals
            clock: Monotonic clock in seconds
        """
        self.transform = transform or FractionalTransform()
        self.repeats = max(1, int(repeats))
        self.matrix_max = min(int(matrix_max), self.transform.matrix_size_cap)
        self.matrix_sizes = tuple(int(n) for n in matrix_sizes)
        self.seed = seed
        self.clock = clock
        self.logger = logging.getLogger(__name__)

    @classmethod
    def from_settings(cls, settings, transform: Optional[FractionalTransform] = None,
                      repeats: Optional[int] = None) -> 'BenchmarkRunner':
        return cls(
            transform=transform or FractionalTransform.from_settings(settings),
            repeats=repeats if repeats is not None else settings.bench_repeats,
            matrix_max=settings.bench_matrix_max,
            matrix_sizes=settings.bench_matrix_sizes,
            seed=settings.verify_seed,
        )

    def _median_time(self, run: Callable[[], object]) -> float:
        timings = []
        for _ in range(self.repeats):
            start = self.clock()
            run()
            timings.append(self.clock() - start)
        # Guard against clocks too coarse to see a tiny run
        return max(float(np.median(timings)), 1e-9)

    @staticmethod
    def _validate_sizes(sizes: Iterable[int]) -> List[int]:
        sizes = [int(n) for n in sizes]
        if not sizes:
            raise InvalidInputError("benchmark needs at least one size")
        bad = [n for n in sizes if not is_power_of_two(n)]
        if bad:
            raise InvalidInputError(f"benchmark sizes must be powers of two, got {bad}")
        return sorted(set(sizes))

    @staticmethod
    def _with_slopes(records: List[BenchRecord]) -> List[BenchRecord]:
        out = []
        for previous, current in zip([None] + records[:-1], records):
            slope = None
            if previous is not None:
                slope = math.log(current.seconds / previous.seconds) / math.log(current.n / previous.n)
            out.append(BenchRecord(current.n, current.path, current.seconds, slope))
        return out

    def matrix_ladder(self, sizes: List[int], matrix_sizes: Optional[Iterable[int]] = None) -> List[int]:
        """
        Sizes timed on the matrix path: every apply size up to matrix_max
        plus the dedicated matrix sizes, which are skipped above matrix_max.
        """
        requested = self.matrix_sizes if matrix_sizes is None else tuple(matrix_sizes)
        extra = self._validate_sizes(requested) if requested else []
        skipped = [n for n in extra if n > self.matrix_max]
        if skipped:
            self.logger.warning(f"matrix sizes {skipped} exceed the matrix limit {self.matrix_max}; skipped")
        return sorted({n for n in list(sizes) + extra if n <= self.matrix_max})

    def run(self, sizes: Iterable[int], matrix_sizes: Optional[Iterable[int]] = None) -> BenchReport:
        """
        Time both paths.

        Args:
            sizes: Power-of-two lengths for the apply path
            matrix_sizes: Extra matrix-path lengths; defaults to the runner's own

        Returns:
            BenchReport: Median timings with slopes and host details
        """
        sizes = self._validate_sizes(sizes)
        ladder = self.matrix_ladder(sizes, matrix_sizes)
        rng = np.random.default_rng(self.seed)

        apply_records, matrix_records = [], []
        for n in sizes:
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            seconds = self._median_time(lambda: self.transform.apply(x, BENCH_ALPHA, mode=RAW))
            apply_records.append(BenchRecord(n, APPLY, seconds))
            self.logger.info(f"apply N={n}: {seconds:.6g} s")

        for n in ladder:
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)

            def build_and_apply():
                m = self.transform.matrix(n, BENCH_ALPHA)
                return self.transform.apply_matrix(m, x)

            seconds = self._median_time(build_and_apply)
            matrix_records.append(BenchRecord(n, MATRIX, seconds))
            self.logger.info(f"matrix N={n}: {seconds:.6g} s")

        process = psutil.Process()
        report = BenchReport(
            records=tuple(self._with_slopes(apply_records) + self._with_slopes(matrix_records)),
            repeats=self.repeats,
            cpu_count=psutil.cpu_count(logical=True) or 1,
            rss_bytes=int(process.memory_info().rss),
        )
        self.logger.info(
            f"Benchmark finished: apply slope={report.fitted_slope(APPLY)}, "
            f"matrix slope={report.fitted_slope(MATRIX)}, rss={report.rss_bytes} bytes")
        return report
