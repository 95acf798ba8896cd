"""
Chirp Lab Module - Fractional DFT Toolkit

This module generates tones and chirps, measures how localized a signal is,
and sweeps the rotation angle to find where a chirp collapses to a peak.

A chirp with rate q is a slanted line f = f0 + q t in the (t, f) plane. The
rotation that turns this line vertical, and so concentrates the chirp into
a few output bins, is alpha = pi/2 - arctan(q); the sweep locates the same
angle numerically.

Features:
- Tone, chirp and delta generators
- Peak-window concentration and inverse participation ratio
- Angle prediction from the 2x2 model
- Localization sweeps over an angle grid, optionally threaded
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from frdft.modules.dft_engine import Signal, as_signal, energy
from frdft.modules.errors import FrdftError, InvalidInputError
from frdft.modules.fractional_transform import RAW, FractionalTransform, quadratic_phase


@dataclass(frozen=True)
class SweepResult:
    """Concentration measured at each grid angle, in grid order."""
    grid: Tuple[float, ...]
    concentration: Tuple[float, ...]
    argmax_alpha: float
    window: int = 1
    failed: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def peak_concentration(self) -> float:
        return self.concentration[self.grid.index(self.argmax_alpha)]

    @property
    def step(self) -> float:
        if len(self.grid) < 2:
            return 0.0
        return (self.grid[-1] - self.grid[0]) / (len(self.grid) - 1)


def _check_length(n: int) -> int:
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"signal length must be at least 1, got {n}")
    return n


def make_tone(n: int, f0: float) -> Signal:
    """x_j = exp(-2 pi i f0 j / n), f0 in cycles per record."""
    n = _check_length(n)
    j = np.arange(n, dtype=np.float64)
    return np.exp(-2j * np.pi * f0 * j / n)


def make_chirp(n: int, f0: float, q: float) -> Signal:
    """Tone at f0 sheared by the quadratic phase of rate q."""
    return quadratic_phase(make_tone(n, f0), q)


def make_delta(n: int, position: int = 0) -> Signal:
    n = _check_length(n)
    x = np.zeros(n, dtype=np.complex128)
    x[int(position) % n] = 1.0
    return x


def concentration(x: Any, window: int = 1) -> float:
    """
    Largest fraction of the total energy inside any cyclic window of
    `window` consecutive bins.

    Args:
        x: Signal
        window (int): Window width, 1 <= window <= N

    Returns:
        float: Value in (0, 1]
    """
    arr = as_signal(x)
    n = arr.shape[0]
    window = int(window)
    if not 1 <= window <= n:
        raise InvalidInputError(f"window must be between 1 and {n}, got {window}")

    power = arr.real ** 2 + arr.imag ** 2
    total = float(np.sum(power))
    if total == 0.0:
        raise InvalidInputError("concentration of a zero-energy signal is undefined")

    if window == 1:
        best = float(np.max(power))
    else:
        wrapped = np.concatenate([power, power[:window - 1]])
        sums = np.convolve(wrapped, np.ones(window), mode='valid')[:n]
        best = float(np.max(sums))
    return min(1.0, best / total)


def participation_ratio(x: Any) -> float:
    """sum |x|^4 / (sum |x|^2)^2: 1 for a delta, 1/N for a flat signal."""
    arr = as_signal(x)
    power = arr.real ** 2 + arr.imag ** 2
    total = float(np.sum(power))
    if total == 0.0:
        raise InvalidInputError("participation ratio of a zero-energy signal is undefined")
    return float(np.sum(power ** 2)) / total ** 2


def predicted_angle(q: float) -> float:
    """Angle at which rotation(alpha) maps the chirp direction (1, q) to vertical."""
    if not math.isfinite(q):
        raise InvalidInputError(f"chirp rate must be finite, got {q!r}")
    return math.pi / 2.0 - math.atan(q)


def uniform_grid(start: float, stop: float, count: int) -> List[float]:
    count = int(count)
    if count < 1:
        raise InvalidInputError(f"grid needs at least one point, got {count}")
    if count == 1:
        if start != stop:
            raise InvalidInputError("a one-point grid needs start == stop")
        return [float(start)]
    if not start < stop:
        raise InvalidInputError(f"grid start {start!r} must be below stop {stop!r}")
    return [float(a) for a in np.linspace(start, stop, count)]


def default_grid(settings=None) -> List[float]:
    """181 uniform points on (0.01, pi - 0.01) unless the settings say otherwise."""
    if settings is None:
        return uniform_grid(0.01, math.pi - 0.01, 181)
    return uniform_grid(settings.sweep_start, settings.sweep_stop, settings.sweep_points)


class ChirpLab:
    """
    Localization sweeps of a signal across rotation angles.
    """

    def __init__(self, transform: Optional[FractionalTransform] = None, workers: int = 1):
        """
        Initialize the lab.

        Args:
            transform (FractionalTransform): Transform used at each grid point
            workers (int): Threads used to evaluate grid points
        """
        self.transform = transform or FractionalTransform()
        self.workers = max(1, int(workers))
        self.logger = logging.getLogger(__name__)

    @classmethod
    def from_settings(cls, settings, transform: Optional[FractionalTransform] = None) -> 'ChirpLab':
        return cls(transform=transform or FractionalTransform.from_settings(settings),
                   workers=settings.sweep_workers)

    def localization_sweep(self, x: Any, grid: Sequence[float], window: int = 1) -> SweepResult:
        """
        Concentration of the raw-mode transform at every grid angle.

        Args:
            x: Signal to sweep
            grid: Strictly increasing angles in radians
            window (int): Concentration window

        Returns:
            SweepResult: Per-angle concentration; points whose transform
            failed hold NaN and are listed in `failed`
        """
        arr = as_signal(x)
        grid = tuple(float(a) for a in grid)
        if not grid:
            raise InvalidInputError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidInputError("sweep grid must be strictly increasing")
        if energy(arr) == 0.0:
            raise InvalidInputError("cannot sweep a zero-energy signal")
        if not 1 <= int(window) <= arr.shape[0]:
            raise InvalidInputError(f"window must be between 1 and {arr.shape[0]}, got {window}")

        def evaluate(alpha: float) -> float:
            try:
                return concentration(self.transform.apply(arr, alpha, mode=RAW), window)
            except FrdftError as e:
                self.logger.warning(f"Sweep point alpha={alpha!r} failed: {e}")
                return math.nan

        if self.workers == 1:
            values = [evaluate(alpha) for alpha in grid]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                values = list(pool.map(evaluate, grid))

        failed = tuple(alpha for alpha, value in zip(grid, values) if math.isnan(value))
        if len(failed) == len(grid):
            raise InvalidInputError("every sweep point failed")

        # First maximum wins, so ties go to the smallest angle
        best_index = max(
            (i for i, value in enumerate(values) if not math.isnan(value)),
            key=lambda i: (values[i], -i),
        )
        result = SweepResult(
            grid=grid,
            concentration=tuple(values),
            argmax_alpha=grid[best_index],
            window=int(window),
            failed=failed,
        )
        self.logger.info(
            f"Sweep over {len(grid)} angles finished: argmax alpha={result.argmax_alpha:.6f}, "
            f"concentration={values[best_index]:.6f}, failed points={len(failed)}")
        return result
