"""
Fractional Transform Module - Fractional DFT Toolkit

This module implements the fractional DFT F(alpha), a rotation by alpha in the
time-frequency plane, in two independent ways:

1. The fast five-step chirp path

       F(alpha) = A(q1) B^-1 A(q2) B A(q1),   q1 = tan(alpha/2), q2 = sin(alpha)

   where A(q) multiplies sample j by exp(-i pi q j^2 / N) and B is the unitary
   DFT. Cost is that of three FFTs plus O(N) phase multiplies.

2. The closed-form matrix, each entry an N-term sum

       F_jk = (1/N) exp(-i pi q1 (j^2 + k^2) / N)
              * sum_m exp(-i pi (q2 m^2 + 2 m (k - j)) / N)

   built naively in O(N^3); it is the verification oracle, not a fast path.

It also carries the quadratic exponential sums S_k = sum_{s=k}^{k+N-1} zeta^(s^2),
zeta = exp(-i pi / N), which are independent of k for even N, and the unit
phase sigma = S_0 / sqrt(N) relating F(pi/2) to the ordinary DFT.

Features:
- Raw mode (faithful five-step path, alpha in (-pi, pi))
- Decomposed mode (exact quarter turns plus a raw residual, any real alpha)
- Closed-form and explicit-product matrix oracles
- Root sums, sigma and angle reduction
- Unitarity and additivity diagnostics
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import numpy.typing as npt

from frdft.modules.dft_engine import DFTEngine, Signal, as_signal
from frdft.modules.errors import (
    ConditioningError,
    InvalidInputError,
    ResourceCapError,
    UnsupportedParityError,
)

DEFAULT_CONDITIONING_BOUND = 1e8
DEFAULT_MATRIX_SIZE_CAP = 4096

# Upper bound on the temporary (k, m) block built per matrix row chunk
_MATRIX_CHUNK_ELEMENTS = 1 << 20

RAW = 'raw'
DECOMPOSED = 'decomposed'
MODES = (RAW, DECOMPOSED)


@dataclass(frozen=True)
class ChirpRates:
    """Chirp rates of the five-step path for one rotation angle."""
    q1: float
    q2: float


@dataclass(frozen=True)
class AngleDecomposition:
    """alpha = quarter_turns * pi/2 + residual (mod 2 pi), residual in [-pi/4, pi/4)."""
    quarter_turns: int
    residual: float


@dataclass(frozen=True)
class RootSum:
    """Quadratic exponential sum S_k for length n."""
    n: int
    k: int
    value: complex

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0


@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """Dense square complex matrix, entries[j, k] = M_jk."""
    n: int
    entries: npt.NDArray[np.complex128]

    def __post_init__(self):
        if self.entries.shape != (self.n, self.n):
            raise InvalidInputError(
                f"transform matrix must be {self.n}x{self.n}, got shape {self.entries.shape}")
        if not np.all(np.isfinite(self.entries)):
            raise InvalidInputError("transform matrix has non-finite entries")

    @classmethod
    def from_array(cls, entries: Any) -> 'TransformMatrix':
        arr = np.array(entries, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"transform matrix must be square, got shape {arr.shape}")
        return cls(n=arr.shape[0], entries=arr)

    def conj_transpose(self) -> 'TransformMatrix':
        return TransformMatrix(n=self.n, entries=self.entries.conj().T.copy())

    def __matmul__(self, other: 'TransformMatrix') -> 'TransformMatrix':
        if not isinstance(other, TransformMatrix):
            return NotImplemented
        if other.n != self.n:
            raise InvalidInputError(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        return TransformMatrix(n=self.n, entries=self.entries @ other.entries)


def chirp_rates(alpha: float, conditioning_bound: float = DEFAULT_CONDITIONING_BOUND) -> ChirpRates:
    """
    Map a rotation angle to the chirp rates (tan(alpha/2), sin(alpha)).

    Args:
        alpha (float): Rotation angle in radians, within (-pi, pi)
        conditioning_bound (float): Largest accepted |tan(alpha/2)|

    Returns:
        ChirpRates: (q1, q2)
    """
    if not math.isfinite(alpha):
        raise InvalidInputError(f"rotation angle must be finite, got {alpha!r}")
    if not -math.pi < alpha < math.pi:
        raise ConditioningError(
            f"alpha={alpha!r} is outside (-pi, pi); the raw path needs "
            f"|tan(alpha/2)| <= {conditioning_bound:g} (use decomposed mode)")

    q1 = math.tan(alpha / 2.0)
    if not abs(q1) <= conditioning_bound:
        raise ConditioningError(
            f"alpha={alpha!r} too close to +-pi: |tan(alpha/2)|={abs(q1):.6g} exceeds the "
            f"conditioning bound {conditioning_bound:g}")
    return ChirpRates(q1=q1, q2=math.sin(alpha))


def quadratic_phase(x: Any, q: float) -> Signal:
    """
    Multiply sample j by exp(-i pi q j^2 / N).

    A 2-D input is treated as a batch of column signals.
    """
    arr = as_signal(x, allow_batch=True)
    n = arr.shape[0]
    j = np.arange(n, dtype=np.int64)
    phase = np.exp(-1j * np.pi * q * (j * j).astype(np.float64) / n)
    if arr.ndim == 2:
        phase = phase[:, np.newaxis]
    return arr * phase


def reduce_angle(alpha: float) -> AngleDecomposition:
    """
    Split alpha into quarter turns and a residual in [-pi/4, pi/4).

    The quarter-turn count is reduced modulo 4.
    """
    if not math.isfinite(alpha):
        raise InvalidInputError(f"rotation angle must be finite, got {alpha!r}")

    # Exact reduction into [-pi, pi] first; large angles would otherwise
    # lose the residual to cancellation
    alpha = math.remainder(alpha, 2.0 * math.pi)

    half_pi = math.pi / 2.0
    quarter = math.floor((alpha + math.pi / 4.0) / half_pi)
    residual = alpha - quarter * half_pi

    # floor() of a rounded quotient can land one step off at the boundaries
    if residual >= math.pi / 4.0:
        residual -= half_pi
        quarter += 1
    elif residual < -math.pi / 4.0:
        residual += half_pi
        quarter -= 1

    return AngleDecomposition(quarter_turns=quarter % 4, residual=residual)


def root_sum(n: int, k: int) -> RootSum:
    """
    S_k = sum_{s=k}^{k+n-1} exp(-i pi s^2 / n), summed term by term.

    s^2 is reduced modulo 2n in integer arithmetic first, so every term is
    an exactly indexed 2n-th root of unity.
    """
    n, k = int(n), int(k)
    if n < 1:
        raise InvalidInputError(f"root sum length must be at least 1, got {n}")

    s = np.arange(k, k + n, dtype=np.int64)
    residues = (s * s) % (2 * n)
    terms = np.exp(-1j * np.pi * residues / n)
    return RootSum(n=n, k=k, value=complex(np.sum(terms)))


def sigma(n: int) -> complex:
    """
    Unit-modulus phase S_0 / sqrt(n) with F(pi/2) = sigma * B.

    Only defined for even n.
    """
    n = int(n)
    if n < 1:
        raise InvalidInputError(f"length must be at least 1, got {n}")
    if n % 2:
        raise UnsupportedParityError(
            f"sigma is only defined for even N (the root sums are shift invariant "
            f"only then), got N={n}")
    return root_sum(n, 0).value / math.sqrt(n)


def unitarity_deviation(m: TransformMatrix) -> float:
    """max |(M M^dagger)_jk - delta_jk|"""
    gram = m.entries @ m.entries.conj().T
    return float(np.max(np.abs(gram - np.eye(m.n))))


class FractionalTransform:
    """
    Fractional DFT on complex signals, with its matrix oracles.
    """

    def __init__(self, engine: Optional[DFTEngine] = None,
                 conditioning_bound: float = DEFAULT_CONDITIONING_BOUND,
                 matrix_size_cap: int = DEFAULT_MATRIX_SIZE_CAP,
                 matrix_workers: int = 1):
        """
        Initialize the transform.

        Args:
            engine (DFTEngine): DFT engine used by the fast path
            conditioning_bound (float): Largest accepted |tan(alpha/2)| in raw mode
            matrix_size_cap (int): Largest N for dense matrices
            matrix_workers (int): Threads used to build matrix rows
        """
        self.engine = engine or DFTEngine()
        self.conditioning_bound = conditioning_bound
        self.matrix_size_cap = matrix_size_cap
        self.matrix_workers = max(1, int(matrix_workers))
        self.logger = logging.getLogger(__name__)

    @classmethod
    def from_settings(cls, settings, engine: Optional[DFTEngine] = None) -> 'FractionalTransform':
        return cls(
            engine=engine,
            conditioning_bound=settings.conditioning_bound,
            matrix_size_cap=settings.matrix_size_cap,
            matrix_workers=settings.matrix_workers,
        )

    def chirp_rates(self, alpha: float) -> ChirpRates:
        return chirp_rates(alpha, self.conditioning_bound)

    # Fast path

    def apply(self, x: Any, alpha: float, mode: str = RAW) -> Signal:
        """
        Apply F(alpha) to a signal.

        Args:
            x: Signal, or a 2-D batch transformed column by column
            alpha (float): Rotation angle in radians
            mode (str): 'raw' runs the five steps at alpha itself;
                'decomposed' reduces alpha to quarter turns plus a residual
                and applies exact DFT powers for the quarter turns

        Returns:
            Signal: Transformed samples, same shape as x
        """
        arr = as_signal(x, allow_batch=True)

        if mode == RAW:
            return self._apply_raw(arr, alpha)

        if mode == DECOMPOSED:
            decomposition = reduce_angle(alpha)
            self.logger.debug(
                f"decomposed alpha={alpha!r}: {decomposition.quarter_turns} quarter turns, "
                f"residual {decomposition.residual!r}")
            if decomposition.residual != 0.0:
                arr = self._apply_raw(arr, decomposition.residual)
            return self.engine.dft_power(arr, decomposition.quarter_turns)

        raise InvalidInputError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")

    def _apply_raw(self, arr: Signal, alpha: float) -> Signal:
        rates = self.chirp_rates(alpha)
        y = quadratic_phase(arr, rates.q1)
        y = self.engine.dft(y)
        y = quadratic_phase(y, rates.q2)
        y = self.engine.idft(y)
        return quadratic_phase(y, rates.q1)

    def inverse(self, x: Any, alpha: float) -> Signal:
        """Exact inverse of raw mode: F(-alpha)."""
        return self.apply(x, -alpha, mode=RAW)

    # Matrix path

    def _check_dimension(self, n: int) -> int:
        n = int(n)
        if n < 1:
            raise InvalidInputError(f"matrix dimension must be at least 1, got {n}")
        if n > self.matrix_size_cap:
            raise ResourceCapError(
                f"matrix dimension {n} exceeds the size cap {self.matrix_size_cap} "
                f"(override with FRFT_MATRIX_CAP)")
        return n

    def matrix(self, n: int, alpha: float) -> TransformMatrix:
        """
        Closed-form F(alpha), one N-term sum per entry.

        Rows are independent and may be built on several threads; the
        summation order inside an entry depends only on N, so the result
        does not depend on the number of workers.
        """
        n = self._check_dimension(n)
        rates = self.chirp_rates(alpha)

        idx = np.arange(n, dtype=np.int64)
        outer_phase = np.exp(-1j * np.pi * rates.q1 * (idx * idx).astype(np.float64) / n)
        inner_chirp = np.exp(-1j * np.pi * rates.q2 * (idx * idx).astype(np.float64) / n)
        # exp(-2 pi i r / N), indexed by m (k - j) mod N
        roots = np.exp(-2j * np.pi * idx / n)
        chunk = max(1, _MATRIX_CHUNK_ELEMENTS // n)

        def build_row(j: int) -> npt.NDArray[np.complex128]:
            row = np.empty(n, dtype=np.complex128)
            for start in range(0, n, chunk):
                k = idx[start:start + chunk]
                residues = ((k - j)[:, np.newaxis] * idx[np.newaxis, :]) % n
                row[start:start + chunk] = np.sum(roots[residues] * inner_chirp, axis=1)
            return row * outer_phase * (outer_phase[j] / n)

        self.logger.debug(f"building closed-form F({alpha!r}) for N={n} on {self.matrix_workers} worker(s)")
        if self.matrix_workers == 1:
            rows = [build_row(j) for j in range(n)]
        else:
            with ThreadPoolExecutor(max_workers=self.matrix_workers) as pool:
                rows = list(pool.map(build_row, range(n)))

        return TransformMatrix(n=n, entries=np.vstack(rows))

    def phase_matrix(self, n: int, q: float) -> TransformMatrix:
        """Diagonal A(q), entries exp(-i pi q j^2 / N)."""
        n = self._check_dimension(n)
        return TransformMatrix(n=n, entries=np.diag(quadratic_phase(np.ones(n), q)))

    def dft_matrix(self, n: int) -> TransformMatrix:
        n = self._check_dimension(n)
        return TransformMatrix(n=n, entries=self.engine.dft_matrix(n))

    def product_matrix(self, n: int, alpha: float) -> TransformMatrix:
        """F(alpha) as the explicit product A(q1) B^-1 A(q2) B A(q1)."""
        rates = self.chirp_rates(alpha)
        a1 = self.phase_matrix(n, rates.q1)
        a2 = self.phase_matrix(n, rates.q2)
        b = self.dft_matrix(n)
        return a1 @ b.conj_transpose() @ a2 @ b @ a1

    @staticmethod
    def apply_matrix(m: TransformMatrix, x: Any) -> Signal:
        """y_j = sum_k M_jk x_k"""
        arr = as_signal(x, allow_batch=True)
        if arr.shape[0] != m.n:
            raise InvalidInputError(f"matrix is {m.n}x{m.n} but the signal has length {arr.shape[0]}")
        return m.entries @ arr

    # Diagnostics

    def additivity_deviation(self, n: int, alpha: float, beta: float) -> float:
        """
        max |F(alpha) F(beta) - F(alpha + beta)| on the matrix path.

        Measured only; nothing guarantees the discrete transform is additive.
        """
        composed = self.matrix(n, alpha) @ self.matrix(n, beta)
        direct = self.matrix(n, alpha + beta)
        return float(np.max(np.abs(composed.entries - direct.entries)))


_default_transform: Optional[FractionalTransform] = None


def _transform() -> FractionalTransform:
    global _default_transform
    if _default_transform is None:
        _default_transform = FractionalTransform()
    return _default_transform


def frdft_apply(x: Any, alpha: float, mode: str = RAW) -> Signal:
    return _transform().apply(x, alpha, mode)


def frdft_matrix(n: int, alpha: float) -> TransformMatrix:
    return _transform().matrix(n, alpha)


def apply_matrix(m: TransformMatrix, x: Any) -> Signal:
    return FractionalTransform.apply_matrix(m, x)


def frdft_matrix_product(n: int, alpha: float) -> TransformMatrix:
    return _transform().product_matrix(n, alpha)


def frdft_inverse(x: Any, alpha: float) -> Signal:
    return _transform().inverse(x, alpha)
