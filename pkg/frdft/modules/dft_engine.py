"""
DFT Engine Module - Fractional DFT Toolkit

This module holds the complex vector arithmetic every other module builds on:
the ordinary discrete Fourier transform with the unitary kernel

    B_jk = (1/sqrt(N)) exp(-2 pi i jk / N),

its inverse, the parity flip (B squared) and the signal energy.

Features:
- O(N log N) path for power-of-two lengths (scipy.fft, single worker)
- Direct O(N^2) kernel evaluation for every other length, in bounded row blocks
- Dense kernel matrices for the matrix oracles
- Normalization fault hook used by the verification suite
"""

import logging
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
import scipy.fft

from frdft.modules.errors import InvalidInputError

Signal = npt.NDArray[np.complex128]

# Upper bound on the kernel block built per row chunk of the direct path
_DIRECT_CHUNK_ELEMENTS = 1 << 20


def as_signal(x: Any, name: str = 'signal', allow_batch: bool = False) -> Signal:
    """
    Convert array-like data to a complex128 signal and validate it.

    Args:
        x: Samples (any array-like of numbers)
        name (str): Name used in error messages
        allow_batch (bool): Accept a 2-D array of column signals

    Returns:
        Signal: A new complex128 array; the input is never modified
    """
    try:
        arr = np.array(x, dtype=np.complex128, copy=True)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"{name} is not numeric: {e}") from e

    max_ndim = 2 if allow_batch else 1
    if arr.ndim == 0 or arr.ndim > max_ndim:
        raise InvalidInputError(f"{name} must be {max_ndim}-dimensional at most, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise InvalidInputError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains NaN or infinite samples")
    return arr


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def energy(x: Any) -> float:
    """Sum of squared magnitudes."""
    arr = np.asarray(x, dtype=np.complex128)
    return float(np.sum(arr.real ** 2 + arr.imag ** 2))


def parity(x: Any) -> Signal:
    """
    Parity flip x_j -> x_((N - j) mod N).

    Keeps the first element and reverses the rest; equal to applying the
    DFT twice.
    """
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 0 or arr.shape[0] == 0:
        return arr.copy()
    return np.roll(arr[::-1], 1, axis=0)


class DFTEngine:
    """
    Unitary DFT and inverse DFT on complex signals.

    Power-of-two lengths run through scipy.fft with ``norm='ortho'`` and a
    single worker; other lengths are evaluated by direct summation of the
    kernel. Both paths share the forward sign exp(-2 pi i jk / N).
    """

    def __init__(self, workers: int = 1, normalization_fault: float = 1.0):
        """
        Initialize the engine.

        Args:
            workers (int): scipy.fft worker threads for the fast path
            normalization_fault (float): Factor applied to every forward
                transform. Anything other than 1.0 breaks unitarity on purpose.
        """
        self.logger = logging.getLogger(__name__)
        self.workers = workers
        self.normalization_fault = normalization_fault

        if normalization_fault != 1.0:
            self.logger.warning(f"DFT normalization fault injected: factor {normalization_fault!r}")

    # Transforms

    def dft(self, x: Any) -> Signal:
        """
        Forward unitary DFT, f_j = (1/sqrt(N)) sum_k exp(-2 pi i jk/N) x_k.

        A 2-D input is transformed column by column (along axis 0).
        """
        arr = as_signal(x, allow_batch=True)
        n = arr.shape[0]

        if is_power_of_two(n):
            self.logger.debug(f"dft: fast path, N={n}")
            out = scipy.fft.fft(arr, axis=0, norm='ortho', workers=self.workers)
        else:
            self.logger.debug(f"dft: direct path, N={n}")
            out = self._direct(arr, -1.0)

        if self.normalization_fault != 1.0:
            out = out * self.normalization_fault
        return out

    def idft(self, x: Any) -> Signal:
        """Inverse unitary DFT with the conjugate kernel exp(+2 pi i jk/N)."""
        arr = as_signal(x, allow_batch=True)
        n = arr.shape[0]

        if is_power_of_two(n):
            return scipy.fft.ifft(arr, axis=0, norm='ortho', workers=self.workers)
        return self._direct(arr, 1.0)

    def direct_dft(self, x: Any) -> Signal:
        """Reference O(N^2) evaluation of the forward kernel for any N."""
        return self._direct(as_signal(x, allow_batch=True), -1.0)

    @staticmethod
    def _direct(arr: Signal, sign: float) -> Signal:
        """
        Direct kernel evaluation, a bounded block of output rows at a time.

        Memory stays O(N) per block instead of O(N^2) for a dense kernel.
        """
        n = arr.shape[0]
        idx = np.arange(n, dtype=np.int64)
        roots = np.exp(sign * 2j * np.pi * idx / n)
        scale = 1.0 / np.sqrt(n)
        chunk = max(1, _DIRECT_CHUNK_ELEMENTS // n)

        out = np.empty(arr.shape, dtype=np.complex128)
        for start in range(0, n, chunk):
            j = idx[start:start + chunk]
            kernel = roots[(j[:, np.newaxis] * idx[np.newaxis, :]) % n]
            out[start:start + chunk] = (kernel @ arr) * scale
        return out

    # Dense kernels

    @staticmethod
    def dft_matrix(n: int) -> npt.NDArray[np.complex128]:
        """
        Dense unitary kernel B.

        The product jk is reduced modulo N in integer arithmetic so every
        entry is one of the N roots of unity, evaluated exactly once.
        """
        if n < 1:
            raise InvalidInputError(f"matrix dimension must be at least 1, got {n}")
        idx = np.arange(n, dtype=np.int64)
        roots = np.exp(-2j * np.pi * idx / n)
        return roots[np.outer(idx, idx) % n] / np.sqrt(n)

    @classmethod
    def idft_matrix(cls, n: int) -> npt.NDArray[np.complex128]:
        """Inverse kernel B^-1, the conjugate transpose of B."""
        return cls.dft_matrix(n).conj().T

    def dft_power(self, x: Any, power: int) -> Signal:
        """
        Apply B^power exactly: identity, dft, parity or idft for power mod 4.

        Args:
            x: Signal (or batch of column signals)
            power (int): Number of quarter turns

        Returns:
            Signal: Transformed samples
        """
        arr = as_signal(x, allow_batch=True)
        power %= 4
        if power == 0:
            return arr
        if power == 1:
            return self.dft(arr)
        if power == 2:
            return parity(arr)
        return self.idft(arr)


_default_engine: Optional[DFTEngine] = None


def default_engine() -> DFTEngine:
    """Shared fault-free engine for the module-level helpers."""
    global _default_engine
    if _default_engine is None:
        _default_engine = DFTEngine()
    return _default_engine


def dft(x: Any) -> Signal:
    return default_engine().dft(x)


def idft(x: Any) -> Signal:
    return default_engine().idft(x)
