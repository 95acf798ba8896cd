# Fractional DFT Toolkit - Package
"""
Fractional discrete Fourier transform toolkit.

The fast chirp-and-FFT transform, its closed-form matrix, the roots-of-unity
sums behind its limiting cases, and the 2x2 time-frequency model they realize.
"""

__version__ = "1.0.0"
__description__ = "Fractional DFT via chirp multiplies and FFTs, with matrix and 2x2 oracles"

# Import core components for easy access
from .modules.dft_engine import DFTEngine
from .modules.fractional_transform import FractionalTransform
from .modules.chirp_lab import ChirpLab
from .modules.signal_io import SignalFileManager
from .modules.report_generator import ReportGenerator
from .modules.verification_suite import VerificationSuite
from .modules.benchmark_runner import BenchmarkRunner

__all__ = [
    'DFTEngine',
    'FractionalTransform',
    'ChirpLab',
    'SignalFileManager',
    'ReportGenerator',
    'VerificationSuite',
    'BenchmarkRunner'
]
