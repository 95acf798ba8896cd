# Fractional DFT Toolkit - Modules Package
"""
Core numerical modules of the fractional DFT toolkit.
"""

__version__ = "1.0.0"
__description__ = "Core modules for fractional DFT functionality"

# Module descriptions
MODULES = {
    'errors': 'Error hierarchy and exit codes',
    'dft_engine': 'Unitary DFT, inverse DFT, parity and energy',
    'fractional_transform': 'Fractional DFT apply path, closed-form matrix, root sums',
    'tf_model': '2x2 time-frequency shears and rotations',
    'chirp_lab': 'Tone and chirp generation, localization metrics and sweeps',
    'signal_io': 'Signal CSV reading and writing',
    'report_generator': 'Matrix, sweep, root-sum, benchmark and verification reports',
    'verification_suite': 'Seeded property verification',
    'benchmark_runner': 'Apply and matrix path complexity measurements'
}

def get_module_info():
    """Get information about available modules"""
    return MODULES
