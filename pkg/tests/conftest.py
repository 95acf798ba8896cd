import numpy as np
import pytest
from click.testing import CliRunner

from config import load_settings
from frdft.modules.dft_engine import DFTEngine
from frdft.modules.fractional_transform import FractionalTransform


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def settings(monkeypatch):
    for variable in ('FRFT_MATRIX_CAP', 'FRFT_CONDITIONING_BOUND', 'FRFT_CONFIG_FILE', 'FRFT_MATRIX_WORKERS',
                     'FRFT_SWEEP_WORKERS', 'FRFT_VERIFY_MAX_N', 'FRFT_LOG_FILE', 'FRFT_ENV', 'LOG_LEVEL'):
        monkeypatch.delenv(variable, raising=False)
    return load_settings('testing')


@pytest.fixture
def engine():
    return DFTEngine()


@pytest.fixture
def transform(engine):
    return FractionalTransform(engine=engine)


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def random_signal(rng, n, unit=False):
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if unit:
        x = x / np.linalg.norm(x)
    return x
