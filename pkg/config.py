# Fractional DFT Toolkit Configuration

import logging
import math
import os
from dataclasses import dataclass, fields, replace
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from dotenv import load_dotenv

from frdft.modules.errors import ConfigurationError

# Base directory
BASE_DIR = Path(__file__).parent.absolute()

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'


class Config:
    """Base configuration class"""

    # Matrix path
    MATRIX_SIZE_CAP = 4096
    MATRIX_WORKERS = 1

    # Raw five-step path: |tan(alpha/2)| must stay below this
    CONDITIONING_BOUND = 1e8

    # Tolerances
    EXACT_TOLERANCE = 1e-12      # algebraic identities at small N
    PIPELINE_TOLERANCE = 1e-10   # composed floating-point pipelines
    ORACLE_TOLERANCE = 1e-9      # apply path vs matrix path
    CONTINUITY_TOLERANCE = 1e-4

    # Localization sweeps
    SWEEP_POINTS = 181
    SWEEP_START = 0.01
    SWEEP_STOP = math.pi - 0.01
    SWEEP_WORKERS = 1
    CONCENTRATION_WINDOW = 1

    # Verification suite
    VERIFY_MAX_N = 1024
    VERIFY_SEED = 0

    # Benchmark
    BENCH_REPEATS = 5
    BENCH_MATRIX_MAX = 1024
    BENCH_SIZES = tuple(2 ** p for p in range(12, 19))
    # Matrix path ladder; the apply sizes above are all past BENCH_MATRIX_MAX
    BENCH_MATRIX_SIZES = (256, 512, 1024)

    # File output
    CSV_SIGNIFICANT_DIGITS = 17

    # Logging Configuration
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'INFO'
    LOG_FILE = None
    LOG_MAX_BYTES = 10 * 1024 * 1024  # 10MB
    LOG_BACKUP_COUNT = 5


class DevelopmentConfig(Config):
    """Development configuration"""

    # More verbose logging
    LOG_LEVEL = 'DEBUG'


class TestingConfig(Config):
    """Testing configuration"""

    # Small suite so the CLI tests stay fast
    VERIFY_MAX_N = 64
    BENCH_REPEATS = 1
    BENCH_MATRIX_MAX = 64
    BENCH_SIZES = (16, 32, 64)
    BENCH_MATRIX_SIZES = ()
    LOG_LEVEL = 'WARNING'


class ProductionConfig(Config):
    """Production configuration"""

    LOG_LEVEL = 'WARNING'
    LOG_FILE = BASE_DIR / 'logs' / 'frdft.log'
    MATRIX_WORKERS = os.cpu_count() or 1
    SWEEP_WORKERS = os.cpu_count() or 1


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}


@dataclass(frozen=True)
class Settings:
    """Resolved, immutable settings handed to every component."""
    environment: str
    matrix_size_cap: int
    matrix_workers: int
    conditioning_bound: float
    exact_tolerance: float
    pipeline_tolerance: float
    oracle_tolerance: float
    continuity_tolerance: float
    sweep_points: int
    sweep_start: float
    sweep_stop: float
    sweep_workers: int
    concentration_window: int
    verify_max_n: int
    verify_seed: int
    bench_repeats: int
    bench_matrix_max: int
    bench_sizes: Tuple[int, ...]
    bench_matrix_sizes: Tuple[int, ...]
    csv_significant_digits: int
    log_level: str
    log_file: Optional[Path]
    log_max_bytes: int
    log_backup_count: int

    def with_overrides(self, **overrides: Any) -> 'Settings':
        """Return a copy with the given fields replaced."""
        return replace(self, **overrides)


# Environment variable -> (settings field, parser)
ENV_OVERRIDES = {
    'FRFT_MATRIX_CAP': ('matrix_size_cap', int),
    'FRFT_MATRIX_WORKERS': ('matrix_workers', int),
    'FRFT_CONDITIONING_BOUND': ('conditioning_bound', float),
    'FRFT_SWEEP_WORKERS': ('sweep_workers', int),
    'FRFT_VERIFY_MAX_N': ('verify_max_n', int),
    'FRFT_LOG_FILE': ('log_file', Path),
    'LOG_LEVEL': ('log_level', str),
}


def _class_defaults(config_class) -> Dict[str, Any]:
    values = {}
    for field in fields(Settings):
        attr = field.name.upper()
        if hasattr(config_class, attr):
            values[field.name] = getattr(config_class, attr)
    return values


def _yaml_overrides(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            data = yaml.safe_load(handle) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read configuration file {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Configuration file {path} must contain a mapping")

    known = {field.name for field in fields(Settings)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"Unknown configuration keys in {path}: {', '.join(unknown)}")

    for name in ('bench_sizes', 'bench_matrix_sizes'):
        if name in data:
            data[name] = tuple(int(size) for size in data[name] or ())
    if data.get('log_file'):
        data['log_file'] = Path(data['log_file'])
    return data


def _env_overrides() -> Dict[str, Any]:
    values = {}
    for variable, (name, parser) in ENV_OVERRIDES.items():
        raw = os.environ.get(variable)
        if raw is None or raw.strip() == '':
            continue
        try:
            values[name] = parser(raw.strip())
        except ValueError as e:
            raise ConfigurationError(f"Invalid value for {variable}: {raw!r}") from e
    return values


def get_config(config_name: Optional[str] = None):
    """Get configuration class based on name or the FRFT_ENV variable"""
    if config_name is None:
        config_name = os.environ.get('FRFT_ENV', 'default')
    if config_name not in config:
        raise ConfigurationError(
            f"Unknown environment {config_name!r}; expected one of {', '.join(sorted(config))}")
    return config[config_name]


def load_settings(config_name: Optional[str] = None) -> Settings:
    """
    Resolve settings from the configuration class, an optional YAML file
    (FRFT_CONFIG_FILE) and environment variables, in that order of precedence.
    """
    load_dotenv(BASE_DIR / '.env', override=False)

    config_class = get_config(config_name)
    values = _class_defaults(config_class)
    values.update(_yaml_overrides(os.environ.get('FRFT_CONFIG_FILE')))
    values.update(_env_overrides())
    values['environment'] = config_name or os.environ.get('FRFT_ENV', 'default')
    values['log_level'] = str(values['log_level']).upper()
    values['bench_sizes'] = tuple(values['bench_sizes'])
    values['bench_matrix_sizes'] = tuple(values['bench_matrix_sizes'])
    return Settings(**values)


# Validation functions
def validate_config(settings: Settings) -> List[str]:
    """Validate configuration settings"""
    errors = []

    if settings.matrix_size_cap < 1:
        errors.append(f"matrix_size_cap must be at least 1, got {settings.matrix_size_cap}")
    if not settings.conditioning_bound > 0:
        errors.append(f"conditioning_bound must be positive, got {settings.conditioning_bound}")

    for name in ('exact_tolerance', 'pipeline_tolerance', 'oracle_tolerance', 'continuity_tolerance'):
        if not getattr(settings, name) > 0:
            errors.append(f"{name} must be positive")

    for name in ('matrix_workers', 'sweep_workers', 'bench_repeats', 'concentration_window'):
        if getattr(settings, name) < 1:
            errors.append(f"{name} must be at least 1")

    if settings.sweep_points < 1:
        errors.append("sweep_points must be at least 1")
    if settings.sweep_start > settings.sweep_stop:
        errors.append("sweep_start must not exceed sweep_stop")
    if settings.verify_max_n < 4:
        errors.append("verify_max_n must be at least 4")
    if settings.bench_matrix_max < 1:
        errors.append("bench_matrix_max must be at least 1")
    if settings.csv_significant_digits < 17:
        errors.append("csv_significant_digits below 17 cannot round-trip doubles")
    if logging.getLevelName(settings.log_level) == f"Level {settings.log_level}":
        errors.append(f"Unknown log level: {settings.log_level}")

    return errors


def configure_logging(settings: Settings) -> None:
    """Root logging on stderr, plus a rotating file when configured."""
    level = getattr(logging, settings.log_level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    root = logging.getLogger()
    root.setLevel(level)

    if settings.log_file is not None:
        log_file = Path(settings.log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        if not any(isinstance(h, RotatingFileHandler) and Path(h.baseFilename) == log_file.absolute()
                   for h in root.handlers):
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=settings.log_max_bytes,
                backupCount=settings.log_backup_count
            )
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            file_handler.setLevel(level)
            root.addHandler(file_handler)


# Initialize configuration
def init_config(config_name: Optional[str] = None) -> Settings:
    """Load, validate and apply the configuration"""
    settings = load_settings(config_name)

    errors = validate_config(settings)
    if errors:
        for error in errors:
            logging.getLogger(__name__).error(f"Configuration error: {error}")
        raise ConfigurationError("Configuration validation failed: " + "; ".join(errors))

    configure_logging(settings)
    return settings
