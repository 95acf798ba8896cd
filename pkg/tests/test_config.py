import logging
from pathlib import Path

import pytest

from config import (
    Config,
    config as config_classes,
    get_config,
    init_config,
    load_settings,
    validate_config,
)
from frdft.modules.errors import ConfigurationError


def test_get_config_by_name(monkeypatch):
    monkeypatch.delenv('FRFT_ENV', raising=False)
    assert get_config('testing') is config_classes['testing']
    assert get_config('production') is config_classes['production']
    assert get_config() is config_classes['default']


def test_get_config_from_environment(monkeypatch):
    monkeypatch.setenv('FRFT_ENV', 'testing')
    assert get_config() is config_classes['testing']


def test_unknown_environment():
    with pytest.raises(ConfigurationError):
        get_config('staging')


def test_testing_defaults(settings):
    assert settings.environment == 'testing'
    assert settings.matrix_size_cap == Config.MATRIX_SIZE_CAP
    assert settings.conditioning_bound == 1e8
    assert settings.verify_max_n == 64
    assert settings.bench_sizes == (16, 32, 64)
    assert settings.log_level == 'WARNING'
    assert validate_config(settings) == []


def test_environment_overrides(settings, monkeypatch):
    monkeypatch.setenv('FRFT_MATRIX_CAP', '128')
    monkeypatch.setenv('FRFT_CONDITIONING_BOUND', '1e6')
    overridden = load_settings('testing')
    assert overridden.matrix_size_cap == 128
    assert overridden.conditioning_bound == 1e6


def test_invalid_environment_value(settings, monkeypatch):
    monkeypatch.setenv('FRFT_MATRIX_CAP', 'lots')
    with pytest.raises(ConfigurationError, match='FRFT_MATRIX_CAP'):
        load_settings('testing')


def test_yaml_file_then_environment(settings, monkeypatch, tmp_path):
    config_file = tmp_path / 'frdft.yaml'
    config_file.write_text('matrix_size_cap: 256\nsweep_points: 11\nbench_sizes: [4, 8]\n', encoding='utf-8')
    monkeypatch.setenv('FRFT_CONFIG_FILE', str(config_file))
    monkeypatch.setenv('FRFT_MATRIX_CAP', '512')

    loaded = load_settings('testing')
    assert loaded.sweep_points == 11
    assert loaded.bench_sizes == (4, 8)
    assert loaded.matrix_size_cap == 512


def test_yaml_unknown_key(settings, monkeypatch, tmp_path):
    config_file = tmp_path / 'frdft.yaml'
    config_file.write_text('matrix_cap: 256\n', encoding='utf-8')
    monkeypatch.setenv('FRFT_CONFIG_FILE', str(config_file))
    with pytest.raises(ConfigurationError, match='matrix_cap'):
        load_settings('testing')


def test_yaml_missing_file(settings, monkeypatch, tmp_path):
    monkeypatch.setenv('FRFT_CONFIG_FILE', str(tmp_path / 'absent.yaml'))
    with pytest.raises(ConfigurationError):
        load_settings('testing')


def test_validation_errors(settings):
    broken = settings.with_overrides(matrix_size_cap=0, conditioning_bound=-1.0,
                                     sweep_points=0, csv_significant_digits=10, log_level='LOUD')
    errors = validate_config(broken)
    assert any('matrix_size_cap' in e for e in errors)
    assert any('conditioning_bound' in e for e in errors)
    assert any('sweep_points' in e for e in errors)
    assert any('csv_significant_digits' in e for e in errors)
    assert any('LOUD' in e for e in errors)


def test_init_config_rejects_invalid_settings(settings, monkeypatch):
    monkeypatch.setenv('FRFT_MATRIX_CAP', '0')
    with pytest.raises(ConfigurationError, match='validation failed'):
        init_config('testing')


def test_init_config_adds_rotating_file_handler(settings, monkeypatch, tmp_path):
    log_file = tmp_path / 'logs' / 'frdft.log'
    monkeypatch.setenv('FRFT_LOG_FILE', str(log_file))
    root = logging.getLogger()
    before = list(root.handlers)
    try:
        loaded = init_config('testing')
        assert loaded.log_file == log_file
        assert log_file.parent.is_dir()
        assert any(getattr(h, 'baseFilename', None) == str(Path(log_file).absolute()) for h in root.handlers)
    finally:
        for handler in root.handlers[:]:
            if handler not in before:
                root.removeHandler(handler)
                handler.close()
