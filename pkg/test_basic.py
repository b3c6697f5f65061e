"""
Configuration and error-hierarchy checks.
"""

import os

import pytest

from tstd import config as config_module
from tstd.config import Config, ProductionConfig, current_config
from tstd.errors import (ContextError, DivisionError, EliminationError, FieldError, OrderingError,
                         ParseError, SaturationError, StandardBasisError, TstdError)


def test_configuration():
    """Test the configuration setup."""
    assert current_config.ENVIRONMENT == 'testing'
    assert current_config.VERIFY_DIVISIONS is True
    assert current_config.PAIR_CRITERIA is True
    assert current_config.MAX_ITER >= 1
    assert current_config.get_n_jobs() >= 1


def test_max_iter_is_read_at_call_time(monkeypatch):
    monkeypatch.setenv('TSTD_MAX_ITER', '7')
    assert current_config.get_max_iter() == 7
    monkeypatch.delenv('TSTD_MAX_ITER')
    assert current_config.get_max_iter() == Config.MAX_ITER


def test_environment_selects_config_class():
    assert isinstance(config_module.config_by_name['production'](), ProductionConfig)
    assert isinstance(current_config, config_module.TestingConfig)
    if 'TSTD_VERIFY_DIVISIONS' not in os.environ:
        assert ProductionConfig.VERIFY_DIVISIONS is False


def test_unknown_environment_falls_back_to_development():
    assert config_module.config_by_name.get('staging', config_module.DevelopmentConfig) \
        is config_module.DevelopmentConfig
    assert ProductionConfig.DEBUG is False


@pytest.mark.parametrize('error, builtin', [
    (FieldError, ArithmeticError),
    (DivisionError, ArithmeticError),
    (ContextError, ValueError),
    (OrderingError, ValueError),
    (ParseError, ValueError),
])
def test_errors_share_root_and_builtin(error, builtin):
    assert issubclass(error, TstdError)
    assert issubclass(error, builtin)


def test_elimination_error_is_an_ordering_error():
    assert issubclass(EliminationError, OrderingError)
    assert issubclass(StandardBasisError, TstdError)
    assert issubclass(SaturationError, TstdError)


def test_parse_error_renders_position():
    error = ParseError("unknown variable w", line=3, column=7, path='session.json')
    assert str(error) == 'session.json:3:7: unknown variable w'
    moved = ParseError("bad", column=2).at('s.json', 5)
    assert (moved.path, moved.line, moved.column) == ('s.json', 5, 2)
    assert str(ParseError("plain")) == 'plain'
