import logging

import pytest

from pytools_moduli.config import completion_timeout, configure_logging, max_degree_override
from pytools_moduli.exceptions import ConfigurationError


def test_max_degree_override(monkeypatch):
    assert max_degree_override() is None
    monkeypatch.setenv("MODULI_MAX_DEGREE", " ")
    assert max_degree_override() is None
    monkeypatch.setenv("MODULI_MAX_DEGREE", "6")
    assert max_degree_override() == 6
    for value in ("-1", "six"):
        monkeypatch.setenv("MODULI_MAX_DEGREE", value)
        with pytest.raises(ConfigurationError):
            max_degree_override()


def test_completion_timeout(monkeypatch):
    assert completion_timeout() == 600.0
    monkeypatch.setenv("MODULI_COMPLETION_TIMEOUT", "2.5")
    assert completion_timeout() == 2.5
    monkeypatch.setenv("MODULI_COMPLETION_TIMEOUT", "0")
    with pytest.raises(ConfigurationError):
        completion_timeout()


def test_configure_logging(monkeypatch):
    assert configure_logging() == logging.WARNING
    assert configure_logging(verbose=True) == logging.INFO
    assert configure_logging(verbose=True, debug=True) == logging.DEBUG
    monkeypatch.setenv("MODULI_LOG_LEVEL", "error")
    assert configure_logging(debug=True) == logging.ERROR
    monkeypatch.setenv("MODULI_LOG_LEVEL", "chatty")
    with pytest.raises(ConfigurationError):
        configure_logging()
    with pytest.raises(TypeError):
        configure_logging(verbose=1)
    monkeypatch.delenv("MODULI_LOG_LEVEL")
    configure_logging()
