import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long completions and full-size axiom sweeps")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("MODULI_MAX_DEGREE", "MODULI_LOG_LEVEL", "MODULI_COMPLETION_TIMEOUT"):
        monkeypatch.delenv(name, raising=False)
