"""Pytest configuration and shared fixtures for the workbench tests."""
from __future__ import annotations

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from cellular.config import reset_config  # noqa: E402


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Run slow tests (acceptance precision, n=10/11 enumeration, long Monte Carlo)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance test, skipped unless --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from the default configuration."""
    reset_config()
    yield
    reset_config()


@pytest.fixture
def n5_class():
    from cellular.tables import named_config

    return named_config("5pi")


@pytest.fixture
def n6_class():
    from cellular.tables import named_config

    return named_config("6pi")
