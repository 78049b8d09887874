"""Shared pytest configuration.

Living at the repository root, this file also puts the root on
``sys.path`` so that ``import abharmonic`` works without installation.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs a full default-size verification suite")
