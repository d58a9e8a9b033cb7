import importlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings


settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _check_every_snf():
    # every Smith form computed during the tests verifies its own output
    mod = importlib.import_module("epx.homology")
    old = mod.CHECK_SNF
    mod.CHECK_SNF = True
    yield
    mod.CHECK_SNF = old


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
