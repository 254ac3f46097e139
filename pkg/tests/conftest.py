import random

import pytest
from hypothesis import HealthCheck, settings

from ggasp.reductions import fixture

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture
def empty_core():
    return fixture("empty_core")


@pytest.fixture
def stalker():
    return fixture("stalker")


@pytest.fixture
def rng():
    return random.Random(12345)
