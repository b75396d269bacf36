import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dirackit.scalar import Patch

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_for(seed):
    return random.Random(seed)


@pytest.fixture
def r2():
    return Patch(("x", "y"))


@pytest.fixture
def r3():
    return Patch(("x", "y", "z"))


@pytest.fixture
def r4():
    return Patch(("x1", "y1", "x2", "y2"))
