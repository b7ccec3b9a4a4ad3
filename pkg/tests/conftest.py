import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import gradecast as g

# JIT warmup on first kernel call can blow per-example deadlines.
settings.register_profile(
    "gradecast",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gradecast")


@pytest.fixture
def schema():
    return g.builtin_schema()


@pytest.fixture
def rng():
    return np.random.default_rng(20240814)
