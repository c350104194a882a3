import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# derandomized so CI failures reproduce; deadline off because certified
# brackets have legitimately spiky runtimes
settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
