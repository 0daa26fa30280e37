import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture(autouse=True)
def _quiet(monkeypatch):
    # progress messages would interleave with captured CLI output
    import scenariorisk
    monkeypatch.setattr(scenariorisk, "debug", False)
