import os

import pytest
from hypothesis import HealthCheck, settings

from monitor.storage import set_storage
from monitor.storage.local import LocalStorage

settings.register_profile(
    "ci",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("dev", deadline=None, max_examples=50)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def trace_dir(tmp_path):
    """Storage backend rooted at a temporary directory."""
    set_storage(LocalStorage(str(tmp_path)))
    yield tmp_path
    set_storage(None)
