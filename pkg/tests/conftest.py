import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from bundle_mdpc import build_code

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def cached_code(q, t=1, multipliers=None):
    return build_code(q, t, multipliers)


@pytest.fixture
def code_of():
    return cached_code


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
