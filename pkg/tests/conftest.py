import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return random.Random(20240601)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one (criterion, passed, detail) line per acceptance criterion."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    merged: dict[int, list] = {}
    for crit, passed, detail in lines:
        entry = merged.setdefault(crit, [True, []])
        entry[0] = entry[0] and passed
        entry[1].append(detail)
    for crit in sorted(merged):
        passed, details = merged[crit]
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if passed else 'FAIL'}  {'; '.join(details)}")
