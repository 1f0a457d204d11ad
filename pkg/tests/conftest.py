import sys

import pytest
from hypothesis import HealthCheck, settings

from fhtkit.rootsystem import build_root_system

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _memory_only_cache(monkeypatch):
    """Keep tests off any user-level cache directory."""
    from fhtkit import verlinde

    monkeypatch.delenv(verlinde.CACHE_ENV, raising=False)
    old = verlinde.get_cache()
    verlinde.set_cache_dir(None)
    yield
    verlinde._cache = old


@pytest.fixture
def A1():
    return build_root_system("A1")


@pytest.fixture
def A2():
    return build_root_system("A2")


@pytest.fixture
def G2():
    return build_root_system("G2")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
