import pytest
from hypothesis import HealthCheck, settings

from k3sym.field import field

settings.register_profile("k3sym", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("k3sym")


@pytest.fixture(scope="session")
def ctx():
    return field(84)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
