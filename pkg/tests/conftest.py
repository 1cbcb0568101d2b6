import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from grasslab import choose_pair, make_context, y_partition  # noqa: E402

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def ctx273():
    return make_context(2, 7, 3)


@pytest.fixture(scope="session")
def f1(ctx273):
    """x = <e1,e2,e3>, y = <e1,e4,e5> in GF(2)^7."""
    x, y = choose_pair(ctx273, 2, 0)
    return ctx273, x, y


@pytest.fixture(scope="session")
def f1_part(f1):
    ctx, x, y = f1
    return y_partition(ctx, x, y)


# one summary line per acceptance criterion, printed after the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    prev = _ACCEPTANCE.get(name, True)
    _ACCEPTANCE[name] = prev and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if _ACCEPTANCE[name] else 'FAIL'}  {name}")
