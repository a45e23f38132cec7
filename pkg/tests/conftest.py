from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from lefschetz.corpus import load_corpus
from lefschetz.surface import standard_alphabet

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def g3():
    return standard_alphabet(3)


@pytest.fixture(scope="session")
def g2():
    return standard_alphabet(2, closing_curve=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
