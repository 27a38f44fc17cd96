import pytest

from crosslab.verify import Corpus

# lines printed by test_acceptance, echoed again at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return Corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
