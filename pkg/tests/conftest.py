import pytest

from polyrep import mangoldt


@pytest.fixture(scope="session")
def table():
    """Shared Lambda table large enough for every unit test."""
    return mangoldt.build(2 * 10**5)


CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(CRITERIA):
        terminalreporter.write_line(line)
