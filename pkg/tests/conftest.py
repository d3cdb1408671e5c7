import pytest

from sunada.pipeline import builtin_config, resolve


@pytest.fixture(scope="session")
def ex1():
    return resolve(builtin_config(1))


@pytest.fixture(scope="session")
def ex2():
    return resolve(builtin_config(2))


@pytest.fixture(scope="session")
def ex3():
    return resolve(builtin_config(3))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
