import pytest

from sylowkit.catalog import default_corpus

# acceptance results, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return [(s, s.build()) for s in default_corpus()]


@pytest.fixture(scope="session")
def groups(corpus):
    return {s.name: G for s, G in corpus}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
