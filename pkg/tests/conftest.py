import pytest

from pwlab import build_root_system, chevalley_basis

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def algebras():
    cache = {}

    def get(t, r):
        if (t, r) not in cache:
            cache[(t, r)] = chevalley_basis(build_root_system(t, r))
        return cache[(t, r)]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
