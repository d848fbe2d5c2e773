import pytest

from submax.degmat import example_matrix
from submax.gradedmod import SubmaxContext
from submax.matgen import instance


@pytest.fixture(scope="session")
def contexts():
    """Memoized SubmaxContext per (example, s, seed)."""
    cache = {}

    def get(example, s, seed=0):
        key = (example, s, seed)
        if key not in cache:
            cache[key] = SubmaxContext(instance(example_matrix(example, s), seed=seed))
        return cache[key]

    return get


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    """List of (criterion, passed, detail) lines printed in the terminal summary."""
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(lines):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
