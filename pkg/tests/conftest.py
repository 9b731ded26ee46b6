import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arlab.words import DirectiveSequence, generate_prefix  # noqa: E402


@pytest.fixture(scope="session")
def fib():
    return DirectiveSequence.parse(":01")


@pytest.fixture(scope="session")
def tri():
    return DirectiveSequence.parse(":012")


@pytest.fixture(scope="session")
def fib_prefix(fib):
    return generate_prefix(fib, 10_000)


@pytest.fixture(scope="session")
def tri_prefix(tri):
    return generate_prefix(tri, 10_000)


def pytest_terminal_summary(terminalreporter):
    from criteria import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
