import functools

import pytest

from bishop.locus import LocusParams
from bishop.shell import run_example

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def _example(name, **kw):
    return run_example(name, LocusParams(), **kw)


def cached_example(name, **kw):
    """Reports of built-in examples, computed once per session with default parameters."""
    return _example(name, **kw)


@pytest.fixture
def example():
    return cached_example


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
