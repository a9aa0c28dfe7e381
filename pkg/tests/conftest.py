from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording one pass/fail line per acceptance criterion."""
    log = request.config.stash.setdefault(_ACCEPTANCE, {})

    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert limit is None or elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number}: {'pass' if ok else 'fail'}  {title}  ({elapsed:.1f} s)"
            log[number] = line
            print(line)

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, {})
    if log:
        terminalreporter.section("acceptance criteria")
        for n in sorted(log):
            terminalreporter.write_line(log[n])
