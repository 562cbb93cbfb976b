import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[str, tuple[bool, float, str]] = {}


@contextmanager
def _record(label: str, detail: str):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        _RESULTS[label] = (ok, time.perf_counter() - start, detail)


@pytest.fixture
def criterion():
    """``with criterion("C1", "..."):`` times a block and records PASS or FAIL."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS):
        ok, secs, detail = _RESULTS[label]
        terminalreporter.write_line(f"{label} {'PASS' if ok else 'FAIL'} {secs:7.2f}s  {detail}")
