import contextlib
import time

import pytest

CRITERIA = {}


class _Record:
    detail = ""


@pytest.fixture
def criterion():
    """Context manager that times one acceptance criterion and records PASS or FAIL."""
    @contextlib.contextmanager
    def run(number, title, limit_s):
        rec = _Record()
        start = time.perf_counter()
        try:
            yield rec
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            CRITERIA[number] = (False, title, f"{type(exc).__name__}: {exc}".splitlines()[0], elapsed, limit_s)
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit_s
        detail = rec.detail if ok else f"{rec.detail}; over the {limit_s:g}s limit"
        CRITERIA[number] = (ok, title, detail, elapsed, limit_s)
        assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit_s:g}s"
    return run


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, title, detail, elapsed, limit_s = CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): "
                                    f"{detail} [{elapsed:.1f}s of {limit_s:g}s]")
