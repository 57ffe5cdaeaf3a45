import contextlib

import pytest

ACCEPTANCE: dict = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record whether the enclosed block raised, keyed by criterion number."""
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE[number] = (title, False, f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        raise
    ACCEPTANCE[number] = (title, True, "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, why = ACCEPTANCE[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{why}]" if why else ""))


@pytest.fixture
def record():
    return criterion
