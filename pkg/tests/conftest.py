import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion as a PASS/FAIL line, then assert it."""

    def record(num, desc, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        _LINES.append(f"criterion {num}: {status}  {desc}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {num} failed: {desc} {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
