import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record and print one pass/fail line for an acceptance criterion."""

    def record(number, title, ok, detail=""):
        line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        _LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
