import pytest

RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record():
    """Store one acceptance line: record(number, title, passed, detail)."""

    def _record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        RESULTS[number] = (title, bool(passed), detail)
        print(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, passed, detail = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {title}: {detail}")
