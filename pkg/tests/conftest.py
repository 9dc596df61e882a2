import pytest

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {detail}"
        CRITERIA_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
