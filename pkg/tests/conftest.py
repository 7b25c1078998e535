"""Collects one PASS/FAIL line per acceptance criterion and prints them at the end."""

import pytest

_LINES: dict[int, str] = {}


class AcceptanceLog:
    def record(self, number: int, passed: bool, detail: str, seconds: float) -> None:
        status = "PASS" if passed else "FAIL"
        _LINES[number] = f"criterion {number:2d}: {status}  {detail}  [{seconds:.1f} s]"
        print(_LINES[number])


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
