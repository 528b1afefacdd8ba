import time

import pytest

_CRITERIA: dict = {}


class CriterionRecorder:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""
        self.start = time.perf_counter()
        _CRITERIA[number] = (title, None, "did not finish")

    def done(self, ok: bool, detail: str = ""):
        took = time.perf_counter() - self.start
        _CRITERIA[self.number] = (self.title, ok, f"{detail} [{took:.1f}s]".strip())
        assert ok, f"criterion {self.number} failed: {detail}"


@pytest.fixture
def criterion():
    return CriterionRecorder


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} - {title}: {detail}")
