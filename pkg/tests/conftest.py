import pytest

_ACCEPTANCE: list[tuple[int, bool, str]] = []


@pytest.fixture
def record():
    """Log one acceptance line; the summary prints them in criterion order."""

    def _record(criterion: int, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.append((criterion, bool(ok), detail))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
