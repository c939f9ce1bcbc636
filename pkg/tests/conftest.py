import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


class CriterionLog:
    def __call__(self, label: str, ok: bool, detail: str = "") -> bool:
        _CRITERIA.append((label, bool(ok), detail))
        print(f"\n{label}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok


@pytest.fixture
def criterion():
    """Records one pass/fail line for the acceptance summary."""
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{label:38s} {'PASS' if ok else 'FAIL'}  {detail}")
