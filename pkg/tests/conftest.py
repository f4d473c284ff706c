import pytest

_CRITERIA = []


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        _CRITERIA.append((number, name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name} {detail}".rstrip())
