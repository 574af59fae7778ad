import pytest

_acceptance = []


@pytest.fixture
def record():
    def _record(number, passed, detail=""):
        _acceptance.append((number, passed, detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
