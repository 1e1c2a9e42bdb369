import pytest

from tests import acceptance_log


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.LINES
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(autouse=True)
def _no_enum_override(monkeypatch):
    monkeypatch.delenv("NSIZE_MAX_ENUM", raising=False)
