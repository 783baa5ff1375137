import pytest

from acceptance_log import RESULTS


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(autouse=True)
def _no_env_caps(monkeypatch):
    monkeypatch.delenv("TENSORSPACE_CAPS", raising=False)
