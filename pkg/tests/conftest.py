import pytest

from support import make_world

ACCEPTANCE: list[str] = []


@pytest.fixture(scope="module")
def world():
    return make_world(7)


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test when it does not hold."""

    def record(name: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
