from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

# filled by test_acceptance, one (number, passed, text) per criterion
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN / name).read_text()

    return read


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, text in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(text)
