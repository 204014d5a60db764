import pytest

from eec.syntax import parse_judgement
from eec.typecheck import check_judgement


def judge(src: str):
    """Parse and check a judgement written in the surface syntax."""
    return check_judgement(parse_judgement(src))


@pytest.fixture
def j():
    return judge


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
