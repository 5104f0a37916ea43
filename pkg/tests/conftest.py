import pytest

from specgraph.algebra import FinModule, Ring


def Zmod(n: int, modulus: int = 0) -> FinModule:
    return FinModule(Ring(modulus), (n,))


@pytest.fixture
def z12():
    return Zmod(12)


@pytest.fixture
def z30():
    return Zmod(30)


@pytest.fixture
def klein():
    return FinModule(Ring(0), (2, 2))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record the one-line verdict of an acceptance criterion for the terminal summary."""
    def record(number: int, passed: bool, detail: str):
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
