import mpmath
import pytest

from selberg import bolza_group, length_spectrum

SYSTOLE_COSH_HALF = 1 + mpmath.sqrt(2)


@pytest.fixture(scope="session")
def bolza():
    return bolza_group()


@pytest.fixture(scope="session")
def bolza_spec10(bolza):
    return length_spectrum(bolza, 10)


@pytest.fixture(scope="session")
def bolza_spec8(bolza_spec10):
    return bolza_spec10.truncated(8)


ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} | {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
