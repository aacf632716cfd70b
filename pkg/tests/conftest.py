import pytest

from ontosem import load_reference

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def ref():
    return load_reference()


@pytest.fixture(scope="session")
def onto(ref):
    return ref[0]


@pytest.fixture(scope="session")
def lex(ref):
    return ref[1]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
