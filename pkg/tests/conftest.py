import pytest

from dcfg.grammar import emit_example


@pytest.fixture(scope="session")
def g1():
    return emit_example(1)


@pytest.fixture(scope="session")
def g2():
    return emit_example(2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for n in sorted(REPORT):
            terminalreporter.write_line(REPORT[n])
