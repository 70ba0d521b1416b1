import sys

import pytest

from chowgw import gw


@pytest.fixture(scope="session")
def sp():
    return gw.spaces()


@pytest.fixture(scope="session")
def table():
    return gw.intersection_table()



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
