import pytest

from dmnkit import published
from dmnkit.array_model import structured_matrix


@pytest.fixture
def z_at_table():
    return structured_matrix(published.Z_AT["a"], published.Z_AT["b"])


@pytest.fixture
def z3_table():
    return structured_matrix(published.Z_AT["a"], published.Z_AT["b"], published.Z_AT["c"])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[k])
