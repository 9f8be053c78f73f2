import pytest

from nvreadout import CavityParams, EmitterParams, Scenario


@pytest.fixture
def paper_cavity():
    return CavityParams.from_q_total(55.0, 50.0)


@pytest.fixture
def emitter():
    return EmitterParams()


@pytest.fixture
def scenario():
    return Scenario()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
