import pytest

from cubicdiv.primesearch import build_base
from cubicdiv.uchida import build_instance


@pytest.fixture(scope="session")
def inst7():
    return build_instance(-7, 3, 1, 1)


@pytest.fixture(scope="session")
def inst3():
    return build_instance(-3, 3, 1, 1)


@pytest.fixture(scope="session")
def base15():
    return build_base(1, 5, 1)


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = request.config.__dict__.setdefault("_acceptance_lines", [])
    return log


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
