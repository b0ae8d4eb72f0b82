import pytest

from topkstab import available_backends, ingest

from _util import D1_RECORDS

ACCEPTANCE_LINES = []


@pytest.fixture
def d1():
    return ingest(D1_RECORDS)


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
