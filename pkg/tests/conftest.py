import pytest

from ringlinks.catalog import CATALOG, catalog_ring
from ringlinks.ideals import Ideal

# acceptance criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")


@pytest.fixture(params=[e.name for e in CATALOG])
def catalog_name(request):
    return request.param


def ideal(ring, elements):
    return Ideal(ring, tuple(sorted(elements)))


@pytest.fixture
def rings():
    return {e.name: catalog_ring(e.name) for e in CATALOG}
