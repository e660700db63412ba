import pytest

from hurwitz.dessin import Dessin
from hurwitz.perm import Permutation, compose, inverse
from hurwitz.search import Constellation


def constellation(d, *cycles_text):
    """Constellation from cycle notation; a missing third permutation is derived."""
    sigmas = [Permutation.parse(t, d) for t in cycles_text]
    if len(sigmas) == 2:
        sigmas.append(inverse(compose(sigmas[0], sigmas[1])))
    return Constellation(tuple(sigmas))


@pytest.fixture
def hexagonal_torus():
    return Dessin.from_constellation(constellation(3, "(0 1 2)", "(0 1 2)"))


@pytest.fixture
def theta_sphere():
    # datum (3), (2,1), (2,1): a bigon and a square
    return Dessin.from_constellation(constellation(3, "(0 1 2)", "(0 1)"))


@pytest.fixture
def two_squares():
    return Dessin.from_constellation(constellation(4, "(0 1 2)", "(1 2 3)"))


@pytest.fixture
def trivial_cover():
    return Dessin.from_constellation(constellation(1, "()", "()"))


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call" or (marker and report.failed):
        number, title = marker.args
        ok = report.passed and _CRITERIA.get(number, (True,))[0]
        _CRITERIA[number] = (ok, title)
    return report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
