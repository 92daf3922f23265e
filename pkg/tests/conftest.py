import pytest

from qcube.constructions import hamming_code, mds_sum_code, slab
from qcube.cube import CubeShape, VertexSet


@pytest.fixture
def even_weight():
    """{000, 011, 101, 110} in Z_2^3."""
    return VertexSet.from_points(CubeShape(2, 3), [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])


@pytest.fixture(scope="session")
def hamming7():
    return hamming_code(2, 3)


@pytest.fixture
def mds32():
    return mds_sum_code(3, 2, 0)


@pytest.fixture
def slab32():
    return slab(3, 2, 0, 0)


@pytest.fixture
def single22():
    return VertexSet.from_points(CubeShape(2, 2), [(0, 0)])


# acceptance reporting: one PASS/FAIL line per criterion in the terminal summary
_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
