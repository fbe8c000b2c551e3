import pytest

from racglie.scomplex import SimplicialComplex, discrete, simplex

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def three_vertex_examples():
    return {
        "discrete": discrete(3),
        "edge_point": SimplicialComplex(3, [[1, 2]]),
        "path": SimplicialComplex(3, [[1, 2], [2, 3]]),
    }


@pytest.fixture
def two_points():
    return discrete(2)


@pytest.fixture
def triangle_boundary():
    return SimplicialComplex(3, [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def full_simplex():
    return simplex(3)
