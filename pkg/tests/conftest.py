from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qmlines.core import DistanceMatrix, default_labels

from oracles import min_plus_closure

# one line per acceptance criterion, filled by tests/test_acceptance.py and
# echoed after the run so the report shows up without -s
acceptance_report: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_report:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_report:
            terminalreporter.write_line(line)


@pytest.fixture
def q4():
    from qmlines.fixtures import q4_matrix

    return q4_matrix()


def _positive_fractions():
    return st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=8)


@st.composite
def quasi_metrics(draw, min_n=2, max_n=5):
    """Random valid quasi-metrics via min-plus closure of positive entries."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = [
        [Fraction(0) if i == j else draw(_positive_fractions()) for j in range(n)]
        for i in range(n)
    ]
    return DistanceMatrix(default_labels(n), min_plus_closure(rows))


@st.composite
def metric_matrices(draw, min_n=2, max_n=5):
    """Random valid metrics: symmetric start, closure preserves symmetry."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(_positive_fractions())
    return DistanceMatrix(default_labels(n), min_plus_closure(rows))
