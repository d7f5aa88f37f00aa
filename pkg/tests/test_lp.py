from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmlines.core import Betweenness
from qmlines.fixtures import q4_betweenness
from qmlines.lp import (
    EPS_VAR,
    Constraint,
    LinearSystem,
    MalformedSystemError,
    maximize_slack,
    pair_var,
    pair_variables,
    _simplex_max,
)
from qmlines.realizability import build_realization_system

from oracles import brute_force_lp_max


def normalization(n):
    return Constraint(
        {pair_var(i, j): 1 for i in range(n) for j in range(n) if i != j}, "=", 1
    )


class TestConstraint:
    def test_zero_coefficients_dropped(self):
        c = Constraint({"d(0,1)": 0, "d(1,0)": 2}, "<=", 1)
        assert set(c.coeffs) == {"d(1,0)"}

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            Constraint({"d(0,1)": 0.5}, "<=", 1)

    def test_rejects_unknown_relation(self):
        with pytest.raises(ValueError):
            Constraint({"d(0,1)": 1}, ">=", 0)

    def test_satisfied_by(self):
        c = Constraint({"d(0,1)": 2, "d(1,0)": -1}, "<=", 1)
        assert c.satisfied_by({"d(0,1)": Fraction(1, 2), "d(1,0)": Fraction(0)})
        assert not c.satisfied_by({"d(0,1)": Fraction(2), "d(1,0)": Fraction(1)})


class TestSystemStructure:
    def test_q4_quasi_constraint_census(self):
        # 12 ordered pairs on 4 points, 24 ordered triples of which 4 are members
        system = build_realization_system(q4_betweenness(), "quasi")
        assert len(system.variables) == 13
        positivity = [c for c in system.constraints if EPS_VAR in c.coeffs and len(c.coeffs) == 2]
        equalities = [c for c in system.constraints if c.relation == "=" and len(c.coeffs) == 3]
        slack_ineqs = [
            c for c in system.constraints if c.relation == "<=" and len(c.coeffs) == 4
        ]
        norms = [c for c in system.constraints if c.relation == "=" and len(c.coeffs) == 12]
        assert len(positivity) == 12
        assert len(equalities) == 4
        assert len(slack_ineqs) == 20
        assert len(norms) == 1
        assert len(system.constraints) == 37

    def test_empty_relation_on_three_points(self):
        system = build_realization_system(Betweenness(3, 0), "quasi")
        assert len(pair_variables(3)) == 6
        equalities = [
            c for c in system.constraints if c.relation == "=" and len(c.coeffs) == 3
        ]
        slack_ineqs = [
            c for c in system.constraints if c.relation == "<=" and len(c.coeffs) == 4
        ]
        assert not equalities
        assert len(slack_ineqs) == 6

    def test_metric_variant_adds_symmetry(self):
        b = Betweenness.from_triples(3, [(0, 1, 2), (2, 1, 0)])  # abc, cba
        system = build_realization_system(b, "metric")
        sym = [
            c
            for c in system.constraints
            if c.relation == "="
            and len(c.coeffs) == 2
            and set(c.coeffs.values()) == {Fraction(1), Fraction(-1)}
            and EPS_VAR not in c.coeffs
        ]
        assert len(sym) == 3
        equalities = [
            c for c in system.constraints if c.relation == "=" and len(c.coeffs) == 3
        ]
        # d(a,c) = d(a,b) + d(b,c) and d(c,a) = d(c,b) + d(b,a)
        assert len(equalities) == 2
        wanted = {
            frozenset({pair_var(0, 2), pair_var(0, 1), pair_var(1, 2)}),
            frozenset({pair_var(2, 0), pair_var(2, 1), pair_var(1, 0)}),
        }
        assert {frozenset(c.coeffs) for c in equalities} == wanted


class TestValidation:
    def test_missing_normalization(self):
        cons = (Constraint({pair_var(0, 1): 1, pair_var(1, 0): 1, EPS_VAR: 1}, "<=", 1),)
        with pytest.raises(MalformedSystemError, match="normalization"):
            maximize_slack(LinearSystem(2, cons))

    def test_duplicate_normalization(self):
        cons = (
            normalization(2),
            normalization(2),
            Constraint({EPS_VAR: 1}, "<=", 1),
        )
        with pytest.raises(MalformedSystemError, match="normalization"):
            maximize_slack(LinearSystem(2, cons))

    def test_undeclared_variable(self):
        cons = (normalization(2), Constraint({"z": 1, EPS_VAR: 1}, "<=", 1))
        with pytest.raises(MalformedSystemError, match="undeclared"):
            maximize_slack(LinearSystem(2, cons))

    def test_unreferenced_variable(self):
        # eps appears nowhere
        cons = (normalization(2),)
        with pytest.raises(MalformedSystemError, match="referenced"):
            maximize_slack(LinearSystem(2, cons))

    def test_unbounded_slack_is_malformed(self):
        cons = (normalization(2), Constraint({EPS_VAR: -1}, "<=", 0))
        with pytest.raises(MalformedSystemError, match="unbounded"):
            maximize_slack(LinearSystem(2, cons))


class TestMaximizeSlack:
    def test_two_point_space(self):
        system = build_realization_system(Betweenness(2, 0), "quasi")
        outcome = maximize_slack(system)
        assert outcome.status == "feasible"
        assert outcome.optimal_slack == Fraction(1, 2)
        assert outcome.witness is not None

    def test_q4_quasi_is_realizable(self):
        outcome = maximize_slack(build_realization_system(q4_betweenness(), "quasi"))
        assert outcome.realizable
        # Q4 itself, scaled by its entry sum 22, achieves slack 1/22
        assert outcome.optimal_slack >= Fraction(1, 22)

    def test_q4_metric_slack_is_exactly_zero(self):
        # the member equalities force d(p,q) = 0 under symmetry, so the slack
        # cannot be positive, yet the relaxed system remains feasible
        outcome = maximize_slack(build_realization_system(q4_betweenness(), "metric"))
        assert outcome.status == "feasible"
        assert outcome.optimal_slack == 0
        assert not outcome.realizable
        assert outcome.witness is None

    def test_reversal_pair_metric_realizable(self):
        b = Betweenness.from_triples(3, [(0, 1, 2), (2, 1, 0)])
        outcome = maximize_slack(build_realization_system(b, "metric"))
        assert outcome.realizable
        w = outcome.witness
        assert w.entries[0][2] == w.entries[0][1] + w.entries[1][2]
        for i in range(3):
            for j in range(3):
                assert w.entries[i][j] == w.entries[j][i]

    def test_witness_entries_are_coprime_integers(self):
        outcome = maximize_slack(build_realization_system(q4_betweenness(), "quasi"))
        values = [v for row in outcome.witness.entries for v in row]
        assert all(v.denominator == 1 for v in values)
        from math import gcd

        assert gcd(*(int(v) for v in values if v)) == 1


# ------------------------------------------------- solver vs vertex oracle

_VARS = ("x0", "x1", "x2")


@st.composite
def small_lps(draw):
    nvars = draw(st.integers(min_value=1, max_value=3))
    variables = _VARS[:nvars]
    coeff = st.integers(min_value=-3, max_value=3)
    ncons = draw(st.integers(min_value=1, max_value=4))
    constraints = []
    for _ in range(ncons):
        coeffs = {v: draw(coeff) for v in variables}
        rel = draw(st.sampled_from(["<=", "<=", "<=", "="]))
        rhs = draw(st.integers(min_value=-5, max_value=5))
        constraints.append((coeffs, rel, rhs))
    # box bounds keep the region a polytope, so the vertex oracle is sound
    for v in variables:
        constraints.append(({v: 1}, "<=", 5))
        constraints.append(({v: -1}, "<=", 5))
    objective = {v: draw(coeff) for v in variables}
    return variables, constraints, objective


@settings(max_examples=120, deadline=None)
@given(small_lps())
def test_simplex_agrees_with_vertex_enumeration(problem):
    variables, raw_constraints, objective = problem
    constraints = [Constraint(c, rel, rhs) for c, rel, rhs in raw_constraints]
    status, value, assignment = _simplex_max(
        variables, constraints, {v: Fraction(c) for v, c in objective.items()}
    )
    oracle_status, oracle_value = brute_force_lp_max(
        variables, raw_constraints, objective
    )
    assert status == oracle_status
    if status == "optimal":
        assert value == oracle_value
        # the reported point must be feasible and achieve the optimum
        assert all(c.satisfied_by(assignment) for c in constraints)
        achieved = sum(
            Fraction(c) * assignment[v] for v, c in objective.items()
        )
        assert achieved == value
