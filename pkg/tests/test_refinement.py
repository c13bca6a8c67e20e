from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinekit import corpus
from spinekit.cone import InfeasibilityCertificate, Witness, check_certificate
from spinekit.refinement import (RefinementSystem, UnboundParameterError, check_solution,
                                 evaluate, solution_values, solve_refinement, to_strict_system)

F = Fraction


@pytest.fixture(params=["abalone", "zero_tangency"])
def leaves(request):
    return corpus.load(request.param).refinement("leaves")


def test_published_solutions_verify_exactly(leaves):
    assert check_solution(leaves, leaves.solution) == []


def test_zero_tangency_decimals_are_exact():
    system = corpus.load("zero_tangency").refinement("leaves")
    assert system.solution["A1"] == F(8, 5)
    assert system.solution["A5"] == F(3, 2)


def test_solved_from_scratch(leaves):
    outcome = solve_refinement(leaves)
    assert isinstance(outcome, Witness)
    assert check_solution(leaves, solution_values(leaves, outcome)) == []


def test_perturbed_solution_is_rejected(leaves):
    bad = dict(leaves.solution)
    first = leaves.variables[0]
    bad[first] += 1
    assert check_solution(leaves, bad)
    assert check_solution(leaves, {first: F(0)}) == ["variables"]


def test_contradictory_system_certified():
    system = RefinementSystem("contradiction", ("A1",), (({"A1": 1}, {}),), ({"A1": 1},))
    outcome = solve_refinement(system)
    assert isinstance(outcome, InfeasibilityCertificate)
    assert check_certificate(to_strict_system(system), outcome)


def test_binding_enters_as_constants():
    # A1 + A2 = e, A1 > 0, A2 > 0
    system = RefinementSystem("split", ("A1", "A2"), (({"A1": 1, "A2": 1}, {"e": 1}),),
                              ({"A1": 1}, {"A2": 1}))
    assert system.parameters() == {"e"}
    assert isinstance(solve_refinement(system.with_binding({"e": 3})), Witness)
    assert isinstance(solve_refinement(system.with_binding({"e": 0})), InfeasibilityCertificate)
    assert isinstance(solve_refinement(system.with_binding({"e": -2})), InfeasibilityCertificate)


def test_unbound_parameter():
    system = RefinementSystem("loose", ("A1",), (({"A1": 1}, {"e": 1}),), ())
    with pytest.raises(UnboundParameterError):
        solve_refinement(system)
    with pytest.raises(UnboundParameterError):
        evaluate({"e": 1}, {}, {})


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=F(1, 50), max_value=50))
def test_scaling_binding_and_solution_together(lam):
    system = corpus.load("abalone").refinement("leaves")
    scaled = system.with_binding({k: lam * v for k, v in system.binding.items()})
    values = {k: lam * v for k, v in system.solution.items()}
    assert check_solution(scaled, values) == []
    assert isinstance(solve_refinement(scaled), Witness)
