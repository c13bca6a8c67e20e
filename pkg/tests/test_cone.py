import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinekit import corpus
from spinekit.cone import (InfeasibilityCertificate, StrictSystem, Witness, admissible,
                           check_certificate, check_witness, feasible_strict,
                           positive_orthant_empty, spine_system, verify)
from spinekit.foliation import preferred_regions
from spinekit.model import incidence_matrix

from oracles import fm_strict_feasible, fm_with_signs
from spinegen import random_spine

ABALONE = [[-1, 0], [2, 1]]
ZERO_TANGENCY = [[0, 0, 0, 0, 0, 1], [0, -1, -1, 0, 0, 0], [1, 1, 0, 0, 0, -1], [0, 1, 2, 1, 1, 1]]


def test_abalone_system_has_witness():
    system = StrictSystem.build(ABALONE)
    outcome = feasible_strict(system)
    assert isinstance(outcome, Witness) and check_witness(system, outcome)
    x1, x2 = outcome.x
    assert x1 < 0 and 2 * x1 + x2 > 0
    assert min(system.row_values(outcome.x)) == 1
    assert check_witness(system, Witness((Fraction(-1), Fraction(13))))
    assert system.row_values((-1, 13)) == [1, 11]


def test_opposite_rows_give_gordan_certificate():
    system = StrictSystem.build([[1, -1], [-1, 1]])
    cert = feasible_strict(system)
    assert isinstance(cert, InfeasibilityCertificate)
    assert cert.y == (Fraction(1, 2), Fraction(1, 2))
    assert check_certificate(system, cert)


def test_zero_tangency_rows_at_published_witness():
    system = StrictSystem.build(ZERO_TANGENCY)
    assert system.row_values((6, 1, -2, -1, -1, 6)) == [6, 1, 1, 1]
    assert check_witness(system, Witness(tuple(map(Fraction, (6, 1, -2, -1, -1, 6)))))
    assert isinstance(feasible_strict(system), Witness)


def test_admissible_corpus(abalone, zero_tangency, s1xs2):
    assert isinstance(admissible(abalone), Witness)
    assert isinstance(admissible(zero_tangency), Witness)
    cert = admissible(s1xs2)
    assert isinstance(cert, InfeasibilityCertificate)
    assert check_certificate(spine_system(s1xs2), cert)
    assert not cert.degenerate


def test_positive_orthant(abalone, zero_tangency):
    assert positive_orthant_empty(abalone).empty
    assert positive_orthant_empty(zero_tangency).empty
    # one all-plus word per edge: the identity pattern
    system = StrictSystem.build([[1, 0, 0], [0, 1, 0], [0, 0, 1]], sign_constraints={0: 1, 1: 1, 2: 1})
    outcome = feasible_strict(system)
    assert isinstance(outcome, Witness) and outcome.x == (1, 1, 1)


def test_all_zero_rows_are_flagged():
    cert = feasible_strict(StrictSystem.build([[0, 0], [0, 0]]))
    assert isinstance(cert, InfeasibilityCertificate) and cert.degenerate
    assert sum(cert.y) == 1


def test_equalities_and_constants():
    # x > 0, x = 0
    system = StrictSystem.build([[1]], equalities=[([1], 0)])
    cert = feasible_strict(system)
    assert isinstance(cert, InfeasibilityCertificate) and check_certificate(system, cert)
    # x - 5 > 0, x + y = 7, y > -3
    system = StrictSystem.build([[1, 0], [0, 1]], constants=[-5, 3], equalities=[([1, 1], 7)])
    w = feasible_strict(system)
    assert isinstance(w, Witness) and check_witness(system, w)
    # x - 5 > 0, x + y = 7, y > 3
    system = StrictSystem.build([[1, 0], [0, 1]], constants=[-5, -3], equalities=[([1, 1], 7)])
    cert = feasible_strict(system)
    assert isinstance(cert, InfeasibilityCertificate) and check_certificate(system, cert)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        StrictSystem.build([[1, 2], [1]])
    with pytest.raises(ValueError):
        StrictSystem.build([[1, 2]], sign_constraints={5: 1})
    with pytest.raises(ValueError):
        StrictSystem.build([[1, 2]], equalities=[([1], 0)])


def test_tampered_certificates_fail():
    system = StrictSystem.build([[1, -1], [-1, 1]])
    assert not check_certificate(system, InfeasibilityCertificate((Fraction(1), Fraction(0))))
    assert not check_certificate(system, InfeasibilityCertificate((Fraction(1), Fraction(1))))
    assert not check_certificate(system, InfeasibilityCertificate((Fraction(3, 2), Fraction(-1, 2))))


small_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=5))


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_agrees_with_fourier_motzkin(M):
    system = StrictSystem.build(M)
    outcome = feasible_strict(system)
    assert verify(system, outcome)
    assert isinstance(outcome, Witness) == fm_strict_feasible(M, len(M[0]))


@settings(max_examples=100, deadline=None)
@given(small_matrix, st.data())
def test_sign_constraints_agree_with_fourier_motzkin(M, data):
    n = len(M[0])
    signs = data.draw(st.dictionaries(st.integers(0, n - 1), st.sampled_from([1, -1])))
    system = StrictSystem.build(M, sign_constraints=signs)
    outcome = feasible_strict(system)
    assert verify(system, outcome)
    assert isinstance(outcome, Witness) == fm_with_signs(M, signs, n)


@settings(max_examples=100, deadline=None)
@given(small_matrix, st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_witness_scaling(M, lam):
    system = StrictSystem.build(M)
    outcome = feasible_strict(system)
    if isinstance(outcome, Witness):
        assert check_witness(system, Witness(tuple(lam * v for v in outcome.x)))


def negated_sum_system(rng: random.Random):
    rows = [[rng.randint(-4, 4) for _ in range(rng.randint(1, 5))]]
    n = len(rows[0])
    rows += [[rng.randint(-4, 4) for _ in range(n)] for _ in range(rng.randint(0, 4))]
    rows.append([-sum(col) for col in zip(*rows)])
    rng.shuffle(rows)
    return rows


def test_random_negated_sum_systems_certify():
    rng = random.Random(7)
    for _ in range(100):
        M = negated_sum_system(rng)
        system = StrictSystem.build(M)
        cert = feasible_strict(system)
        assert isinstance(cert, InfeasibilityCertificate)
        assert check_certificate(system, cert)
        assert all(v >= 0 for v in cert.y) and sum(cert.y) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_all_negative_pattern_is_infeasible(seed, n):
    spine = random_spine(random.Random(seed), n)
    system = spine_system(spine, {j: -1 for j in range(len(spine.edges))})
    cert = feasible_strict(system)
    assert isinstance(cert, InfeasibilityCertificate) and check_certificate(system, cert)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_preferred_region_empties_positive_orthant(seed, n):
    spine = random_spine(random.Random(seed), n)
    result = positive_orthant_empty(spine)
    assert verify(spine_system(spine, {j: 1 for j in range(len(spine.edges))}), result.outcome)
    if preferred_regions(spine):
        assert result.empty


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_admissibility_on_random_spines_matches_oracle(seed, n):
    spine = random_spine(random.Random(seed), n)
    C = incidence_matrix(spine)
    outcome = admissible(spine)
    assert verify(spine_system(spine), outcome)
    assert isinstance(outcome, Witness) == fm_strict_feasible(C.entries, len(C.cols))


def test_corpus_certificates_verify():
    for name in ("abalone", "zero_tangency", "s1xs2"):
        spine = corpus.load(name).spine
        assert verify(spine_system(spine), admissible(spine))
