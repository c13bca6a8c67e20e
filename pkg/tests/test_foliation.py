import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinekit.circuits import classify
from spinekit.cone import InfeasibilityCertificate, Witness, admissible
from spinekit.foliation import (FLIPPED, Ledger, NotAdmissibleError, PassageSigns, ph_check,
                                preferred_regions, synthesize_minimal, synthesize_theorem1,
                                tangency_lower_bound, verify_certificate)
from spinekit.model import incidence_matrix

from oracles import brute_force_min_tangency
from spinegen import random_spine

W = lambda *xs: Witness(tuple(Fraction(v) for v in xs))  # noqa: E731


@pytest.mark.parametrize("e,h,tp,tm,want", [
    (1, 0, 0, 0, True), (2, 0, 2, 0, True), (4, 0, 6, 0, True),
    (1, 1, 2, 2, False), (2, 1, 2, 0, False), (1, 0, 2, 2, True),
])
def test_ph_check(e, h, tp, tm, want):
    assert ph_check(e, h, tp, tm) is want


def test_ph_check_rejects_odd_and_negative():
    with pytest.raises(ValueError):
        ph_check(1, 0, 1, 0)
    with pytest.raises(ValueError):
        ph_check(-1, 0, 0, 0)


def test_preferred_regions_and_bounds(abalone, zero_tangency, s1xs2):
    assert preferred_regions(abalone) == ["R1"]
    assert tangency_lower_bound(abalone).lower == 2
    assert tangency_lower_bound(abalone).reason == "theorem2"
    assert preferred_regions(zero_tangency) == ["R2"]
    assert tangency_lower_bound(zero_tangency).lower == 0
    assert tangency_lower_bound(s1xs2).lower == 0


def test_theorem1_on_abalone(abalone):
    cert = synthesize_theorem1(abalone, W(-1, 13))
    assert dict(cert.tangency) == {"e1": 2, "e2": 0}
    assert cert.ledger == Ledger(e=2, h=0, t_plus=2, t_minus=0)
    assert cert.passage_signs.h_piece("v1") == "1+"
    assert verify_certificate(abalone, cert).ok


def test_theorem1_on_zero_tangency(zero_tangency):
    cert = synthesize_theorem1(zero_tangency, W(6, 1, -2, -1, -1, 6))
    assert cert.total == 6 <= 2 * len(zero_tangency.edges)
    assert cert.ledger == Ledger(4, 0, 6, 0)
    assert verify_certificate(zero_tangency, cert).ok


def test_theorem1_rejects_points_outside_cone(abalone):
    with pytest.raises(ValueError):
        synthesize_theorem1(abalone, W(1, 1))


def test_theorem1_on_inadmissible_raises(s1xs2):
    with pytest.raises(NotAdmissibleError) as info:
        synthesize_theorem1(s1xs2)
    assert isinstance(info.value.certificate, InfeasibilityCertificate)


def test_minimal_on_corpus(abalone, zero_tangency):
    cert = synthesize_minimal(abalone)
    assert cert.total == 2 and verify_certificate(abalone, cert).ok
    cert = synthesize_minimal(zero_tangency)
    assert cert.total == 0 and verify_certificate(zero_tangency, cert).ok
    signs = [(v > 0) - (v < 0) for v in cert.witness.x]
    assert signs == [1, 1, -1, -1, -1, 1]


def test_verify_catches_tampering(abalone):
    cert = synthesize_theorem1(abalone, W(-1, 13))
    r = verify_certificate(abalone, replace(cert, ledger=Ledger(2, 0, 0, 0)))
    assert "ledger-total" in r.failed() and "poincare-hopf" in r.failed()
    r = verify_certificate(abalone, replace(cert, tangency={"e1": 0, "e2": 0}, ledger=Ledger(1, 0, 0, 0)))
    assert "edge-sign" in r.failed() and "theorem2-bound" in r.failed()
    r = verify_certificate(abalone, replace(cert, tangency={"e1": 1, "e2": 0}))
    assert "edge-parity" in r.failed() and "circuit-parity" in r.failed()
    r = verify_certificate(abalone, replace(cert, ledger=Ledger(2, 0, 2, 2)))
    assert "s-stable" in r.failed()
    r = verify_certificate(abalone, replace(cert, witness=W(1, 1)))
    assert "witness-in-cone" in r.failed()
    r = verify_certificate(abalone, replace(cert, passage_signs=PassageSigns({("v1", 1): 1})))
    assert "passage-signs-total" in r.failed()


def test_budget_falls_back(zero_tangency):
    cert = synthesize_minimal(zero_tangency, budget=0)
    assert cert.total == 0
    spine = None
    rng = random.Random(3)
    while spine is None:
        s = random_spine(rng, 2)
        if isinstance(admissible(s), Witness) and synthesize_theorem1(s).total >= 4 \
                and synthesize_minimal(s).total >= 2:
            spine = s
    capped = synthesize_minimal(spine, budget=0)
    assert capped.notes == ("budget",)
    assert verify_certificate(spine, capped).ok


def admissible_spine(seed, n):
    spine = random_spine(random.Random(seed), n)
    outcome = admissible(spine)
    return spine, outcome


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 2))
def test_minimal_matches_brute_force(seed, n):
    spine, outcome = admissible_spine(seed, n)
    if not isinstance(outcome, Witness):
        with pytest.raises(NotAdmissibleError):
            synthesize_minimal(spine)
        return
    cert = synthesize_minimal(spine)
    assert verify_certificate(spine, cert).ok
    assert cert.total == brute_force_min_tangency(spine, incidence_matrix(spine).entries)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_certificate_properties(seed, n):
    spine, outcome = admissible_spine(seed, n)
    if not isinstance(outcome, Witness):
        return
    t1 = synthesize_theorem1(spine, outcome)
    assert verify_certificate(spine, t1).ok
    assert t1.total == 2 * sum(1 for v in outcome.x if v <= 0) <= 2 * len(spine.edges)
    assert all(s == 1 for s in t1.passage_signs.vertex.values())
    best = synthesize_minimal(spine)
    assert verify_certificate(spine, best).ok
    assert tangency_lower_bound(spine).lower <= best.total <= t1.total
    assert best.total % 2 == 0
    cls = classify(spine)
    if cls.is_flow_spine and best.total == 0:
        assert not preferred_regions(spine)
        assert any(v > 0 for v in best.witness.x)
    for eid, s in best.passage_signs.circles.items():
        assert s in (1, -1, FLIPPED)
