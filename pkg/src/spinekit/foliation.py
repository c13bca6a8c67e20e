"""Combinatorial certificates for S-stable foliations with d(beta) > 0.

A foliation is recorded by the sign of beta on each strand passage through a
vertex (which fixes the H-piece type), the number of simple tangency points
on each triple line, a point of C(P) giving the integrals of beta along the
triple lines, and the global singularity counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Literal, Mapping, Optional, Union

from .circuits import classify, trace_circuits
from .cone import (InfeasibilityCertificate, StrictSystem, Witness, admissible,
                   feasible_strict)
from .model import Spine, incidence_matrix

FLIPPED = "flipped"
CircleSign = Union[int, Literal["flipped"]]


class NotAdmissibleError(ValueError):
    def __init__(self, certificate: InfeasibilityCertificate):
        self.certificate = certificate
        super().__init__("spine is not admissible: C(P) is empty")


@dataclass(frozen=True)
class PassageSigns:
    vertex: Mapping[tuple[str, int], int]
    circles: Mapping[str, CircleSign] = field(default_factory=dict)

    def h_piece(self, vid: str) -> str:
        a, b = self.vertex[(vid, 1)], self.vertex[(vid, 2)]
        if a == b:
            return "1+" if a > 0 else "1-"
        return "2"


@dataclass(frozen=True)
class Ledger:
    e: int
    h: int
    t_plus: int
    t_minus: int = 0


@dataclass(frozen=True)
class FoliationCertificate:
    witness: Witness
    passage_signs: PassageSigns
    tangency: Mapping[str, int]
    ledger: Ledger
    notes: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.tangency.values())


@dataclass(frozen=True)
class TangencyBound:
    lower: int
    reason: Literal["none", "theorem2", "parity"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def ph_check(e: int, h: int, t_plus: int, t_minus: int) -> bool:
    """Poincare-Hopf count for a foliation on a flow-spine."""
    if min(e, h, t_plus, t_minus) < 0:
        raise ValueError("singularity counts must be nonnegative")
    if (t_plus - t_minus) % 2:
        raise ValueError("t_plus - t_minus must be even")
    return e - h == 1 + (t_plus - t_minus) // 2


def preferred_regions(spine: Spine) -> list[str]:
    return [r.id for r in spine.regions
            if all(sign < 0 for word in r.boundary for _, sign in word)]


def tangency_lower_bound(spine: Spine) -> TangencyBound:
    if classify(spine).is_flow_spine and preferred_regions(spine):
        return TangencyBound(2, "theorem2")
    return TangencyBound(0, "none")


def end_signs(spine: Spine, signs: PassageSigns) -> dict[str, tuple[int, int]]:
    """Sign of beta at the tail and at the head of every arc."""
    out = {}
    for e in spine.arcs:
        tv, tp = e.tail
        hv, hp = e.head
        out[e.id] = (signs.vertex[(tv, spine.vertex(tv).passage_of(tp))],
                     signs.vertex[(hv, spine.vertex(hv).passage_of(hp))])
    return out


def _ledger(total: int) -> Ledger:
    return Ledger(e=1 + total // 2, h=0, t_plus=total, t_minus=0)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def synthesize_theorem1(spine: Spine, witness: Optional[Witness] = None) -> FoliationCertificate:
    """Certificate of the straightforward construction.

    Every passage is positive; an arc with nonpositive weight gets two
    tangency points, a circle gets two only when its weight is zero.
    """
    if witness is None:
        outcome = admissible(spine)
        if isinstance(outcome, InfeasibilityCertificate):
            raise NotAdmissibleError(outcome)
        witness = outcome
    C = incidence_matrix(spine)
    x = witness.x
    if len(x) != len(C.cols) or any(sum(c * v for c, v in zip(row, x)) <= 0 for row in C.entries):
        raise ValueError("witness is not a point of C(P)")
    tangency, circles = {}, {}
    for e, v in zip(spine.edges, x):
        if e.kind == "arc":
            tangency[e.id] = 0 if v > 0 else 2
        else:
            tangency[e.id] = 0 if v != 0 else 2
            circles[e.id] = _sign(v) if v != 0 else FLIPPED
    signs = PassageSigns({(v.id, k): 1 for v in spine.vertices for k in (1, 2)}, circles)
    total = sum(tangency.values())
    return FoliationCertificate(Witness(tuple(x)), signs, tangency, _ledger(total))


def synthesize_minimal(spine: Spine, budget: Optional[int] = None) -> FoliationCertificate:
    """Certificate with the fewest tangency points, by iterative deepening.

    Passage-sign patterns are tried in lexicographic order (+ before -),
    circle choices in the order +, -, flipped.  For a pattern, an arc whose
    end signs differ carries one tangency point; an arc with equal end signs
    carries none (and then its weight must have that sign) or two.  Each
    candidate is decided exactly.  ``budget`` caps the tangency total that is
    searched; if the cap stops the search early the Theorem-1 certificate is
    returned with a ``budget`` note.
    """
    fallback = synthesize_theorem1(spine)
    ceiling = fallback.total - 2
    if budget is not None and budget < ceiling:
        ceiling, truncated = budget, True
    else:
        truncated = False

    C = incidence_matrix(spine)
    col = spine.edge_index()
    passages = [(v.id, k) for v in spine.vertices for k in (1, 2)]
    circles = [e.id for e in spine.edges if e.kind == "circle"]
    cache: dict[tuple, object] = {}

    def probe(constraints: tuple[tuple[int, int], ...]):
        if constraints not in cache:
            system = StrictSystem.build(C.entries, ncols=len(C.cols),
                                        sign_constraints=dict(constraints))
            cache[constraints] = feasible_strict(system)
        return cache[constraints]

    layouts = []
    for pattern in product((1, -1), repeat=len(passages)):
        signs = dict(zip(passages, pattern))
        ends = end_signs(spine, PassageSigns(signs))
        differ = [eid for eid, (a, b) in ends.items() if a != b]
        equal = [(col[eid], a) for eid, (a, b) in ends.items() if a == b]
        equal.sort()
        for choice in product((1, -1, FLIPPED), repeat=len(circles)):
            layouts.append((signs, dict(zip(circles, choice)), differ, equal))

    for level in range(0, ceiling + 1, 2):
        for signs, choice, differ, equal in layouts:
            flips = sum(1 for c in choice.values() if c == FLIPPED)
            rest = level - len(differ) - 2 * flips
            if rest < 0 or rest % 2 or rest // 2 > len(equal):
                continue
            fixed = [(col[eid], c) for eid, c in choice.items() if c != FLIPPED]
            for paying in combinations(range(len(equal)), rest // 2):
                constrained = [equal[i] for i in range(len(equal)) if i not in paying]
                outcome = probe(tuple(sorted(constrained + fixed)))
                if isinstance(outcome, Witness):
                    tangency = {e.id: 0 for e in spine.edges}
                    for eid in differ:
                        tangency[eid] = 1
                    for i in paying:
                        tangency[spine.edges[equal[i][0]].id] = 2
                    for eid, c in choice.items():
                        if c == FLIPPED:
                            tangency[eid] = 2
                    notes = ("single-flip edges are combinatorially consistent, not realized",) \
                        if differ else ()
                    return FoliationCertificate(outcome, PassageSigns(signs, choice), tangency,
                                                _ledger(level), notes)
    if truncated:
        return FoliationCertificate(fallback.witness, fallback.passage_signs, fallback.tangency,
                                    fallback.ledger, ("budget",))
    return fallback


def verify_certificate(spine: Spine, cert: FoliationCertificate) -> VerificationReport:
    """Check every certificate invariant exactly; failures are reported, not raised."""
    checks: list[Check] = []
    C = incidence_matrix(spine)
    x = cert.witness.x
    signs = cert.passage_signs
    t = cert.tangency
    edge_ids = [e.id for e in spine.edges]

    shape_ok = len(x) == len(edge_ids)
    values = [sum(c * v for c, v in zip(row, x)) for row in C.entries] if shape_ok else []
    checks.append(Check("witness-in-cone", shape_ok and all(v > 0 for v in values),
                        "row values " + ", ".join(str(v) for v in values)))

    want = {(v.id, k) for v in spine.vertices for k in (1, 2)}
    circle_ids = {e.id for e in spine.edges if e.kind == "circle"}
    total_map = (set(signs.vertex) == want
                 and all(s in (1, -1) for s in signs.vertex.values())
                 and set(signs.circles) == circle_ids
                 and all(s in (1, -1, FLIPPED) for s in signs.circles.values()))
    checks.append(Check("passage-signs-total", total_map))

    counts_ok = (set(t) == set(edge_ids)
                 and all(isinstance(n, int) and n >= 0 for n in t.values()))
    checks.append(Check("tangency-counts", counts_ok))
    if not (shape_ok and total_map and counts_ok):
        return VerificationReport(checks)

    checks.append(Check("s-stable", cert.ledger.t_minus == 0, f"t_minus = {cert.ledger.t_minus}"))
    checks.append(Check("ledger-total", cert.ledger.t_plus == sum(t.values()),
                        f"t_plus = {cert.ledger.t_plus}, sum of tangencies = {sum(t.values())}"))

    ends = end_signs(spine, signs)
    bad_parity, bad_sign = [], []
    for e, v in zip(spine.edges, x):
        if e.kind == "arc":
            a, b = ends[e.id]
            if t[e.id] % 2 != (a != b):
                bad_parity.append(e.id)
            if t[e.id] == 0 and _sign(v) != a:
                bad_sign.append(e.id)
        else:
            s = signs.circles[e.id]
            if s == FLIPPED:
                if t[e.id] < 2 or t[e.id] % 2:
                    bad_parity.append(e.id)
            elif t[e.id] != 0 or _sign(v) != s:
                bad_sign.append(e.id)
    checks.append(Check("edge-parity", not bad_parity, ", ".join(bad_parity)))
    checks.append(Check("edge-sign", not bad_sign, ", ".join(bad_sign)))

    odd = [c.traversal[0] for c in trace_circuits(spine) if sum(t[eid] for eid in c.traversal) % 2]
    checks.append(Check("circuit-parity", not odd, ", ".join(odd)))

    led = cert.ledger
    try:
        ph = ph_check(led.e, led.h, led.t_plus, led.t_minus)
    except ValueError as exc:
        ph, why = False, str(exc)
    else:
        why = f"{led.e} - {led.h} vs 1 + ({led.t_plus} - {led.t_minus})/2"
    checks.append(Check("poincare-hopf", ph, why))

    if classify(spine).is_flow_spine and preferred_regions(spine):
        checks.append(Check("theorem2-bound", sum(t.values()) >= 2,
                            f"total {sum(t.values())} on a flow-spine with a preferred region"))
    return VerificationReport(checks)
