"""Built-in example documents and their self-test."""
from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path

from .circuits import classify
from .cone import InfeasibilityCertificate, StrictSystem, Witness, admissible, check_witness, \
    positive_orthant_empty
from .foliation import (preferred_regions, synthesize_minimal, synthesize_theorem1,
                        tangency_lower_bound, verify_certificate)
from .io import SpineDocument, fmt_q, parse
from .model import incidence_matrix, validate
from .refinement import check_solution, solution_values, solve_refinement

SUFFIX = ".spine.json"


def names() -> list[str]:
    files = resources.files(__package__).joinpath("data")
    return sorted(p.name[:-len(SUFFIX)] for p in files.iterdir() if p.name.endswith(SUFFIX))


def text(name: str) -> str:
    if name.endswith(SUFFIX):
        name = name[:-len(SUFFIX)]
    return resources.files(__package__).joinpath("data", name + SUFFIX).read_text(encoding="utf-8")


def load(name: str) -> SpineDocument:
    return parse(text(name))


def resolve(path: str) -> str:
    """Document text for a file path, falling back to a built-in name."""
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    base = p.name[:-len(SUFFIX)] if p.name.endswith(SUFFIX) else p.name
    if base in names():
        return text(base)
    raise FileNotFoundError(path)


def self_test(doc: SpineDocument) -> list[tuple[str, bool, str]]:
    """Compare every entry of the document's ``expected`` section with a recomputation."""
    exp = doc.expected or {}
    spine = doc.spine
    results = []

    def record(key, got, want):
        results.append((key, got == want, f"got {got!r}, expected {want!r}"))

    report = validate(spine)
    if "valid" in exp:
        record("valid", report.ok, exp["valid"])
    if "violations" in exp:
        found = {v.invariant for v in report.errors}
        missing = sorted(set(exp["violations"]) - found)
        results.append(("violations", not missing, f"found {sorted(found)}, missing {missing}"))
    if "euler_characteristic" in exp:
        record("euler_characteristic", spine.euler_characteristic(), exp["euler_characteristic"])
    if not report.ok:
        return results

    C = incidence_matrix(spine)
    if "incidence" in exp:
        record("incidence", C.as_lists(), exp["incidence"])
    cls = classify(spine)
    if "circuit_count" in exp:
        record("circuit_count", cls.circuit_count, exp["circuit_count"])
    if "flow_spine" in exp:
        record("flow_spine", cls.is_flow_spine, exp["flow_spine"])
    if "preferred_regions" in exp:
        record("preferred_regions", preferred_regions(spine), exp["preferred_regions"])
    adm = admissible(spine)
    if "admissible" in exp:
        record("admissible", isinstance(adm, Witness), exp["admissible"])
    system = StrictSystem.build(C.entries, ncols=len(C.cols))
    for w in exp.get("known_witnesses", []):
        x = Witness(tuple(Fraction(v) for v in w))
        record(f"known_witness {w}", check_witness(system, x), True)
    if "certificate" in exp:
        got = [fmt_q(v) for v in adm.y] if isinstance(adm, InfeasibilityCertificate) else None
        record("certificate", got, exp["certificate"])
    if "positive_orthant_empty" in exp:
        record("positive_orthant_empty", positive_orthant_empty(spine).empty, exp["positive_orthant_empty"])
    if "tangency_lower_bound" in exp:
        record("tangency_lower_bound", tangency_lower_bound(spine).lower, exp["tangency_lower_bound"])
    if "minimal_tangency" in exp or "minimal_edge_signs" in exp:
        cert = synthesize_minimal(spine)
        results.append(("minimal_certificate_verifies", verify_certificate(spine, cert).ok, ""))
        if "minimal_tangency" in exp:
            record("minimal_tangency", cert.total, exp["minimal_tangency"])
        if "minimal_edge_signs" in exp:
            signs = ["+" if v > 0 else "-" if v < 0 else "0" for v in cert.witness.x]
            record("minimal_edge_signs", signs, exp["minimal_edge_signs"])
    if "theorem1" in exp:
        t1 = exp["theorem1"]
        cert = synthesize_theorem1(spine, Witness(tuple(Fraction(v) for v in t1["witness"])))
        record("theorem1 tangency", dict(cert.tangency), t1["tangency"])
        led = cert.ledger
        record("theorem1 ledger", [led.e, led.h, led.t_plus, led.t_minus], t1["ledger"])
        results.append(("theorem1_certificate_verifies", verify_certificate(spine, cert).ok, ""))
    for name, want in exp.get("refinements", {}).items():
        system = doc.refinement(name)
        outcome = solve_refinement(system)
        record(f"refinement {name} feasible", isinstance(outcome, Witness), want)
        if isinstance(outcome, Witness):
            record(f"refinement {name} solution checks",
                   check_solution(system, solution_values(system, outcome)), [])
        if system.solution is not None:
            record(f"refinement {name} published solution", check_solution(system, system.solution), [])
    return results
