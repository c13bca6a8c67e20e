"""Machine-readable analysis reports and DOT export."""
from __future__ import annotations

from typing import Any, Optional

from .circuits import classify, trace_circuits
from .cone import InfeasibilityCertificate, Witness, admissible, positive_orthant_empty
from .foliation import (FLIPPED, FoliationCertificate, synthesize_minimal, synthesize_theorem1,
                        tangency_lower_bound, preferred_regions, verify_certificate)
from .io import SIGNS_OUT, SpineDocument, fmt_q
from .model import Spine, incidence_matrix, validate
from .refinement import check_solution, solution_values, solve_refinement


def outcome_json(outcome, cols=None) -> dict:
    if isinstance(outcome, Witness):
        return {"feasible": True, "witness": [fmt_q(v) for v in outcome.x]}
    cert: InfeasibilityCertificate = outcome
    out: dict[str, Any] = {"feasible": False, "certificate": {"y": [fmt_q(v) for v in cert.y]}}
    if cert.y_signs:
        out["certificate"]["y_signs"] = {str(j): fmt_q(v) for j, v in sorted(cert.y_signs.items())}
    if cert.y_unit:
        out["certificate"]["y_unit"] = fmt_q(cert.y_unit)
    if cert.z:
        out["certificate"]["z"] = [fmt_q(v) for v in cert.z]
    if cert.degenerate:
        out["certificate"]["degenerate"] = True
    return out


def certificate_json(spine: Spine, cert: FoliationCertificate) -> dict:
    signs = cert.passage_signs
    report = verify_certificate(spine, cert)
    return {
        "witness": [fmt_q(v) for v in cert.witness.x],
        "passage_signs": {v.id: [SIGNS_OUT[signs.vertex[(v.id, 1)]], SIGNS_OUT[signs.vertex[(v.id, 2)]]]
                          for v in spine.vertices},
        "h_pieces": {v.id: signs.h_piece(v.id) for v in spine.vertices},
        "circle_signs": {eid: (s if s == FLIPPED else SIGNS_OUT[s]) for eid, s in signs.circles.items()},
        "tangency": dict(cert.tangency),
        "total": cert.total,
        "ledger": {"e": cert.ledger.e, "h": cert.ledger.h,
                   "t_plus": cert.ledger.t_plus, "t_minus": cert.ledger.t_minus},
        "notes": list(cert.notes),
        "verification": {"ok": report.ok,
                         "checks": {c.name: c.passed for c in report.checks}},
    }


def analysis_report(doc: SpineDocument, *, synthesis: bool = True,
                    budget: Optional[int] = None) -> dict:
    """Everything the library can say about one document, as plain JSON data."""
    spine = doc.spine
    v = validate(spine)
    out: dict[str, Any] = {
        "spine": spine.name,
        "validation": {
            "ok": v.ok,
            "violations": [{"invariant": x.invariant, "element": x.element,
                            "severity": x.severity, "message": x.message} for x in v.violations],
        },
        "euler_characteristic": spine.euler_characteristic(),
    }
    if not v.ok:
        return out
    C = incidence_matrix(spine)
    out["incidence"] = {"rows": list(C.rows), "cols": list(C.cols), "entries": C.as_lists()}
    cls = classify(spine)
    out["class"] = {
        "circuit_count": cls.circuit_count, "is_flow_spine": cls.is_flow_spine,
        "is_positive": cls.is_positive, "is_negative": cls.is_negative,
        "n_v": cls.n_v, "m": cls.m,
        "circuits": [list(c.traversal) for c in trace_circuits(spine)],
    }
    out["preferred_regions"] = preferred_regions(spine)
    adm = admissible(spine)
    out["admissibility"] = {"admissible": isinstance(adm, Witness), **outcome_json(adm)}
    orth = positive_orthant_empty(spine)
    out["positive_orthant"] = {"empty": orth.empty, **outcome_json(orth.outcome)}
    bound = tangency_lower_bound(spine)
    out["tangency_lower_bound"] = {"lower": bound.lower, "reason": bound.reason}
    if synthesis and isinstance(adm, Witness):
        out["synthesis"] = {
            "theorem1": certificate_json(spine, synthesize_theorem1(spine, adm)),
            "minimal": certificate_json(spine, synthesize_minimal(spine, budget)),
        }
    if doc.refinements:
        out["refinements"] = {r.name: refinement_json(r) for r in doc.refinements}
    return out


def refinement_json(system) -> dict:
    outcome = solve_refinement(system)
    out: dict[str, Any] = {"feasible": isinstance(outcome, Witness)}
    if isinstance(outcome, Witness):
        out["solution"] = {k: fmt_q(v) for k, v in solution_values(system, outcome).items()}
    else:
        out.update(outcome_json(outcome))
    if system.solution is not None:
        out["published_solution_violations"] = check_solution(system, system.solution)
    return out


_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4"]


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(spine: Spine) -> str:
    """Vertices as nodes, triple lines as directed edges colored by circuit,
    each region as a cluster of its boundary traversals."""
    circuits = trace_circuits(spine)
    color = {eid: _PALETTE[k % len(_PALETTE)] for k, c in enumerate(circuits) for eid in c.traversal}
    lines = [f"digraph {_dot_id(spine.name)} {{", "  node [shape=circle];"]
    for v in spine.vertices:
        lines.append(f"  {_dot_id(v.id)} [label={_dot_id(v.id + ' (' + v.vtype + ')')}];")
    for e in spine.edges:
        if e.kind == "arc":
            lines.append(f"  {_dot_id(e.tail[0])} -> {_dot_id(e.head[0])} "
                         f"[label={_dot_id(e.id)}, color={color[e.id]}, "
                         f"taillabel={_dot_id(e.tail[1])}, headlabel={_dot_id(e.head[1])}];")
        else:
            node = _dot_id("circle:" + e.id)
            lines.append(f"  {node} [shape=point];")
            lines.append(f"  {node} -> {node} [label={_dot_id(e.id)}, color={color[e.id]}];")
    for r in spine.regions:
        lines.append(f"  subgraph {_dot_id('cluster_' + r.id)} {{")
        lines.append(f"    label={_dot_id(r.id + ' (chi=' + str(r.euler_char) + ')')};")
        for w, word in enumerate(r.boundary):
            prev = None
            for k, (eid, sg) in enumerate(word):
                node = _dot_id(f"{r.id}:{w}:{k}")
                lines.append(f"    {node} [shape=box, label={_dot_id(SIGNS_OUT[sg] + eid)}];")
                if prev is not None:
                    lines.append(f"    {prev} -> {node} [style=dotted];")
                prev = node
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
