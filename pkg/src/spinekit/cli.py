"""Command-line interface.

Exit status: 0 success, 1 the analysis found the negative outcome
(invalid spine, inadmissible, infeasible, failed certificate or self-test),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import corpus
from .cone import Witness, admissible
from .foliation import NotAdmissibleError, synthesize_minimal, synthesize_theorem1, verify_certificate
from .io import ParseError, dumps, fmt_q, parse, serialize
from .model import validate
from .refinement import check_solution, solution_values, solve_refinement
from .report import analysis_report, certificate_json, outcome_json, to_dot

OK, NEGATIVE, USAGE = 0, 1, 2


class _Style:
    def __init__(self, stream):
        mode = os.environ.get("SPINEKIT_COLOR", "auto")
        self.on = mode == "always" or (mode == "auto" and hasattr(stream, "isatty") and stream.isatty())

    def __call__(self, text: str, ok: bool) -> str:
        if not self.on:
            return text
        return f"\033[{32 if ok else 31}m{text}\033[0m"


def _load(path: str):
    return parse(corpus.resolve(path))


def _vector(xs) -> str:
    return "(" + ", ".join(str(v) for v in xs) + ")"


def cmd_validate(args, out) -> int:
    doc = _load(args.file)
    report = validate(doc.spine)
    style = _Style(out)
    for v in report.violations:
        print(style(str(v), v.severity != "error"), file=out)
    print(style("valid" if report.ok else "invalid", report.ok), file=out)
    return OK if report.ok else NEGATIVE


def cmd_analyze(args, out) -> int:
    doc = _load(args.file)
    rep = analysis_report(doc, budget=args.budget)
    ok = rep["validation"]["ok"] and rep.get("admissibility", {}).get("admissible", False)
    if args.json:
        out.write(dumps(rep))
        return OK if ok else NEGATIVE
    style = _Style(out)
    print(f"spine {rep['spine']}: chi(P) = {rep['euler_characteristic']}", file=out)
    for v in rep["validation"]["violations"]:
        print(f"  {v['severity']}: {v['message']}", file=out)
    if not rep["validation"]["ok"]:
        print(style("invalid", False), file=out)
        return NEGATIVE
    cls = rep["class"]
    kind = "flow-spine" if cls["is_flow_spine"] else f"{cls['circuit_count']} circuits"
    if cls["is_positive"]:
        kind = "positive " + kind
    if cls["is_negative"]:
        kind = "negative " + kind
    print(f"  vertices {cls['n_v']}, triple lines {cls['m']}, {kind}", file=out)
    for rid, row in zip(rep["incidence"]["rows"], rep["incidence"]["entries"]):
        print(f"  {rid}: {row}", file=out)
    print(f"  preferred regions: {', '.join(rep['preferred_regions']) or 'none'}", file=out)
    adm = rep["admissibility"]
    if adm["admissible"]:
        print(style(f"  admissible, witness {_vector(adm['witness'])}", True), file=out)
    else:
        print(style(f"  not admissible, certificate y = {_vector(adm['certificate']['y'])}", False), file=out)
    lb = rep["tangency_lower_bound"]
    print(f"  tangency lower bound {lb['lower']} ({lb['reason']})", file=out)
    for label, cert in rep.get("synthesis", {}).items():
        print(style(f"  {label}: {cert['total']} tangency points, "
                    f"verified {cert['verification']['ok']}", cert["verification"]["ok"]), file=out)
    return OK if ok else NEGATIVE


def cmd_admissible(args, out) -> int:
    doc = _load(args.file)
    report = validate(doc.spine)
    if not report.ok:
        for v in report.errors:
            print(str(v), file=sys.stderr)
        return NEGATIVE
    outcome = admissible(doc.spine)
    cols = [e.id for e in doc.spine.edges]
    if isinstance(outcome, Witness):
        if not args.certificate:
            print("admissible", file=out)
            for eid, v in zip(cols, outcome.x):
                print(f"  {eid} = {fmt_q(v)}", file=out)
        else:
            print("admissible (no infeasibility certificate exists)", file=out)
        return OK
    print("not admissible", file=out)
    if not args.witness or args.certificate:
        rows = [r.id for r in doc.spine.regions]
        print("  Gordan certificate: y >= 0, sum y = 1, y^T C = 0", file=out)
        for rid, v in zip(rows, outcome.y):
            print(f"  y[{rid}] = {fmt_q(v)}", file=out)
        if outcome.degenerate:
            print("  (every row of C is zero)", file=out)
    return NEGATIVE


def cmd_synth(args, out) -> int:
    doc = _load(args.file)
    report = validate(doc.spine)
    if not report.ok:
        if args.json:
            out.write(dumps({"spine": doc.spine.name, "validation": {
                "ok": False, "violations": [{"invariant": v.invariant, "element": v.element,
                                             "message": v.message} for v in report.errors]}}))
        for v in report.errors:
            print(str(v), file=sys.stderr)
        return NEGATIVE
    try:
        if args.minimize:
            cert = synthesize_minimal(doc.spine, args.budget)
        else:
            cert = synthesize_theorem1(doc.spine)
    except NotAdmissibleError as exc:
        if args.json:
            out.write(dumps({"spine": doc.spine.name, "admissible": False,
                             **outcome_json(exc.certificate)}))
        else:
            print(f"not admissible: y = {_vector(fmt_q(v) for v in exc.certificate.y)}", file=out)
        return NEGATIVE
    data = certificate_json(doc.spine, cert)
    ok = data["verification"]["ok"]
    if args.json:
        out.write(dumps({"spine": doc.spine.name, "mode": "minimal" if args.minimize else "theorem1",
                         "certificate": data}))
        return OK if ok else NEGATIVE
    style = _Style(out)
    print(f"total tangencies {data['total']}", file=out)
    print(f"  witness {_vector(data['witness'])}", file=out)
    for vid, pair in data["passage_signs"].items():
        print(f"  {vid}: passages {pair[0]}{pair[1]}  H-piece {data['h_pieces'][vid]}", file=out)
    for eid, s in data["circle_signs"].items():
        print(f"  circle {eid}: {s}", file=out)
    print("  tangency " + ", ".join(f"{k}={v}" for k, v in data["tangency"].items()), file=out)
    led = data["ledger"]
    print(f"  ledger e={led['e']} h={led['h']} t+={led['t_plus']} t-={led['t_minus']}", file=out)
    for note in data["notes"]:
        print(f"  note: {note}", file=out)
    for name, passed in data["verification"]["checks"].items():
        print(style(f"  {'pass' if passed else 'FAIL'} {name}", passed), file=out)
    return OK if ok else NEGATIVE


def cmd_refine(args, out) -> int:
    doc = _load(args.file)
    try:
        system = doc.refinement(args.system)
    except KeyError:
        names = ", ".join(r.name for r in doc.refinements) or "none"
        print(f"no refinement system {args.system!r} (available: {names})", file=sys.stderr)
        return USAGE
    style = _Style(out)
    status = OK
    if system.solution is not None:
        failed = check_solution(system, system.solution)
        print(style(f"published solution: {'verifies' if not failed else 'fails ' + ', '.join(failed)}",
                    not failed), file=out)
        status = NEGATIVE if failed else OK
    outcome = solve_refinement(system)
    if isinstance(outcome, Witness):
        print("feasible", file=out)
        for k, v in solution_values(system, outcome).items():
            print(f"  {k} = {fmt_q(v)}", file=out)
        return status
    print(style("infeasible", False), file=out)
    print(f"  certificate y = {_vector(fmt_q(v) for v in outcome.y)}", file=out)
    return NEGATIVE


def cmd_export(args, out) -> int:
    doc = _load(args.file)
    if args.format == "json":
        out.write(serialize(doc))
        return OK
    report = validate(doc.spine)
    if not report.ok:
        for v in report.errors:
            print(str(v), file=sys.stderr)
        return NEGATIVE
    out.write(to_dot(doc.spine))
    return OK


def _run_one(name: str) -> tuple[bool, list[str]]:
    results = corpus.self_test(corpus.load(name))
    return all(ok for _, ok, _ in results), [
        f"  {'pass' if ok else 'FAIL'} {key}" + ("" if ok else f": {detail}") for key, ok, detail in results]


def cmd_corpus(args, out) -> int:
    names = corpus.names()
    if args.action == "list":
        for n in names:
            print(n + corpus.SUFFIX, file=out)
        return OK
    style = _Style(out)
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(_run_one, names))
    failed = 0
    for n, (ok, lines) in zip(names, results):
        print(style(f"{n}: {'ok' if ok else 'FAILED'}", ok), file=out)
        for line in lines:
            print(line, file=out)
        failed += not ok
    return OK if not failed else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinekit", description="Analyze branched simple spines: admissibility and foliation certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structural invariants of a spine document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="full analysis report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="tangency cap for the minimization")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("admissible", help="decide whether C(P) is nonempty")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--witness", action="store_true")
    g.add_argument("--certificate", action="store_true")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("synth", help="synthesize an S-stable foliation certificate")
    p.add_argument("file")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("refine", help="solve a leaf refinement system of the document")
    p.add_argument("file")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("export", help="export as DOT or canonical JSON")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("corpus", help="list or self-test the built-in documents")
    p.add_argument("action", choices=("list", "run"))
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except FileNotFoundError as exc:
        print(f"spinekit: no such file or built-in document: {exc}", file=sys.stderr)
        return USAGE
    except ParseError as exc:
        for issue in exc.issues:
            print(f"spinekit: {args.file}:{issue}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
