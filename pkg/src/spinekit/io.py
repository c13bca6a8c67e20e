"""Spine documents: parsing with located errors, serialization, reports, DOT."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from json import decoder, scanner
from typing import Any, Optional

from .model import Edge, IN_PORTS, OUT_PORTS, Region, Spine, Vertex
from .refinement import RefinementSystem

SIGNS_IN = {"+": 1, "-": -1, "−": -1}
SIGNS_OUT = {1: "+", -1: "-"}


@dataclass(frozen=True)
class Location:
    line: int
    column: int


@dataclass(frozen=True)
class ParseIssue:
    location: Location
    message: str

    def __str__(self) -> str:
        return f"{self.location.line}:{self.location.column}: {self.message}"


class ParseError(ValueError):
    def __init__(self, issues: list[ParseIssue]):
        self.issues = issues
        super().__init__("\n".join(str(i) for i in issues))


@dataclass(frozen=True)
class SpineDocument:
    spine: Spine
    refinements: tuple[RefinementSystem, ...] = ()
    expected: Optional[dict] = None
    notes: tuple[str, ...] = ()

    def refinement(self, name: str) -> RefinementSystem:
        for r in self.refinements:
            if r.name == name:
                return r
        raise KeyError(name)


def fmt_q(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_q(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError(f"not a rational: {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip().replace("−", "-"))
    raise ValueError(f"not a rational: {v!r}")


# --- located JSON -----------------------------------------------------------

class _Obj(dict):
    pos = 0


class _Arr(list):
    pos = 0


def _pairs(pairs):
    obj = _Obj()
    dupes = []
    for k, v in pairs:
        if k in obj:
            dupes.append(k)
        obj[k] = v
    obj.dupes = dupes
    return obj


def _make_decoder() -> json.JSONDecoder:
    dec = json.JSONDecoder(parse_float=Fraction, object_pairs_hook=_pairs)

    def parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None):
        obj, end = decoder.JSONObject(s_and_end, strict, scan_once, object_hook,
                                      object_pairs_hook, memo)
        obj.pos = s_and_end[1] - 1
        return obj, end

    def parse_array(s_and_end, scan_once):
        values, end = decoder.JSONArray(s_and_end, scan_once)
        arr = _Arr(values)
        arr.pos = s_and_end[1] - 1
        return arr, end

    dec.parse_object = parse_object
    dec.parse_array = parse_array
    dec.scan_once = scanner.py_make_scanner(dec)
    return dec


def _locate(text: str, pos: int) -> Location:
    line = text.count("\n", 0, pos) + 1
    return Location(line, pos - (text.rfind("\n", 0, pos) + 1) + 1)


class _Reader:
    """Schema walk that collects every problem instead of stopping at the first."""

    def __init__(self, text: str):
        self.text = text
        self.issues: list[ParseIssue] = []

    def err(self, node, msg: str, key: Optional[str] = None) -> None:
        pos = getattr(node, "pos", 0)
        if key is not None:
            found = self.text.find(json.dumps(key), pos)
            pos = found if found >= 0 else pos
        self.issues.append(ParseIssue(_locate(self.text, pos), msg))

    def obj(self, node, what: str, required: set, optional: set = frozenset()) -> bool:
        if not isinstance(node, dict):
            self.err(node, f"{what} must be an object")
            return False
        for k in getattr(node, "dupes", []):
            self.err(node, f"{what}: duplicate key {k!r}", k)
        for k in node:
            if k not in required and k not in optional:
                self.err(node, f"{what}: unknown field {k!r}", k)
        ok = True
        for k in sorted(required - set(node)):
            self.err(node, f"{what}: missing field {k!r}")
            ok = False
        return ok

    def arr(self, node, what: str) -> bool:
        if not isinstance(node, list):
            self.err(node, f"{what} must be an array")
            return False
        return True

    def string(self, node, parent, key: str, what: str) -> Optional[str]:
        if not isinstance(node, str) or not node:
            self.err(parent, f"{what}: {key} must be a non-empty string", key)
            return None
        return node

    def rational(self, node, parent, key: str, what: str) -> Optional[Fraction]:
        try:
            return parse_q(node)
        except (ValueError, ZeroDivisionError):
            self.err(parent, f"{what}: {key} is not an exact rational: {node!r}", key)
            return None


def _read_vertex(rd: _Reader, node) -> Optional[Vertex]:
    if not rd.obj(node, "vertex", {"id", "vtype", "pairing"}):
        return None
    vid = rd.string(node["id"], node, "id", "vertex")
    what = f"vertex {vid}"
    vtype = node["vtype"]
    if vtype not in ("L", "R"):
        rd.err(node, f"{what}: vtype must be 'L' or 'R'", "vtype")
    pairing = node["pairing"]
    if not rd.obj(pairing, f"{what} pairing", set(IN_PORTS)):
        return None
    for k in IN_PORTS:
        if pairing[k] not in OUT_PORTS:
            rd.err(pairing, f"{what}: pairing {k} must map to out1 or out2", k)
            return None
    return Vertex(vid, vtype, tuple((k, pairing[k]) for k in IN_PORTS))


def _read_port(rd: _Reader, node, parent, key, what, allowed, vids):
    if node is None:
        return None
    if not isinstance(node, list) or len(node) != 2 or not all(isinstance(p, str) for p in node):
        rd.err(parent, f"{what}: {key} must be [vertex id, port]", key)
        return None
    if node[0] not in vids:
        rd.err(parent, f"{what} references unknown vertex {node[0]!r}", key)
        return None
    if node[1] not in allowed:
        rd.err(parent, f"{what}: {key} port must be one of {', '.join(allowed)}", key)
        return None
    return (node[0], node[1])


def _read_edge(rd: _Reader, node, vids) -> Optional[Edge]:
    if not rd.obj(node, "edge", {"id", "kind"}, {"tail", "head"}):
        return None
    eid = rd.string(node["id"], node, "id", "edge")
    what = f"edge {eid}"
    kind = node["kind"]
    if kind not in ("arc", "circle"):
        rd.err(node, f"{what}: kind must be 'arc' or 'circle'", "kind")
        return None
    tail = _read_port(rd, node.get("tail"), node, "tail", what, OUT_PORTS, vids)
    head = _read_port(rd, node.get("head"), node, "head", what, IN_PORTS, vids)
    if kind == "arc" and (tail is None or head is None):
        if "tail" not in node or "head" not in node:
            rd.err(node, f"{what}: an arc needs tail and head")
        return None
    if kind == "circle" and ("tail" in node or "head" in node):
        rd.err(node, f"{what}: a circle has no tail or head")
        return None
    return Edge(eid, kind, tail, head)


def _read_region(rd: _Reader, node, eids) -> Optional[Region]:
    if not rd.obj(node, "region", {"id", "boundary"}, {"euler_char"}):
        return None
    rid = rd.string(node["id"], node, "id", "region")
    what = f"region {rid}"
    chi = node.get("euler_char", 1)
    if isinstance(chi, bool) or not isinstance(chi, int):
        rd.err(node, f"{what}: euler_char must be an integer", "euler_char")
        return None
    words = node["boundary"]
    if not rd.arr(words, f"{what} boundary"):
        return None
    circuits = []
    for word in words:
        if not rd.arr(word, f"{what} boundary circuit"):
            return None
        trav = []
        for t in word:
            if (not isinstance(t, list) or len(t) != 2 or not isinstance(t[0], str)
                    or t[1] not in SIGNS_IN):
                rd.err(t if isinstance(t, list) else word,
                       f"{what}: traversal must be [edge id, \"+\" or \"-\"]")
                return None
            if t[0] not in eids:
                rd.err(t, f"{what} references unknown edge {t[0]!r}")
                return None
            trav.append((t[0], SIGNS_IN[t[1]]))
        circuits.append(tuple(trav))
    return Region(rid, tuple(circuits), chi)


def _read_form(rd: _Reader, node, what) -> Optional[dict]:
    if not isinstance(node, dict):
        rd.err(node, f"{what} must be an object of coefficients")
        return None
    out = {}
    for k, v in node.items():
        q = rd.rational(v, node, k, what)
        if q is None:
            return None
        out[k] = q
    return out


def _read_refinement(rd: _Reader, node, eids) -> Optional[RefinementSystem]:
    if not rd.obj(node, "refinement", {"name", "variables", "equalities", "inequalities"},
                  {"binding", "solution"}):
        return None
    name = rd.string(node["name"], node, "name", "refinement")
    what = f"refinement {name}"
    variables = node["variables"]
    if not rd.arr(variables, f"{what} variables") or not all(isinstance(v, str) for v in variables):
        rd.err(node, f"{what}: variables must be strings", "variables")
        return None
    if len(set(variables)) != len(variables):
        rd.err(node, f"{what}: duplicate variable names", "variables")
        return None
    known = set(variables) | set(eids)
    binding = {}
    if "binding" in node:
        b = node["binding"]
        if not rd.obj(b, f"{what} binding", set(), set(eids)):
            return None
        for k, v in b.items():
            q = rd.rational(v, b, k, f"{what} binding")
            if q is None:
                return None
            binding[k] = q
    eqs = []
    if not rd.arr(node["equalities"], f"{what} equalities"):
        return None
    for eq in node["equalities"]:
        if not rd.obj(eq, f"{what} equality", {"lhs", "rhs"}):
            return None
        lhs = _read_form(rd, eq["lhs"], f"{what} equality")
        rhs = _read_form(rd, eq["rhs"], f"{what} equality")
        if lhs is None or rhs is None:
            return None
        eqs.append((lhs, rhs))
    ineqs = []
    if not rd.arr(node["inequalities"], f"{what} inequalities"):
        return None
    for f in node["inequalities"]:
        form = _read_form(rd, f, f"{what} inequality")
        if form is None:
            return None
        ineqs.append(form)
    for form in [f for pair in eqs for f in pair] + ineqs:
        for k in form:
            if k not in known:
                rd.err(node, f"{what}: unknown name {k!r} (neither a variable nor an edge)")
                return None
    solution = None
    if "solution" in node:
        s = node["solution"]
        if not rd.obj(s, f"{what} solution", set(variables)):
            return None
        solution = {}
        for k in variables:
            q = rd.rational(s[k], s, k, f"{what} solution")
            if q is None:
                return None
            solution[k] = q
    return RefinementSystem(name, tuple(variables), tuple(eqs), tuple(ineqs), binding, solution)


EXPECTED_KEYS = {
    "valid", "violations", "euler_characteristic", "incidence", "circuit_count",
    "flow_spine", "preferred_regions", "admissible", "known_witnesses", "certificate",
    "positive_orthant_empty", "tangency_lower_bound", "minimal_tangency",
    "minimal_edge_signs", "theorem1", "refinements",
}


def _plain(node):
    if isinstance(node, dict):
        return {k: _plain(v) for k, v in node.items()}
    if isinstance(node, list):
        return [_plain(v) for v in node]
    if isinstance(node, Fraction):
        return fmt_q(node)
    return node


def _raw_ids(nodes) -> set:
    if not isinstance(nodes, list):
        return set()
    return {n["id"] for n in nodes if isinstance(n, dict) and isinstance(n.get("id"), str)}


def parse(text: str) -> SpineDocument:
    """Parse a spine document, raising :class:`ParseError` with every located problem."""
    try:
        root = _make_decoder().decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError([ParseIssue(Location(exc.lineno, exc.colno), exc.msg)]) from None
    rd = _Reader(text)
    if not rd.obj(root, "document", {"name", "vertices", "edges", "regions"},
                  {"notes", "refinements", "expected"}):
        raise ParseError(rd.issues)
    name = rd.string(root["name"], root, "name", "document")
    notes = root.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        rd.err(root, "notes must be a list of strings", "notes")
        notes = []

    def unique(items, what):
        seen = set()
        for it in items:
            if it is None:
                continue
            if it.id in seen:
                rd.err(root, f"duplicate {what} id {it.id!r}", what + "s" if what != "vertex" else "vertices")
            seen.add(it.id)
        return seen

    for key in ("vertices", "edges", "regions"):
        rd.arr(root[key], key)
    vertices = [_read_vertex(rd, v) for v in root["vertices"]] if isinstance(root["vertices"], list) else []
    vids = unique(vertices, "vertex") | _raw_ids(root["vertices"])
    edges = [_read_edge(rd, e, vids) for e in root["edges"]] if isinstance(root["edges"], list) else []
    # a malformed element is reported once, not again at every reference to it
    eids = unique(edges, "edge") | _raw_ids(root["edges"])
    regions = [_read_region(rd, r, eids) for r in root["regions"]] if isinstance(root["regions"], list) else []
    unique(regions, "region")

    refinements = []
    if "refinements" in root and rd.arr(root["refinements"], "refinements"):
        refinements = [_read_refinement(rd, r, eids) for r in root["refinements"]]
        names = [r.name for r in refinements if r is not None]
        for n in {n for n in names if names.count(n) > 1}:
            rd.err(root["refinements"], f"duplicate refinement name {n!r}")
    expected = None
    if "expected" in root:
        if rd.obj(root["expected"], "expected", set(), EXPECTED_KEYS):
            expected = _plain(root["expected"])

    if rd.issues or None in vertices + edges + regions + refinements:
        raise ParseError(rd.issues or [ParseIssue(Location(1, 1), "invalid document")])
    spine = Spine(name, tuple(vertices), tuple(edges), tuple(regions))
    return SpineDocument(spine, tuple(refinements), expected, tuple(notes))


def load(path) -> SpineDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# --- serialization ----------------------------------------------------------

def _form_json(form) -> dict:
    return {k: fmt_q(v) for k, v in form.items()}


def document_to_json(doc: SpineDocument) -> dict:
    s = doc.spine
    out: dict[str, Any] = {"name": s.name}
    if doc.notes:
        out["notes"] = list(doc.notes)
    out["vertices"] = [{"id": v.id, "vtype": v.vtype, "pairing": dict(v.pairing)} for v in s.vertices]
    edges = []
    for e in s.edges:
        item: dict[str, Any] = {"id": e.id, "kind": e.kind}
        if e.kind == "arc":
            item["tail"] = list(e.tail)
            item["head"] = list(e.head)
        edges.append(item)
    out["edges"] = edges
    out["regions"] = [
        {"id": r.id, "euler_char": r.euler_char,
         "boundary": [[[eid, SIGNS_OUT[sg]] for eid, sg in word] for word in r.boundary]}
        for r in s.regions
    ]
    if doc.refinements:
        refs = []
        for r in doc.refinements:
            item = {"name": r.name, "variables": list(r.variables)}
            if r.binding:
                item["binding"] = _form_json(r.binding)
            item["equalities"] = [{"lhs": _form_json(a), "rhs": _form_json(b)} for a, b in r.equalities]
            item["inequalities"] = [_form_json(f) for f in r.strict_inequalities]
            if r.solution is not None:
                item["solution"] = _form_json(r.solution)
            refs.append(item)
        out["refinements"] = refs
    if doc.expected is not None:
        out["expected"] = doc.expected
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def serialize(doc: SpineDocument) -> str:
    return dumps(document_to_json(doc))
