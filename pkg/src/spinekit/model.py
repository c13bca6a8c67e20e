"""Combinatorial encoding of branched simple polyhedra.

A spine is given by its true vertices (each with two in-ports, two out-ports
and the strand pairing between them), its triple lines (oriented arcs from an
out-port to an in-port, or circles) and its regions, whose boundaries are
cyclic words of signed edge traversals.  A traversal sign of +1 means the
region's boundary orientation agrees with the branching orientation of the
edge.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Optional

IN_PORTS = ("in1", "in2")
OUT_PORTS = ("out1", "out2")
PORTS = IN_PORTS + OUT_PORTS

Port = tuple[str, str]          # (vertex id, port name)
Traversal = tuple[str, int]     # (edge id, +1 | -1)


@dataclass(frozen=True)
class Vertex:
    id: str
    vtype: Literal["L", "R"]
    pairing: tuple[tuple[str, str], ...]  # ((in-port, out-port), ...)

    def out_port(self, in_port: str) -> str:
        return dict(self.pairing)[in_port]

    def passage_of(self, port: str) -> int:
        """Index (1 or 2) of the strand passing through ``port``."""
        for k, (i, o) in enumerate(self.pairing, start=1):
            if port in (i, o):
                return k
        raise KeyError(port)


@dataclass(frozen=True)
class Edge:
    id: str
    kind: Literal["arc", "circle"]
    tail: Optional[Port] = None
    head: Optional[Port] = None


@dataclass(frozen=True)
class Region:
    id: str
    boundary: tuple[tuple[Traversal, ...], ...]
    euler_char: int = 1


@dataclass(frozen=True)
class Spine:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    regions: tuple[Region, ...]

    @property
    def arcs(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.kind == "arc")

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def edge_index(self) -> dict[str, int]:
        return {e.id: j for j, e in enumerate(self.edges)}

    def euler_characteristic(self) -> int:
        return (len(self.vertices) - len(self.arcs)
                + sum(r.euler_char for r in self.regions))


@dataclass(frozen=True)
class Violation:
    invariant: str
    element: str
    message: str
    severity: Literal["error", "warning"] = "error"

    def __str__(self) -> str:
        return f"{self.severity}: [{self.invariant}] {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def errors(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == "error"]

    @property
    def warnings(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def messages(self) -> list[str]:
        return [v.message for v in self.violations]

    def __bool__(self) -> bool:
        return bool(self.violations)


class InvalidSpineError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.errors))


@dataclass(frozen=True)
class IncidenceMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def column_sums(self) -> list[int]:
        return [sum(col) for col in zip(*self.entries)] if self.entries else [0] * len(self.cols)

    def row(self, rid: str) -> tuple[int, ...]:
        return self.entries[self.rows.index(rid)]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _start_port(spine_edges: dict[str, Edge], t: Traversal) -> Optional[Port]:
    e = spine_edges[t[0]]
    return e.tail if t[1] > 0 else e.head


def _end_port(spine_edges: dict[str, Edge], t: Traversal) -> Optional[Port]:
    e = spine_edges[t[0]]
    return e.head if t[1] > 0 else e.tail


def _check_vertices(spine: Spine, out: list[Violation]) -> None:
    seen = Counter(v.id for v in spine.vertices)
    for vid, n in seen.items():
        if n > 1:
            out.append(Violation("unique-id", vid, f"vertex id {vid} used {n} times"))
    for v in spine.vertices:
        ins = [i for i, _ in v.pairing]
        outs = [o for _, o in v.pairing]
        if sorted(ins) != list(IN_PORTS) or sorted(outs) != list(OUT_PORTS):
            out.append(Violation(
                "pairing-bijection", v.id,
                f"vertex {v.id} pairing {dict(v.pairing)} is not a bijection in1,in2 -> out1,out2"))
        if v.vtype not in ("L", "R"):
            out.append(Violation("vertex-type", v.id, f"vertex {v.id} has type {v.vtype!r}, expected L or R"))


def _check_edges(spine: Spine, out: list[Violation]) -> None:
    seen = Counter(e.id for e in spine.edges)
    for eid, n in seen.items():
        if n > 1:
            out.append(Violation("unique-id", eid, f"edge id {eid} used {n} times"))
    vids = {v.id for v in spine.vertices}
    users: dict[Port, list[str]] = {}
    for e in spine.edges:
        if e.kind == "arc":
            if e.tail is None or e.head is None:
                out.append(Violation("edge-endpoints", e.id, f"arc edge {e.id} needs both tail and head"))
                continue
            for end, allowed in ((e.tail, OUT_PORTS), (e.head, IN_PORTS)):
                if end[0] not in vids:
                    out.append(Violation("edge-endpoints", e.id,
                                         f"edge {e.id} references unknown vertex {end[0]}"))
                elif end[1] not in allowed:
                    out.append(Violation("edge-endpoints", e.id,
                                         f"edge {e.id} uses port {end[1]} at the wrong end"))
                else:
                    users.setdefault(end, []).append(e.id)
        elif e.kind == "circle":
            if e.tail is not None or e.head is not None:
                out.append(Violation("edge-endpoints", e.id, f"circle edge {e.id} must not have endpoints"))
        else:
            out.append(Violation("edge-kind", e.id, f"edge {e.id} has unknown kind {e.kind!r}"))
    for v in spine.vertices:
        for p in PORTS:
            n = len(users.get((v.id, p), []))
            if n != 1:
                out.append(Violation("port-usage", v.id,
                                     f"port {v.id}.{p} is used by {n} edge endpoints, expected 1"))


def _check_regions(spine: Spine, out: list[Violation]) -> None:
    seen = Counter(r.id for r in spine.regions)
    for rid, n in seen.items():
        if n > 1:
            out.append(Violation("unique-id", rid, f"region id {rid} used {n} times"))
    edges = {e.id: e for e in spine.edges}
    wings = Counter()
    corners: dict[str, Counter] = {v.id: Counter() for v in spine.vertices}
    for r in spine.regions:
        if not r.boundary:
            out.append(Violation("region-boundary", r.id, f"region {r.id} has empty boundary"))
        for word in r.boundary:
            if not word:
                out.append(Violation("region-boundary", r.id, f"region {r.id} has an empty boundary circuit"))
                continue
            bad = [t for t in word if t[0] not in edges or t[1] not in (1, -1)]
            for t in bad:
                out.append(Violation("region-boundary", r.id,
                                     f"region {r.id} has bad traversal {t[0]!r} sign {t[1]!r}"))
            if bad:
                continue
            wings.update(t[0] for t in word)
            if any(edges[t[0]].kind == "circle" for t in word):
                if len(word) != 1:
                    out.append(Violation("region-boundary", r.id,
                                         f"region {r.id}: a circle edge must form a boundary circuit alone"))
                continue
            for a, b in zip(word, word[1:] + word[:1]):
                arrive, depart = _end_port(edges, a), _start_port(edges, b)
                if arrive is None or depart is None:
                    continue
                if arrive[0] != depart[0]:
                    out.append(Violation(
                        "corner", r.id,
                        f"region {r.id}: traversal {a[0]} ends at {arrive[0]} but {b[0]} starts at {depart[0]}"))
                elif arrive[1] == depart[1]:
                    out.append(Violation(
                        "corner", r.id,
                        f"region {r.id}: corner {a[0]}->{b[0]} folds back on port {arrive[0]}.{arrive[1]}"))
                elif arrive[0] in corners:
                    corners[arrive[0]][frozenset((arrive[1], depart[1]))] += 1
    for e in spine.edges:
        if wings[e.id] != 3:
            out.append(Violation("wing-count", e.id, f"edge {e.id} traversed {wings[e.id]} times ≠ 3"))
    for vid, seen_corners in corners.items():
        for pair in map(frozenset, combinations(PORTS, 2)):
            if seen_corners[pair] != 1:
                a, b = sorted(pair)
                out.append(Violation(
                    "vertex-corners", vid,
                    f"vertex {vid}: corner between {a} and {b} appears {seen_corners[pair]} times, expected 1"))


def validate(spine: Spine) -> ValidationReport:
    """Check the structural invariants of an encoded spine.

    Violations are returned as data.  Besides the wing count and the
    branching condition (column sums of 1) this checks corner consistency:
    consecutive traversals of a boundary word must meet at one vertex, and
    each of the six port pairs of a vertex must bound exactly one corner.
    ``chi(P) != 1`` is only a warning.
    """
    out: list[Violation] = []
    _check_vertices(spine, out)
    _check_edges(spine, out)
    _check_regions(spine, out)
    if not any(v.invariant in ("region-boundary", "wing-count", "unique-id") for v in out):
        m = incidence_matrix(spine, check=False)
        for eid, s in zip(m.cols, m.column_sums()):
            if s != 1:
                out.append(Violation("column-sum", eid,
                                     f"edge {eid}: traversal signs sum to {s}, expected 1 (+,+,- wings)"))
    chi = spine.euler_characteristic()
    if chi != 1:
        out.append(Violation("euler-characteristic", spine.name,
                             f"chi(P) = {chi}, spines of closed 3-manifolds have chi = 1", "warning"))
    return ValidationReport(out)


def ensure_valid(spine: Spine) -> None:
    report = validate(spine)
    if not report.ok:
        raise InvalidSpineError(report)


def incidence_matrix(spine: Spine, *, check: bool = True) -> IncidenceMatrix:
    """Region-by-edge matrix of aggregated traversal signs."""
    if check:
        ensure_valid(spine)
    col = spine.edge_index()
    rows = []
    for r in spine.regions:
        row = [0] * len(spine.edges)
        for word in r.boundary:
            for eid, sign in word:
                row[col[eid]] += sign
        rows.append(tuple(row))
    return IncidenceMatrix(tuple(r.id for r in spine.regions),
                           tuple(e.id for e in spine.edges), tuple(rows))
