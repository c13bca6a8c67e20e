"""Decomposition of the singular set into immersed circles."""
from __future__ import annotations

from dataclasses import dataclass

from .model import Spine, ensure_valid


class CircuitError(RuntimeError):
    """The port structure does not close up into circuits."""


@dataclass(frozen=True)
class Circuit:
    traversal: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.traversal)


@dataclass(frozen=True)
class SpineClass:
    circuit_count: int
    is_flow_spine: bool
    is_positive: bool
    is_negative: bool
    n_v: int
    m: int


def next_edge_map(spine: Spine) -> dict[str, str]:
    """Arc id -> arc id that continues it through the head vertex's strand."""
    by_tail = {e.tail: e.id for e in spine.arcs}
    succ = {}
    for e in spine.arcs:
        vid, in_port = e.head
        out_port = spine.vertex(vid).out_port(in_port)
        try:
            succ[e.id] = by_tail[(vid, out_port)]
        except KeyError:
            raise CircuitError(f"no edge leaves {vid}.{out_port} after {e.id}") from None
    return succ


def trace_circuits(spine: Spine, *, check: bool = True) -> list[Circuit]:
    """Partition the triple lines into circuits.

    Each circuit is rotated so that it starts at its edge that comes first in
    the spine's edge order, which makes the output independent of where the
    tracing started.
    """
    if check:
        ensure_valid(spine)
    order = spine.edge_index()
    succ = next_edge_map(spine)
    seen: set[str] = set()
    circuits = []
    for e in spine.edges:
        if e.id in seen:
            continue
        if e.kind == "circle":
            seen.add(e.id)
            circuits.append(Circuit((e.id,)))
            continue
        walk = [e.id]
        seen.add(e.id)
        cur = succ[e.id]
        while cur != e.id:
            if cur in seen:
                raise CircuitError(f"edge {cur} is reached twice while tracing from {e.id}")
            walk.append(cur)
            seen.add(cur)
            cur = succ[cur]
        k = min(range(len(walk)), key=lambda i: order[walk[i]])
        circuits.append(Circuit(tuple(walk[k:] + walk[:k])))
    return circuits


def classify(spine: Spine) -> SpineClass:
    circuits = trace_circuits(spine)
    flow = len(circuits) == 1
    types = {v.vtype for v in spine.vertices}
    has_v = bool(spine.vertices)
    return SpineClass(
        circuit_count=len(circuits),
        is_flow_spine=flow,
        is_positive=flow and has_v and types == {"L"},
        is_negative=flow and has_v and types == {"R"},
        n_v=len(spine.vertices),
        m=len(spine.edges),
    )
