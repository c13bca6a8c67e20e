"""Exact two-phase tableau simplex over the rationals.

Solves ``max c.x  s.t.  A x = b, x >= 0`` with :class:`fractions.Fraction`
arithmetic and Bland's rule, so it always terminates and never rounds.
Only meant for the small systems that come out of spines.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

Status = Literal["optimal", "infeasible", "unbounded"]


@dataclass
class LPResult:
    status: Status
    x: list[Fraction] | None = None
    value: Fraction | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows          # each row: coefficients ... , rhs
        self.basis = basis
        self.pivots = 0

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, i: int, j: int, costs: list[Fraction] | None = None) -> None:
        row = self.rows[i]
        p = row[j]
        if p != 1:
            self.rows[i] = row = [a / p for a in row]
        support = [(k, a) for k, a in enumerate(row) if a]
        targets = [other for k, other in enumerate(self.rows) if k != i and other[j]]
        if costs is not None and costs[j]:
            targets.append(costs)
        for other in targets:
            f = other[j]
            for k, a in support:
                other[k] -= f * a
        self.basis[i] = j
        self.pivots += 1

    def reduced_costs(self, c: Sequence[Fraction]) -> list[Fraction]:
        r = list(c) + [Fraction(0)]
        for i, row in enumerate(self.rows):
            cb = c[self.basis[i]]
            if cb:
                r = [a - cb * b for a, b in zip(r, row)]
        return r

    def run(self, c: Sequence[Fraction], allowed: int) -> Status:
        """Bland's rule on columns ``< allowed``; maximizes c."""
        r = self.reduced_costs(c)
        while True:
            entering = next((j for j in range(allowed) if r[j] > 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering, r)

    def solution(self, n: int) -> list[Fraction]:
        x = [Fraction(0)] * n
        for i, j in enumerate(self.basis):
            if j < n:
                x[j] = self.rows[i][-1]
        return x


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c.x`` over ``{x >= 0 : A x = b}`` exactly."""
    n = len(c)
    c = [Fraction(v) for v in c]
    rows = []
    for arow, bi in zip(A, b):
        if len(arow) != n:
            raise ValueError("constraint row length does not match objective")
        arow = [Fraction(v) for v in arow]
        bi = Fraction(bi)
        if bi < 0:
            arow, bi = [-v for v in arow], -bi
        rows.append(arow + [bi])
    m = len(rows)
    if m == 0:
        if any(v > 0 for v in c):
            return LPResult("unbounded")
        return LPResult("optimal", [Fraction(0)] * n, Fraction(0))

    # phase 1 with one artificial per row
    tab = _Tableau(
        [row[:-1] + [Fraction(int(k == i)) for k in range(m)] + [row[-1]]
         for i, row in enumerate(rows)],
        [n + i for i in range(m)],
    )
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.run(phase1, n + m)
    if sum(tab.rows[i][-1] for i, j in enumerate(tab.basis) if j >= n) > 0:
        return LPResult("infeasible", pivots=tab.pivots)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.rows = [row[:n] + row[-1:] for row in tab.rows]

    status = tab.run(c, n)
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = tab.solution(n)
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(c, x)), tab.pivots)
