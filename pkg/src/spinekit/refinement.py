"""Linear systems over boundary arcs subdivided by inserted leaves.

Once leaves are drawn inside a region, its boundary edges split into arcs
``A_1, ..., A_k``.  The arc values have to add back up to the edge weights,
arcs that are the same piece of an edge must agree, and every sub-region cut
out by the leaves needs a positive boundary sum (leaves themselves carry 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .cone import Outcome, StrictSystem, Witness, feasible_strict

Form = Mapping[str, Fraction]


class UnboundParameterError(KeyError):
    pass


@dataclass(frozen=True)
class RefinementSystem:
    name: str
    variables: tuple[str, ...]
    equalities: tuple[tuple[Form, Form], ...]       # lhs == rhs
    strict_inequalities: tuple[Form, ...]           # form > 0
    binding: Mapping[str, Fraction] = field(default_factory=dict)
    solution: Optional[Mapping[str, Fraction]] = None   # published values, if any

    def with_binding(self, binding: Mapping[str, Fraction]) -> "RefinementSystem":
        return RefinementSystem(self.name, self.variables, self.equalities,
                                self.strict_inequalities, dict(binding), self.solution)

    def parameters(self) -> set[str]:
        names = set()
        for lhs, rhs in self.equalities:
            names |= set(lhs) | set(rhs)
        for f in self.strict_inequalities:
            names |= set(f)
        return names - set(self.variables)


def _split(form: Form, variables: tuple[str, ...], binding: Mapping[str, Fraction]):
    coeffs = [Fraction(0)] * len(variables)
    index = {v: i for i, v in enumerate(variables)}
    const = Fraction(0)
    for name, c in form.items():
        if name in index:
            coeffs[index[name]] += Fraction(c)
        elif name in binding:
            const += Fraction(c) * Fraction(binding[name])
        else:
            raise UnboundParameterError(name)
    return coeffs, const


def to_strict_system(system: RefinementSystem) -> StrictSystem:
    rows, consts, eqs = [], [], []
    for f in system.strict_inequalities:
        a, c = _split(f, system.variables, system.binding)
        rows.append(a)
        consts.append(c)
    for lhs, rhs in system.equalities:
        a, c = _split(lhs, system.variables, system.binding)
        b, d = _split(rhs, system.variables, system.binding)
        eqs.append(([p - q for p, q in zip(a, b)], d - c))
    return StrictSystem.build(rows, ncols=len(system.variables), constants=consts, equalities=eqs)


def solve_refinement(system: RefinementSystem) -> Outcome:
    return feasible_strict(to_strict_system(system))


def evaluate(form: Form, values: Mapping[str, Fraction], binding: Mapping[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for name, c in form.items():
        if name in values:
            total += Fraction(c) * values[name]
        elif name in binding:
            total += Fraction(c) * Fraction(binding[name])
        else:
            raise UnboundParameterError(name)
    return total


def check_solution(system: RefinementSystem, values: Mapping[str, Fraction]) -> list[str]:
    """Names of the violated constraints; empty when ``values`` solves the system."""
    if set(values) != set(system.variables):
        return ["variables"]
    failures = []
    for k, (lhs, rhs) in enumerate(system.equalities):
        if evaluate(lhs, values, system.binding) != evaluate(rhs, values, system.binding):
            failures.append(f"equality {k}")
    for k, f in enumerate(system.strict_inequalities):
        if evaluate(f, values, system.binding) <= 0:
            failures.append(f"inequality {k}")
    return failures


def solution_values(system: RefinementSystem, witness: Witness) -> dict[str, Fraction]:
    return dict(zip(system.variables, witness.x))
