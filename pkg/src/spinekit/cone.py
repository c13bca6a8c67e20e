"""Exact feasibility of strict linear systems and the admissibility cone.

A :class:`StrictSystem` asks for ``x`` with ``matrix[i].x + constants[i] > 0``
for every row, ``sign * x[j] > 0`` for every sign constraint and
``coeffs.x == rhs`` for every equality.  :func:`feasible_strict` answers with
a :class:`Witness` or an :class:`InfeasibilityCertificate`; both can be
checked by exact substitution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .model import Spine, incidence_matrix
from .simplex import solve_lp

Q = Fraction


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class StrictSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    ncols: int
    constants: tuple[Fraction, ...] = ()
    sign_constraints: Mapping[int, int] = field(default_factory=dict)
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    @classmethod
    def build(cls, matrix, *, ncols=None, constants=None, sign_constraints=None,
              equalities=None) -> "StrictSystem":
        matrix = tuple(tuple(_q(v) for v in row) for row in matrix)
        if ncols is None:
            if not matrix:
                raise ValueError("ncols is required for a system without rows")
            ncols = len(matrix[0])
        system = cls(
            matrix=matrix,
            ncols=ncols,
            constants=tuple(_q(v) for v in constants) if constants is not None else (),
            sign_constraints=dict(sorted((sign_constraints or {}).items())),
            equalities=tuple((tuple(_q(v) for v in a), _q(b)) for a, b in (equalities or ())),
        )
        system.check_shape()
        return system

    def check_shape(self) -> None:
        for i, row in enumerate(self.matrix):
            if len(row) != self.ncols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.ncols}")
        if self.constants and len(self.constants) != len(self.matrix):
            raise ValueError("constants must have one entry per row")
        for j, s in self.sign_constraints.items():
            if not 0 <= j < self.ncols:
                raise ValueError(f"sign constraint on column {j} out of range")
            if s not in (1, -1):
                raise ValueError(f"sign constraint on column {j} must be +1 or -1")
        for k, (a, _) in enumerate(self.equalities):
            if len(a) != self.ncols:
                raise ValueError(f"equality {k} has {len(a)} coefficients, expected {self.ncols}")

    @property
    def homogeneous(self) -> bool:
        return not any(self.constants) and not any(b for _, b in self.equalities)

    def row_values(self, x: Sequence[Fraction]) -> list[Fraction]:
        consts = self.constants or (Fraction(0),) * len(self.matrix)
        return [_dot(row, x) + c for row, c in zip(self.matrix, consts)]

    def strict_forms(self) -> list[tuple[str, tuple[Fraction, ...]]]:
        """All strict constraints as homogeneous forms over ``(x, s)``."""
        consts = self.constants or (Fraction(0),) * len(self.matrix)
        forms = [(f"row{i}", row + (c,)) for i, (row, c) in enumerate(zip(self.matrix, consts))]
        for j, s in self.sign_constraints.items():
            forms.append((f"sign{j}", tuple(Fraction(s if k == j else 0) for k in range(self.ncols))
                          + (Fraction(0),)))
        if not self.homogeneous:
            forms.append(("unit", (Fraction(0),) * self.ncols + (Fraction(1),)))
        return forms

    def equality_forms(self) -> list[tuple[Fraction, ...]]:
        return [a + (-b,) for a, b in self.equalities]


@dataclass(frozen=True)
class Witness:
    x: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.x)

    def __len__(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Nonnegative multipliers of the strict constraints (summing to 1) plus
    free multipliers of the equalities whose combination vanishes."""
    y: tuple[Fraction, ...]
    y_signs: Mapping[int, Fraction] = field(default_factory=dict)
    y_unit: Fraction = Fraction(0)
    z: tuple[Fraction, ...] = ()
    degenerate: bool = False


Outcome = Union[Witness, InfeasibilityCertificate]


def check_witness(system: StrictSystem, w: Witness) -> bool:
    x = w.x
    if len(x) != system.ncols:
        return False
    if any(v <= 0 for v in system.row_values(x)):
        return False
    if any(s * x[j] <= 0 for j, s in system.sign_constraints.items()):
        return False
    return all(_dot(a, x) == b for a, b in system.equalities)


def certificate_combination(system: StrictSystem, cert: InfeasibilityCertificate) -> list[Fraction]:
    """The combination of constraint forms over ``(x, s)`` the certificate claims is zero."""
    total = [Fraction(0)] * (system.ncols + 1)
    mults = list(cert.y) + [cert.y_signs.get(j, Fraction(0)) for j in system.sign_constraints]
    if not system.homogeneous:
        mults.append(cert.y_unit)
    for m, (_, form) in zip(mults, system.strict_forms()):
        if m:
            total = [t + m * f for t, f in zip(total, form)]
    for m, form in zip(cert.z, system.equality_forms()):
        if m:
            total = [t + m * f for t, f in zip(total, form)]
    return total


def check_certificate(system: StrictSystem, cert: InfeasibilityCertificate) -> bool:
    if len(cert.y) != len(system.matrix) or len(cert.z) not in (0, len(system.equalities)):
        return False
    if set(cert.y_signs) - set(system.sign_constraints):
        return False
    if system.homogeneous and cert.y_unit:
        return False
    weights = list(cert.y) + list(cert.y_signs.values()) + [cert.y_unit]
    if any(v < 0 for v in weights) or sum(weights) != 1:
        return False
    return all(v == 0 for v in certificate_combination(system, cert))


def verify(system: StrictSystem, outcome: Outcome) -> bool:
    if isinstance(outcome, Witness):
        return check_witness(system, outcome)
    return check_certificate(system, outcome)


def _max_margin(forms, eqs, nvars):
    """max t s.t. F.w >= t, G.w = 0, -1 <= w <= 1, 0 <= t <= 1.

    Column layout: u (w = u - 1), t, slacks, upper-bound slacks for u, t.
    """
    K, N = len(forms), nvars
    ncols = N + 1 + K + N + 1
    A, b = [], []
    for k, f in enumerate(forms):
        row = [Fraction(0)] * ncols
        row[:N] = f
        row[N] = Fraction(-1)
        row[N + 1 + k] = Fraction(-1)
        A.append(row)
        b.append(sum(f, Fraction(0)))
    for g in eqs:
        row = [Fraction(0)] * ncols
        row[:N] = g
        A.append(row)
        b.append(sum(g, Fraction(0)))
    for j in range(N + 1):
        row = [Fraction(0)] * ncols
        row[j] = Fraction(1)
        row[N + 1 + K + j] = Fraction(1)
        A.append(row)
        b.append(Fraction(2) if j < N else Fraction(1))
    c = [Fraction(0)] * ncols
    c[N] = Fraction(1)
    res = solve_lp(c, A, b)
    if res.status != "optimal":
        raise ArithmeticError(f"margin LP ended {res.status}")
    w = [u - 1 for u in res.x[:N]]
    return res.value, w


def _gordan_multipliers(forms, eqs, nvars):
    """Find y >= 0, sum y = 1, z free with sum y_k F_k + sum z_l G_l = 0."""
    K, L = len(forms), len(eqs)
    ncols = K + 2 * L
    A, b = [], []
    for j in range(nvars):
        row = [f[j] for f in forms] + [g[j] for g in eqs] + [-g[j] for g in eqs]
        A.append(row)
        b.append(Fraction(0))
    A.append([Fraction(1)] * K + [Fraction(0)] * (2 * L))
    b.append(Fraction(1))
    res = solve_lp([Fraction(0)] * ncols, A, b)
    if res.status != "optimal":
        raise ArithmeticError("no alternative multipliers for an infeasible system")
    y = res.x[:K]
    z = [p - q for p, q in zip(res.x[K:K + L], res.x[K + L:])]
    return y, z


def feasible_strict(system: StrictSystem) -> Outcome:
    """Decide the strict system exactly.

    The system is homogenized (a unit variable ``s > 0`` carries constants
    and right-hand sides), the largest margin ``t`` over the box
    ``[-1, 1]`` is found by exact simplex, and ``t > 0`` gives a witness.
    Otherwise the alternative system is solved for the multipliers.
    Homogeneous witnesses are scaled so the smallest strict value is 1.
    """
    system.check_shape()
    forms = system.strict_forms()
    eqs = system.equality_forms()
    hom = system.homogeneous
    nvars = system.ncols + (0 if hom else 1)
    fvecs = [f if not hom else f[:-1] for _, f in forms]
    gvecs = [g if not hom else g[:-1] for g in eqs]
    if not fvecs:
        return Witness(tuple(Fraction(0) for _ in range(system.ncols)))

    t, w = _max_margin(fvecs, gvecs, nvars)
    if t > 0:
        if hom:
            x = w
            low = min(_dot(f, x) for f in fvecs)
            x = [v / low for v in x]
        else:
            s = w[-1]
            x = [v / s for v in w[:-1]]
        witness = Witness(tuple(x))
        assert check_witness(system, witness)
        return witness

    y, z = _gordan_multipliers(fvecs, gvecs, nvars)
    nrows = len(system.matrix)
    signs = list(system.sign_constraints)
    cert = InfeasibilityCertificate(
        y=tuple(y[:nrows]),
        y_signs={j: y[nrows + k] for k, j in enumerate(signs)},
        y_unit=Fraction(0) if hom else y[-1],
        z=tuple(z),
        degenerate=all(v == 0 for row in system.matrix for v in row),
    )
    assert check_certificate(system, cert)
    return cert


def spine_system(spine: Spine, sign_constraints: Mapping[int, int] | None = None) -> StrictSystem:
    C = incidence_matrix(spine)
    return StrictSystem.build(C.entries, ncols=len(C.cols), sign_constraints=sign_constraints)


def admissible(spine: Spine) -> Outcome:
    """Witness of a point in C(P), or a Gordan certificate that C(P) is empty."""
    return feasible_strict(spine_system(spine))


@dataclass(frozen=True)
class OrthantResult:
    empty: bool
    outcome: Outcome


def positive_orthant_empty(spine: Spine) -> OrthantResult:
    system = spine_system(spine, {j: 1 for j in range(len(spine.edges))})
    outcome = feasible_strict(system)
    return OrthantResult(isinstance(outcome, InfeasibilityCertificate), outcome)
