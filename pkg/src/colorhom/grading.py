"""Finite abelian grading groups and commutation factors."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .report import VerificationReport
from .scalar import Scalar

Degree = tuple[int, ...]


class InvalidBicharacter(ValueError):
    """The pairing matrix does not define a commutation factor on the group."""


@dataclass(frozen=True)
class GradingGroup:
    """Gamma = Z_m1 x ... x Z_mk; elements are canonical residue tuples."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli:
            raise ValueError("a grading group needs at least one modulus (use (1,) for the trivial group)")
        if any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be >= 1, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def zero(self) -> Degree:
        return (0,) * self.rank

    def degree(self, residues: Sequence[int] | int) -> Degree:
        if isinstance(residues, int):
            residues = (residues,)
        if len(residues) != self.rank:
            raise ValueError(f"degree {tuple(residues)} has {len(residues)} components, group has {self.rank}")
        return tuple(int(r) % m for r, m in zip(residues, self.moduli))

    def is_canonical(self, d: Sequence[int]) -> bool:
        return len(d) == self.rank and all(0 <= r < m for r, m in zip(d, self.moduli))

    def add(self, a: Degree, b: Degree) -> Degree:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Degree) -> Degree:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sum(self, degrees) -> Degree:
        total = self.zero
        for d in degrees:
            total = self.add(total, d)
        return total

    def elements(self) -> Iterator[Degree]:
        return itertools.product(*(range(m) for m in self.moduli))


def scalar_root_of_unity(group: GradingGroup, k: int) -> Scalar:
    """zeta_N ** k with N the exponent of ``group``."""
    return Scalar.root_of_unity(k, group.exponent)


@dataclass(frozen=True, eq=False)
class CommutationFactor:
    """A total table Gamma x Gamma -> Q(zeta_N) \\ {0}.

    ``pairing`` is kept when the table came from :func:`factor_from_pairing`
    so it can be written back out; explicit tables leave it ``None``.
    """

    group: GradingGroup
    table: Mapping[tuple[Degree, Degree], Scalar]
    pairing: tuple[tuple[int, ...], ...] | None = field(default=None)

    def __post_init__(self):
        elems = list(self.group.elements())
        missing = [(a, b) for a in elems for b in elems if (a, b) not in self.table]
        if missing:
            raise ValueError(f"commutation factor table is not total; missing {missing[0]}")
        zeros = [k for k, v in self.table.items() if v.is_zero()]
        if zeros:
            raise ValueError(f"commutation factor value at {zeros[0]} is zero")

    def __call__(self, a: Degree, b: Degree) -> Scalar:
        return self.table[(a, b)]

    @property
    def order(self) -> int:
        return self.group.exponent

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommutationFactor):
            return NotImplemented
        return self.group == other.group and dict(self.table) == dict(other.table)

    def __hash__(self) -> int:
        return hash((self.group, tuple(sorted(self.table.items()))))

    def with_value(self, a: Degree, b: Degree, value: Scalar) -> "CommutationFactor":
        """Copy with one entry replaced (used for sabotage controls)."""
        table = dict(self.table)
        table[(a, b)] = value
        return CommutationFactor(self.group, table, None)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.table.values())


def factor_from_pairing(group: GradingGroup, pairing: Sequence[Sequence[int]]) -> CommutationFactor:
    """Bicharacter eps(a, b) = zeta_N ** (a^T P b).

    Biadditivity is automatic once P is compatible with the moduli: each entry
    P[i][j] must kill m_i and m_j modulo N.  Axiom (iii) additionally needs
    P + P^T == 0 mod N.  Both are checked and violations raise
    :class:`InvalidBicharacter`.
    """
    k = group.rank
    n = group.exponent
    p = tuple(tuple(int(v) for v in row) for row in pairing)
    if len(p) != k or any(len(row) != k for row in p):
        raise InvalidBicharacter(f"pairing must be {k}x{k} for moduli {group.moduli}")
    for i, j in itertools.product(range(k), repeat=2):
        mi, mj = group.moduli[i], group.moduli[j]
        if (mi * p[i][j]) % n or (mj * p[i][j]) % n:
            raise InvalidBicharacter(
                f"pairing entry P[{i}][{j}]={p[i][j]} is not a multiple of "
                f"N/gcd: exponent ill-defined on Z_{mi} x Z_{mj} (N={n})"
            )
        if (p[i][j] + p[j][i]) % n:
            raise InvalidBicharacter(
                f"P[{i}][{j}] + P[{j}][{i}] = {p[i][j] + p[j][i]} is not 0 mod {n}: "
                "eps(a,b) eps(b,a) = 1 fails"
            )
    table = {}
    for a in group.elements():
        for b in group.elements():
            e = sum(p[i][j] * a[i] * b[j] for i in range(k) for j in range(k))
            table[(a, b)] = Scalar.root_of_unity(e, n)
    return CommutationFactor(group, table, p)


def trivial_factor(group: GradingGroup) -> CommutationFactor:
    return factor_from_pairing(group, [[0] * group.rank for _ in range(group.rank)])


def verify_commutation_factor(f: CommutationFactor) -> VerificationReport:
    """Exhaustive check of the three commutation factor axioms."""
    report = VerificationReport()
    g = f.group
    elems = list(g.elements())
    for a, b in itertools.product(elems, repeat=2):
        if f(a, b).is_zero():
            report.add("epsilon-nonzero", (a, b), f(a, b))
    for a, b, c in itertools.product(elems, repeat=3):
        lhs = f(g.add(a, b), c)
        rhs = f(a, c) * f(b, c)
        if lhs != rhs:
            report.add("epsilon-axiom-i", (a, b, c), lhs - rhs)
        lhs = f(a, g.add(c, b))
        rhs = f(a, c) * f(a, b)
        if lhs != rhs:
            report.add("epsilon-axiom-ii", (a, b, c), lhs - rhs)
    for a, b in itertools.product(elems, repeat=2):
        prod = f(a, b) * f(b, a)
        if prod != 1:
            report.add("epsilon-axiom-iii", (a, b), prod)
    return report
