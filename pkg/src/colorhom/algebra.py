"""Color hom-Lie algebras given by structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .grading import CommutationFactor, Degree, verify_commutation_factor
from .report import VerificationReport
from .scalar import Scalar

# A sparse element: basis index -> nonzero Scalar.
Element = dict


class AlgebraError(ValueError):
    """Raised when a construction precondition fails; carries a witness."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


# sparse vector helpers ------------------------------------------------------


def add_into(dst: dict, coeff, src: Mapping) -> dict:
    """dst += coeff * src, dropping zeros (in place)."""
    for k, v in src.items():
        new = dst.get(k)
        term = v * coeff
        new = term if new is None else new + term
        if new:
            dst[k] = new
        else:
            dst.pop(k, None)
    return dst


def scale(vec: Mapping, coeff) -> dict:
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items()}


def clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}


def combine(*pairs) -> dict:
    """Linear combination of (coeff, vector) pairs."""
    out: dict = {}
    for c, v in pairs:
        add_into(out, c, v)
    return out


# basis and maps ---------------------------------------------------------------


@dataclass(frozen=True)
class GradedBasis:
    names: tuple[str, ...]
    degrees: tuple[Degree, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise ValueError(f"{len(self.names)} names but {len(self.degrees)} degrees")
        if len(set(self.names)) != len(self.names):
            dup = next(n for n in self.names if self.names.count(n) > 1)
            raise ValueError(f"duplicate basis name {dup!r}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Matrix over Scalar; ``rows[k][j]`` is the e_k coefficient of the image of e_j."""

    rows: tuple[tuple[Scalar, ...], ...]
    order: int = 1
    _cols: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(Scalar(0, self.order) + v for v in r) for r in self.rows)
        width = {len(r) for r in rows}
        if len(width) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        ncols = width.pop() if width else 0
        cols = tuple({k: rows[k][j] for k in range(len(rows)) if rows[k][j]} for j in range(ncols))
        object.__setattr__(self, "_cols", cols)

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "LinearMap":
        return cls(tuple(tuple(Scalar(int(i == j), order) for j in range(n)) for i in range(n)), order)

    @classmethod
    def zero(cls, n_out: int, n_in: int, order: int = 1) -> "LinearMap":
        return cls(tuple(tuple(Scalar(0, order) for _ in range(n_in)) for _ in range(n_out)), order)

    @classmethod
    def diagonal(cls, entries: Sequence, order: int = 1) -> "LinearMap":
        n = len(entries)
        return cls(
            tuple(tuple(Scalar(0, order) + (entries[i] if i == j else 0) for j in range(n)) for i in range(n)),
            order,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping], n_out: int, order: int = 1) -> "LinearMap":
        zero = Scalar(0, order)
        rows = [[zero] * len(columns) for _ in range(n_out)]
        for j, col in enumerate(columns):
            for k, v in col.items():
                rows[k][j] = zero + v
        return cls(tuple(tuple(r) for r in rows), order)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self._cols)

    def column(self, j: int) -> dict:
        return self._cols[j]

    def apply(self, vec: Mapping) -> dict:
        out: dict = {}
        for j, c in vec.items():
            add_into(out, c, self._cols[j])
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self o other."""
        return LinearMap.from_columns([self.apply(c) for c in other._cols], self.shape[0], self.order)

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and all(self._cols[j] == {j: 1} for j in range(m))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self) -> int:
        return hash(self.rows)


# the algebra ------------------------------------------------------------------


def _canonical_table(table: Mapping, dim: int) -> dict:
    out = {}
    for (i, j), vec in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket entry ({i}, {j}) out of range for dimension {dim}")
        for k in vec:
            if not 0 <= k < dim:
                raise ValueError(f"bracket entry ({i}, {j}) names index {k} out of range")
        v = clean(vec)
        if v:
            out[(i, j)] = v
    return out


@dataclass(frozen=True, eq=False)
class ColorHomLieAlgebra:
    """Structure constants ``bracket[(i, j)] = {k: c_ij^k}`` plus twist and factor.

    Axioms are not enforced here; :func:`verify_color_hom_lie` checks them.
    ``multiplicative`` marks algebras expected to satisfy alpha[x,y]=[ax,ay].
    """

    basis: GradedBasis
    epsilon: CommutationFactor
    bracket: Mapping[tuple[int, int], Mapping[int, Scalar]]
    alpha: LinearMap
    involutive: bool = True
    multiplicative: bool = False
    name: str = ""

    def __post_init__(self):
        n = len(self.basis)
        g = self.epsilon.group
        for nm, d in zip(self.basis.names, self.basis.degrees):
            if not g.is_canonical(d):
                raise ValueError(f"degree {d} of {nm!r} is not a canonical element of Z{g.moduli}")
        if self.alpha.shape != (n, n):
            raise ValueError(f"alpha has shape {self.alpha.shape}, expected {(n, n)}")
        object.__setattr__(self, "bracket", _canonical_table(self.bracket, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return self.epsilon.order

    @property
    def names(self) -> tuple[str, ...]:
        return self.basis.names

    def degree(self, i: int) -> Degree:
        return self.basis.degrees[i]

    def eps(self, i: int, j: int) -> Scalar:
        return self.epsilon(self.basis.degrees[i], self.basis.degrees[j])

    def br(self, i: int, j: int) -> dict:
        return self.bracket.get((i, j), {})

    def scalar(self, value) -> Scalar:
        return Scalar(0, self.order) + value

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorHomLieAlgebra):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.epsilon == other.epsilon
            and dict(self.bracket) == dict(other.bracket)
            and self.alpha == other.alpha
            and self.involutive == other.involutive
            and self.multiplicative == other.multiplicative
        )

    __hash__ = None  # mutable-looking mapping fields; compare by value only


def format_combination(terms: Iterable[tuple[str, object]]) -> str:
    """Render (label, coeff) pairs as ``2*x - y + (z+1)*w``; empty means 0."""
    out = ""
    for label, c in terms:
        c = Scalar(0, getattr(c, "order", 1)) + c
        if c.is_rational():
            q = c.rational()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            body = label if mag == 1 else f"{mag}*{label}"
        else:
            sign, body = "+", f"({c})*{label}"
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out or "0"


def format_element(names: Sequence[str], vec: Mapping) -> str:
    return format_combination((names[k], vec[k]) for k in sorted(vec))


def bracket_eval(A: ColorHomLieAlgebra, x: Mapping, y: Mapping) -> dict:
    for v in (x, y):
        if any(not 0 <= k < A.dim for k in v):
            raise ValueError(f"element has indices outside dimension {A.dim}")
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            c = A.br(i, j)
            if c:
                add_into(out, a * b, c)
    return out


def is_homogeneous(A: ColorHomLieAlgebra, vec: Mapping) -> bool:
    return len({A.degree(k) for k in vec}) <= 1


def verify_color_hom_lie(
    A: ColorHomLieAlgebra,
    *,
    multiplicative: bool | None = None,
    involutive: bool | None = None,
) -> VerificationReport:
    """Exhaustive axiom check over basis pairs and triples.

    The optional checks default to the algebra's own flags.
    """
    report = verify_commutation_factor(A.epsilon)
    n = A.dim
    g = A.epsilon.group
    names = A.names

    def w(*idx):
        return tuple(names[i] for i in idx)

    for (i, j), vec in sorted(A.bracket.items()):
        target = g.add(A.degree(i), A.degree(j))
        for k, c in sorted(vec.items()):
            if A.degree(k) != target:
                report.add("grading", w(i, j, k), c)
    for j in range(n):
        for k, c in sorted(A.alpha.column(j).items()):
            if A.degree(k) != A.degree(j):
                report.add("alpha-even", w(j, k), c)

    for i, j in itertools.product(range(n), repeat=2):
        defect = combine((1, A.br(i, j)), (A.eps(i, j), A.br(j, i)))
        if defect:
            report.add("skew-symmetry", w(i, j), format_element(names, defect))

    alpha_e = [A.alpha.column(i) for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        defect: dict = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            add_into(defect, A.eps(z, x), bracket_eval(A, alpha_e[x], A.br(y, z)))
        if defect:
            report.add("hom-jacobi", w(i, j, k), format_element(names, defect))

    if multiplicative if multiplicative is not None else A.multiplicative:
        for i, j in itertools.product(range(n), repeat=2):
            lhs = A.alpha.apply(A.br(i, j))
            rhs = bracket_eval(A, alpha_e[i], alpha_e[j])
            defect = combine((1, lhs), (-1, rhs))
            if defect:
                report.add("multiplicativity", w(i, j), format_element(names, defect))

    if involutive if involutive is not None else A.involutive:
        sq = A.alpha.compose(A.alpha)
        for j in range(n):
            defect = combine((1, sq.column(j)), (-1, {j: 1}))
            if defect:
                report.add("involutivity", w(j), format_element(names, defect))
    return report


def morphism_check(f: LinearMap, A: ColorHomLieAlgebra, B: ColorHomLieAlgebra) -> VerificationReport:
    """Degree-zero, bracket-preserving and twist-intertwining checks for f: A -> B."""
    if f.shape != (B.dim, A.dim):
        raise ValueError(f"map has shape {f.shape}, expected {(B.dim, A.dim)}")
    report = VerificationReport()
    for j in range(A.dim):
        for k, c in sorted(f.column(j).items()):
            if B.degree(k) != A.degree(j):
                report.add("degree", (A.names[j], B.names[k]), c)
    for i, j in itertools.product(range(A.dim), repeat=2):
        lhs = f.apply(A.br(i, j))
        rhs = bracket_eval(B, f.column(i), f.column(j))
        defect = combine((1, lhs), (-1, rhs))
        if defect:
            report.add("bracket", (A.names[i], A.names[j]), format_element(B.names, defect))
    left = f.compose(A.alpha)
    right = B.alpha.compose(f)
    for j in range(A.dim):
        defect = combine((1, left.column(j)), (-1, right.column(j)))
        if defect:
            report.add("twist", (A.names[j],), format_element(B.names, defect))
    return report


def yau_twist(L: ColorHomLieAlgebra, sigma: LinearMap, name: str | None = None) -> ColorHomLieAlgebra:
    """Twist an ordinary Lie color algebra by an even automorphism-like map.

    Returns the algebra with bracket sigma o [,] and twist sigma.
    """
    if not L.alpha.is_identity():
        raise AlgebraError("yau_twist needs an algebra with alpha = id")
    if sigma.shape != (L.dim, L.dim):
        raise ValueError(f"sigma has shape {sigma.shape}, expected {(L.dim, L.dim)}")
    base = verify_color_hom_lie(L, multiplicative=False, involutive=False)
    if not base.ok:
        v = base.violations[0]
        raise AlgebraError(f"input is not a Lie color algebra: {v.describe()}", v.witness)
    if sigma.is_identity():
        return L
    # sigma must be an even morphism of L into itself (alpha = id on both sides)
    check = morphism_check(sigma, L, L)
    if not check.ok:
        v = check.violations[0]
        raise AlgebraError(f"sigma is not an even morphism: {v.describe()}", v.witness)
    table = {key: sigma.apply(vec) for key, vec in L.bracket.items()}
    involutive = sigma.compose(sigma).is_identity()
    return ColorHomLieAlgebra(
        L.basis, L.epsilon, table, sigma,
        involutive=involutive, multiplicative=True,
        name=name if name is not None else (L.name + "-twisted" if L.name else ""),
    )


# hom-associative algebras -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomAssociativeAlgebra:
    basis: GradedBasis
    epsilon: CommutationFactor
    product: Mapping[tuple[int, int], Mapping[int, Scalar]]
    alpha: LinearMap

    def __post_init__(self):
        object.__setattr__(self, "product", _canonical_table(self.product, len(self.basis)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return self.epsilon.order

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self.product.get((i, j))
                if c:
                    add_into(out, a * b, c)
        return out

    def twist(self, x: Mapping) -> dict:
        return self.alpha.apply(x)

    def embed(self, vec: Mapping) -> dict:
        return clean(vec)

    def zero(self) -> dict:
        return {}

    def add_scaled(self, acc: dict, coeff, x: Mapping) -> dict:
        return add_into(dict(acc), coeff, x)


def verify_hom_associative(V: HomAssociativeAlgebra) -> VerificationReport:
    report = VerificationReport()
    names = V.basis.names
    g = V.epsilon.group
    n = V.dim
    for (i, j), vec in sorted(V.product.items()):
        target = g.add(V.basis.degrees[i], V.basis.degrees[j])
        for k, c in sorted(vec.items()):
            if V.basis.degrees[k] != target:
                report.add("grading", (names[i], names[j], names[k]), c)
    e = [{i: Scalar(1, V.order)} for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = V.mul(V.twist(e[i]), V.mul(e[j], e[k]))
        rhs = V.mul(V.mul(e[i], e[j]), V.twist(e[k]))
        defect = combine((1, lhs), (-1, rhs))
        if defect:
            report.add("hom-associativity", (names[i], names[j], names[k]), format_element(names, defect))
    return report


def antisymmetrize(V: HomAssociativeAlgebra, name: str = "") -> ColorHomLieAlgebra:
    """Commutator algebra with [x, y] = xy - eps(x, y) yx on homogeneous elements."""
    check = verify_hom_associative(V)
    if not check.ok:
        v = check.violations[0]
        raise AlgebraError(f"not a hom-associative color algebra: {v.describe()}", v.witness)
    n = V.dim
    degs = V.basis.degrees
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        eps = V.epsilon(degs[i], degs[j])
        vec = combine((1, V.product.get((i, j), {})), (-eps, V.product.get((j, i), {})))
        if vec:
            table[(i, j)] = vec
    e = [{i: Scalar(1, V.order)} for i in range(n)]
    multiplicative = all(
        V.twist(V.mul(e[i], e[j])) == V.mul(V.twist(e[i]), V.twist(e[j]))
        for i, j in itertools.product(range(n), repeat=2)
    )
    involutive = V.alpha.compose(V.alpha).is_identity()
    return ColorHomLieAlgebra(
        V.basis, V.epsilon, table, V.alpha,
        involutive=involutive, multiplicative=multiplicative, name=name,
    )


def with_epsilon(A: ColorHomLieAlgebra, epsilon: CommutationFactor) -> ColorHomLieAlgebra:
    return replace(A, epsilon=epsilon)


def with_bracket(A: ColorHomLieAlgebra, table: Mapping) -> ColorHomLieAlgebra:
    return replace(A, bracket=table)


def basis_element(A: ColorHomLieAlgebra, i: int) -> dict:
    return {i: Scalar(1, A.order)}
