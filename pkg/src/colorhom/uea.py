"""Enveloping algebra U(g) = T(g)/I: PBW normal forms and the rank oracle."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from . import linalg
from .algebra import (
    ColorHomLieAlgebra,
    GradedBasis,
    LinearMap,
    add_into,
    bracket_eval,
    combine,
    format_combination,
    format_element,
)
from .report import VerificationReport
from .scalar import Scalar
from .tensor import TensorElement, Word, alpha_T, map_letters, odot, theta

DEFAULT_ORACLE_CAP = 4
STRATEGIES = ("leftmost", "rightmost")


class ConstructionError(ValueError):
    """No homogeneous twist-stable basis can be built."""


class StepBudgetExceeded(RuntimeError):
    """Straightening did not terminate within its budget (indicates a bug)."""


class ResourceCapExceeded(RuntimeError):
    """The requested oracle size is above the configured cap."""


class NormalForm(TensorElement):
    """Coordinates in the PBW basis: every word is non-increasing."""

    __slots__ = ()

    @classmethod
    def of(cls, terms: Mapping) -> "NormalForm":
        t = TensorElement(terms)
        bad = [w for w in t if not is_pbw_word(w)]
        if bad:
            raise ValueError(f"{bad[0]} is not a non-increasing word")
        obj = object.__new__(cls)
        obj.terms = t.terms
        return obj

    @classmethod
    def _wrap(cls, terms: dict) -> "NormalForm":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    def __add__(self, other):
        r = super().__add__(other)
        return NormalForm._wrap(r.terms) if isinstance(other, NormalForm) else r

    def __sub__(self, other):
        r = super().__sub__(other)
        return NormalForm._wrap(r.terms) if isinstance(other, NormalForm) else r

    def __neg__(self):
        return NormalForm._wrap(super().__neg__().terms)

    def __mul__(self, coeff):
        r = super().__mul__(coeff)
        return r if r is NotImplemented else NormalForm._wrap(r.terms)

    __rmul__ = __mul__

    def sorted_items(self):
        # longest words first, then descending lexicographic, matching pbw_words
        return sorted(self.terms.items(), key=lambda kv: (-len(kv[0]), tuple(-i for i in kv[0])))


def is_pbw_word(w: Sequence[int]) -> bool:
    return len(w) >= 1 and all(w[i] >= w[i + 1] for i in range(len(w) - 1))


@dataclass(frozen=True, eq=False)
class UEAContext:
    """Everything needed to compute in U(g) over an ordered twist-stable basis X.

    ``algebra_x`` is the algebra rewritten in X coordinates; all tensor
    elements handled here are words over X.  ``change_of_basis`` has the X
    elements (in original coordinates) as its columns.
    """

    algebra: ColorHomLieAlgebra
    X: tuple[dict, ...]
    mu: Scalar
    change_of_basis: LinearMap
    algebra_x: ColorHomLieAlgebra
    flipped: bool = False
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _alpha_words: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.X)

    @property
    def order(self) -> int:
        return self.algebra.order

    @property
    def names(self) -> tuple[str, ...]:
        return self.algebra_x.names

    def x_definitions(self) -> list[tuple[str, str]]:
        return [(n, format_element(self.algebra.names, x)) for n, x in zip(self.names, self.X)]

    def with_epsilon(self, epsilon) -> "UEAContext":
        """Copy whose X-side factor is replaced (sabotage and exploration)."""
        return replace(self, algebra_x=replace(self.algebra_x, epsilon=epsilon))

    def flank_word(self, w: Word) -> dict:
        """Twist applied to relator flanks, as a word -> coeff dict; ``()`` maps to itself.

        This is beta_T, or gamma_T = (-1)^len(w) beta_T once the twist has been
        negated.  Paired with mu = -1 the signs cancel, so the flipped relators
        coincide with the beta relators at mu = 1.
        """
        got = self._alpha_words.get(w)
        if got is None:
            got = alpha_T(self.algebra_x, TensorElement._wrap({w: 1})).terms if w else {(): 1}
            if self.flipped and len(w) % 2:
                got = {k: -v for k, v in got.items()}
            self._alpha_words[w] = got
        return got


# construction ----------------------------------------------------------------


def _eigenvectors(A: ColorHomLieAlgebra, idx: list[int], sign: int) -> list[tuple[int, dict]]:
    """Basis of {v in span(e_i, i in idx) : alpha v = sign * v}.

    Each vector is returned with its free-column index, which is 1 in that
    vector and 0 in the others; that index orders the vectors.
    """
    order = A.order
    n = len(idx)
    rows = [[A.alpha.rows[k][j] - (sign if k == j else 0) for j in idx] for k in idx]
    vecs = linalg.nullspace(rows, n, order)
    pivots = linalg.rref(rows)[1] if rows else []
    free = [c for c in range(n) if c not in pivots]
    return [(idx[f], {idx[c]: v for c, v in enumerate(vec) if v}) for f, vec in zip(free, vecs)]


def build_alpha_stable_basis(A: ColorHomLieAlgebra) -> UEAContext:
    """Homogeneous basis X with beta(X) = X from the +1/-1 eigenspaces of the twist.

    mu = 1 when every degree has at least as many +1 as -1 eigenvectors;
    otherwise the twist is negated (mu = -1) if that makes the injection
    possible.  Raises :class:`ConstructionError` when neither works.
    """
    n = A.dim
    sq = A.alpha.compose(A.alpha)
    if not sq.is_identity():
        raise ConstructionError("twist is not involutive (alpha^2 != id)")
    order = A.order
    degrees = sorted(set(A.basis.degrees))
    plus: dict = {}
    minus: dict = {}
    for d in degrees:
        idx = [i for i in range(n) if A.degree(i) == d]
        plus[d] = _eigenvectors(A, idx, 1)
        minus[d] = _eigenvectors(A, idx, -1)

    def feasible(p, m):
        return all(len(p[d]) >= len(m[d]) for d in degrees)

    if feasible(plus, minus):
        mu, flipped = Scalar(1, order), False
    elif feasible(minus, plus):
        plus, minus = minus, plus
        mu, flipped = Scalar(-1, order), True
    else:
        dims = ", ".join(f"{d}: +{len(plus[d])}/-{len(minus[d])}" for d in degrees)
        raise ConstructionError(
            f"no degree-preserving injection between eigenspaces in either direction ({dims})"
        )

    pairs = []
    leftovers = []
    for d in degrees:
        p = sorted(plus[d], key=lambda kv: kv[0])
        m = sorted(minus[d], key=lambda kv: kv[0])
        pairs.extend(zip(m, p[: len(m)]))
        leftovers.extend(p[len(m):])
    pairs.sort(key=lambda bp: bp[0][0])
    leftovers.sort(key=lambda kv: kv[0])
    X: list[dict] = []
    for (_, b), (_, ib) in pairs:
        X.append(combine((1, ib), (1, b)))
        X.append(combine((1, ib), (-1, b)))
    X.extend(v for _, v in leftovers)
    return context_from_basis(A, X, mu, flipped=flipped)


def context_from_basis(A: ColorHomLieAlgebra, X: Sequence[Mapping], mu=1, flipped: bool = False) -> UEAContext:
    """Context over an explicit homogeneous basis X (no stability check)."""
    order = A.order
    n = A.dim
    X = tuple({k: Scalar(0, order) + v for k, v in x.items() if v} for x in X)
    if len(X) != n:
        raise ConstructionError(f"X has {len(X)} elements, algebra has dimension {n}")
    for x in X:
        if len({A.degree(k) for k in x}) != 1:
            raise ConstructionError(f"X element {format_element(A.names, x)} is not homogeneous")
    C = LinearMap.from_columns(X, n, order)
    try:
        Cinv_rows = linalg.inverse([list(r) for r in C.rows], order)
    except ValueError:
        raise ConstructionError("X is not a basis") from None
    Cinv = LinearMap(tuple(tuple(r) for r in Cinv_rows), order)
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        vec = Cinv.apply(bracket_eval(A, X[i], X[j]))
        if vec:
            table[(i, j)] = vec
    alpha_x = Cinv.compose(A.alpha).compose(C)
    names = _x_names(A, X)
    degrees = tuple(A.degree(next(iter(x))) for x in X)
    algebra_x = ColorHomLieAlgebra(
        GradedBasis(names, degrees), A.epsilon, table, alpha_x,
        involutive=A.involutive, multiplicative=A.multiplicative, name=A.name,
    )
    return UEAContext(A, X, Scalar(0, order) + mu, C, algebra_x, flipped)


def _x_names(A: ColorHomLieAlgebra, X: Sequence[Mapping]) -> tuple[str, ...]:
    if all(len(x) == 1 and next(iter(x.values())) == 1 for x in X):
        return tuple(A.names[next(iter(x))] for x in X)
    taken = set(A.names)
    names = []
    for i in range(len(X)):
        name = f"X{i}"
        while name in taken:
            name = "_" + name
        names.append(name)
    return tuple(names)


# words and generators --------------------------------------------------------


def pbw_words(ctx: UEAContext | int, length: int) -> list[Word]:
    """Non-increasing words of exactly ``length``, descending lexicographic."""
    if length < 1:
        raise ValueError("PBW words have length >= 1")
    d = ctx if isinstance(ctx, int) else ctx.dim
    return list(itertools.combinations_with_replacement(range(d - 1, -1, -1), length))


def all_words(dim: int, length: int) -> Iterable[Word]:
    return itertools.product(range(dim), repeat=length)


def _pairs(ctx: UEAContext, include_diagonal: bool):
    n = ctx.dim
    return [(a, b) for a in range(n) for b in range(n) if include_diagonal or a != b]


def commutator_generator(ctx: UEAContext, a: int, b: int) -> TensorElement:
    """a(x)b - eps(a, b) b(x)a - [a, b] over X."""
    Ax = ctx.algebra_x
    terms: dict = {(a, b): Scalar(1, ctx.order)}
    add_into(terms, -Ax.eps(a, b), {(b, a): 1})
    add_into(terms, -1, {(k,): c for k, c in Ax.br(a, b).items()})
    return TensorElement._wrap(terms)


def ideal_generators(ctx: UEAContext, max_len: int, include_diagonal: bool = False) -> list[TensorElement]:
    """Spanning set of I up to length max_len: (w1 (.) g_ab) (.) w2.

    Pairs range over distinct X elements unless ``include_diagonal``.
    """
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    Ax = ctx.algebra_x
    one = Scalar(1, ctx.order)
    out = []
    for a, b in _pairs(ctx, include_diagonal):
        g = commutator_generator(ctx, a, b)
        for n_left in range(max_len - 1):
            for n_right in range(max_len - 1 - n_left):
                lefts = [TensorElement.word(w, one) for w in all_words(ctx.dim, n_left)] if n_left else [None]
                rights = [TensorElement.word(w, one) for w in all_words(ctx.dim, n_right)] if n_right else [None]
                for w1 in lefts:
                    inner = odot(Ax, w1, g) if w1 is not None else g
                    for w2 in rights:
                        out.append(odot(Ax, inner, w2) if w2 is not None else inner)
    return out


def j_mu_generators(
    ctx: UEAContext, max_len: int, mu=None, include_diagonal: bool = False
) -> list[TensorElement]:
    """Spanning set of J_mu: f (x) (ab - eps ba) (x) h - mu^{|f|+|h|} a_T(f) (x) [a,b] (x) a_T(h)."""
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    mu = ctx.mu if mu is None else Scalar(0, ctx.order) + mu
    Ax = ctx.algebra_x
    out = []
    for a, b in _pairs(ctx, include_diagonal):
        eab = Ax.eps(a, b)
        br = Ax.br(a, b)
        for n_left in range(max_len - 1):
            for n_right in range(max_len - 1 - n_left):
                coeff = mu ** (n_left + n_right)
                for f in all_words(ctx.dim, n_left):
                    af = ctx.flank_word(f)
                    for h in all_words(ctx.dim, n_right):
                        terms: dict = {f + (a, b) + h: Scalar(1, ctx.order)}
                        add_into(terms, -eab, {f + (b, a) + h: 1})
                        if br:
                            ah = ctx.flank_word(h)
                            for fw, fc in af.items():
                                for k, kc in br.items():
                                    for hw, hc in ah.items():
                                        add_into(terms, -coeff * fc * kc * hc, {fw + (k,) + hw: 1})
                        out.append(TensorElement._wrap(terms))
    return out


# straightening ---------------------------------------------------------------


def step_budget(length: int) -> int:
    max_index = length * (length - 1) // 2
    return 10 * math.factorial(length) * (max_index + 1)


def _inversion(w: Word, strategy: str) -> int | None:
    positions = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
    for s in positions:
        if w[s] < w[s + 1]:
            return s
    return None


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise StepBudgetExceeded(f"straightening exceeded its budget of {self.limit} rewrites")


def _straighten_word(ctx: UEAContext, w: Word, strategy: str, mu: Scalar, memo: dict, budget: _Budget) -> dict:
    got = memo.get(w)
    if got is not None:
        return got
    s = _inversion(w, strategy)
    if s is None:
        res = {w: Scalar(1, ctx.order)}
    else:
        budget.tick()
        Ax = ctx.algebra_x
        a, b = w[s], w[s + 1]
        res = {}
        swapped = w[:s] + (b, a) + w[s + 2:]
        add_into(res, Ax.eps(a, b), _straighten_word(ctx, swapped, strategy, mu, memo, budget))
        br = Ax.br(a, b)
        if br:
            coeff = mu ** (len(w) - 2)
            left = ctx.flank_word(w[:s])
            right = ctx.flank_word(w[s + 2:])
            for lw, lc in left.items():
                for k, kc in br.items():
                    for rw, rc in right.items():
                        sub = _straighten_word(ctx, lw + (k,) + rw, strategy, mu, memo, budget)
                        add_into(res, coeff * lc * kc * rc, sub)
    memo[w] = res
    return res


def straighten(ctx: UEAContext, t: TensorElement, strategy: str = "leftmost", mu=None) -> NormalForm:
    """Rewrite adjacent inversions until only non-increasing words remain.

    x_a x_b with a < b becomes eps(a,b) x_b x_a plus the mu-weighted bracket
    term with twisted flanks.  ``mu`` defaults to the context's.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    mu = ctx.mu if mu is None else Scalar(0, ctx.order) + mu
    memo = ctx._memo.setdefault((strategy, mu), {})
    out: dict = {}
    for w, c in t.items():
        budget = _Budget(step_budget(len(w)))
        add_into(out, c, _straighten_word(ctx, w, strategy, mu, memo, budget))
    return NormalForm._wrap(out)


def to_x_basis(ctx: UEAContext, t: TensorElement) -> TensorElement:
    """Rewrite a tensor over the original basis as one over X."""
    inv = linalg.inverse([list(r) for r in ctx.change_of_basis.rows], ctx.order)
    return map_letters(LinearMap(tuple(tuple(r) for r in inv), ctx.order), t)


def from_x_basis(ctx: UEAContext, t: TensorElement) -> TensorElement:
    return map_letters(ctx.change_of_basis, t)


def normal_form(ctx: UEAContext, t: TensorElement, strategy: str = "leftmost", mu=None) -> NormalForm:
    """PBW coordinates of the class of t (over X): S(theta(t)).

    ``mu`` defaults to the context's; pass another value to straighten
    against a different J_mu.
    """
    return straighten(ctx, theta(ctx.algebra_x, t), strategy, mu)


def lift(ctx: UEAContext, u: TensorElement) -> TensorElement:
    """Representative theta(u) of a normal form."""
    return theta(ctx.algebra_x, u)


def uea_multiply(ctx: UEAContext, u: TensorElement, v: TensorElement, strategy: str = "leftmost", mu=None) -> NormalForm:
    Ax = ctx.algebra_x
    return normal_form(ctx, odot(Ax, lift(ctx, u), lift(ctx, v)), strategy, mu)


def uea_alpha(ctx: UEAContext, u: TensorElement, strategy: str = "leftmost", mu=None) -> NormalForm:
    return normal_form(ctx, alpha_T(ctx.algebra_x, lift(ctx, u)), strategy, mu)


# checks ------------------------------------------------------------------------


def psi_check(ctx: UEAContext, include_diagonal: bool = False, mu=None) -> VerificationReport:
    """psi: g -> U(g), x -> class of x, is a morphism of color hom-Lie algebras."""
    Ax = ctx.algebra_x
    names = ctx.names
    one = Scalar(1, ctx.order)
    report = VerificationReport()
    for a, b in _pairs(ctx, include_diagonal):
        lhs = normal_form(ctx, TensorElement({(a, b): one, (b, a): -Ax.eps(a, b)}), mu=mu)
        rhs = normal_form(ctx, TensorElement({(k,): c for k, c in Ax.br(a, b).items()}), mu=mu)
        defect = lhs - rhs
        if defect:
            report.add("psi-bracket", (names[a], names[b]), defect.format(names))
    for a in range(ctx.dim):
        x = TensorElement.word((a,), one)
        lhs = normal_form(ctx, alpha_T(Ax, x), mu=mu)
        rhs = uea_alpha(ctx, normal_form(ctx, x, mu=mu), mu=mu)
        defect = lhs - rhs
        if defect:
            report.add("psi-twist", (names[a],), defect.format(names))
    report.stats["pairs"] = len(_pairs(ctx, include_diagonal))
    return report


def _column_key(w: Word):
    return (-len(w), w)


def decomposition_oracle(
    ctx: UEAContext,
    max_len: int,
    mu=None,
    cap: int = DEFAULT_ORACLE_CAP,
    include_diagonal: bool = False,
) -> VerificationReport:
    """Rank check of T_{<=L} = J_mu + kW with zero intersection, by row reduction only."""
    if max_len > cap:
        raise ResourceCapExceeded(f"max_len {max_len} exceeds the oracle cap {cap}")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    mu = ctx.mu if mu is None else Scalar(0, ctx.order) + mu
    d = ctx.dim
    dim_t = sum(d ** l for l in range(1, max_len + 1))
    words = [w for l in range(1, max_len + 1) for w in pbw_words(d, l)]
    ech = linalg.Echelon(_column_key)
    if max_len >= 2:
        for g in j_mu_generators(ctx, max_len, mu, include_diagonal):
            ech.add(g.terms)
    rank_j = ech.rank
    one = Scalar(1, ctx.order)
    for w in words:
        ech.add({w: one})
    joint = ech.rank
    report = VerificationReport()
    report.stats.update(
        {"max_len": max_len, "mu": str(mu), "dim_T": dim_t, "num_W": len(words), "rank_J": rank_j, "rank_joint": joint}
    )
    if rank_j + len(words) != dim_t:
        report.add("complementarity", (max_len,), f"rank_J + #W = {rank_j + len(words)} != dim_T = {dim_t}")
    intersection = rank_j + len(words) - joint
    if intersection:
        report.add("intersection", (max_len,), f"dim(J cap kW) = {intersection}")
    return report


def theta_ideal_report(ctx: UEAContext, max_len: int, mu=None, include_diagonal: bool = False) -> VerificationReport:
    """Compare span(theta(ideal generators)) with span(J_mu generators)."""
    mu = ctx.mu if mu is None else Scalar(0, ctx.order) + mu
    Ax = ctx.algebra_x
    left = [theta(Ax, g).terms for g in ideal_generators(ctx, max_len, include_diagonal)]
    right = [g.terms for g in j_mu_generators(ctx, max_len, mu, include_diagonal)]
    el = linalg.Echelon(_column_key).extend(left)
    er = linalg.Echelon(_column_key).extend(right)
    report = VerificationReport()
    report.stats.update({"max_len": max_len, "mu": str(mu), "rank_theta_I": el.rank, "rank_J": er.rank})
    missing = sum(1 for v in right if not el.contains(v))
    extra = sum(1 for v in left if not er.contains(v))
    if missing:
        report.add("J-not-in-theta(I)", (max_len,), f"{missing} generators outside")
    if extra:
        report.add("theta(I)-not-in-J", (max_len,), f"{extra} generators outside")
    return report


def confluence_report(ctx: UEAContext, elements: Iterable[TensorElement], mu=None) -> VerificationReport:
    report = VerificationReport()
    count = 0
    for t in elements:
        count += 1
        left = straighten(ctx, t, "leftmost", mu)
        right = straighten(ctx, t, "rightmost", mu)
        if left != right:
            report.add("confluence", (t.format(ctx.names),), (left - right).format(ctx.names))
    report.stats["elements"] = count
    return report


def format_normal_form(ctx: UEAContext, u: TensorElement) -> str:
    nf = u if isinstance(u, NormalForm) else NormalForm._wrap(dict(u.terms))
    return format_combination(("*".join(ctx.names[i] for i in w), c) for w, c in nf.sorted_items())


def annihilation_report(ctx: UEAContext, max_len: int, mu=None) -> VerificationReport:
    """normal_form vanishes on every spanning element of I up to max_len."""
    report = VerificationReport()
    gens = ideal_generators(ctx, max_len)
    for g in gens:
        nf = normal_form(ctx, g, mu=mu)
        if nf:
            report.add("annihilation", (g.format(ctx.names),), nf.format(ctx.names))
    report.stats["generators"] = len(gens)
    return report


def faithfulness_report(ctx: UEAContext, max_len: int, mu=None) -> VerificationReport:
    """normal_form(theta(w)) == w for every PBW word w up to max_len."""
    report = VerificationReport()
    one = Scalar(1, ctx.order)
    count = 0
    for length in range(1, max_len + 1):
        for w in pbw_words(ctx, length):
            count += 1
            nf = normal_form(ctx, lift(ctx, TensorElement.word(w, one)), mu=mu)
            if nf.terms != {w: one}:
                report.add("faithfulness", ("*".join(ctx.names[i] for i in w),), nf.format(ctx.names))
    report.stats["words"] = count
    return report


def random_words(ctx: UEAContext, count: int, max_len: int, rng) -> list[TensorElement]:
    """Seeded random single words with lengths in [1, max_len]."""
    one = Scalar(1, ctx.order)
    out = []
    for _ in range(count):
        length = rng.randint(1, max_len)
        out.append(TensorElement.word(tuple(rng.randrange(ctx.dim) for _ in range(length)), one))
    return out
