"""Independent reference implementations used only by the tests.

None of these call the straightening or theta code under test.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from colorhom.algebra import ColorHomLieAlgebra, GradedBasis, LinearMap
from colorhom.grading import GradingGroup, trivial_factor
from colorhom.scalar import Scalar


def _acc(dst, coeff, src):
    for k, v in src.items():
        new = dst.get(k, 0) + coeff * v
        if new:
            dst[k] = new
        else:
            dst.pop(k, None)


def insertion_normal_form(A: ColorHomLieAlgebra, word) -> dict:
    """PBW coordinates of a word for an algebra with alpha = id.

    Letters are inserted from the left into an already sorted monomial:
    x . (m1 m') = eps(x, m1) m1 . (x . m') + [x, m1] . m' whenever x < m1.
    Monomials are non-increasing index tuples.
    """
    assert A.alpha.is_identity()

    @lru_cache(maxsize=None)
    def insert(x: int, mono: tuple) -> tuple:
        if not mono or x >= mono[0]:
            return (((x,) + mono, 1),)
        m1, rest = mono[0], mono[1:]
        out: dict = {}
        for m, c in insert(x, rest):
            for mm, cc in insert(m1, m):
                _acc(out, c * cc * A.eps(x, m1), {mm: 1})
        for k, c in A.br(x, m1).items():
            for mm, cc in insert(k, rest):
                _acc(out, c * cc, {mm: 1})
        return tuple(out.items())

    res: dict = {(): 1}
    for x in reversed(tuple(word)):
        nxt: dict = {}
        for m, c in res.items():
            for mm, cc in insert(x, m):
                _acc(nxt, c * cc, {mm: 1})
        res = nxt
    return res


def theta_closed_form(A: ColorHomLieAlgebra, word) -> dict:
    """theta via the closed form: the k-th letter (1-based, k >= 2) gets alpha^(k-2)."""
    acc = {(): Fraction(1)}
    n = A.dim
    for k, letter in enumerate(word, start=1):
        image = {letter: 1}
        for _ in range(max(k - 2, 0)):
            nxt: dict = {}
            for i, c in image.items():
                for j in range(n):
                    v = A.alpha.rows[j][i]
                    if v:
                        _acc(nxt, c * v, {j: 1})
            image = nxt
        out: dict = {}
        for w, c in acc.items():
            for i, v in image.items():
                _acc(out, c * v, {w + (i,): 1})
        acc = out
    return acc


def rational(rng: random.Random, lo=-3, hi=3) -> Fraction:
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(rng.randint(lo, hi), den)


def random_involution(rng: random.Random, dim: int) -> LinearMap:
    """P diag(+-1) P^-1 for a random unimodular-ish rational P."""
    from colorhom import linalg

    while True:
        P = [[Scalar(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
        if linalg.rank(P) == dim:
            break
    D = [[Scalar(rng.choice([1, -1]) if i == j else 0) for j in range(dim)] for i in range(dim)]
    Pinv = linalg.inverse(P)
    M = linalg.matmul(linalg.matmul(P, D), Pinv)
    return LinearMap(tuple(tuple(r) for r in M))


def random_involutive_module(rng: random.Random, dim: int) -> ColorHomLieAlgebra:
    """Trivially graded, zero bracket, random involutive twist."""
    names = tuple(f"m{i}" for i in range(dim))
    eps = trivial_factor(GradingGroup((1,)))
    return ColorHomLieAlgebra(GradedBasis(names, ((0,),) * dim), eps, {}, random_involution(rng, dim))


def random_tensor(rng: random.Random, dim: int, max_len: int, terms: int = 2, order: int = 1):
    from colorhom.tensor import TensorElement

    out: dict = {}
    for _ in range(rng.randint(1, terms)):
        length = rng.randint(1, max_len)
        w = tuple(rng.randrange(dim) for _ in range(length))
        c = Scalar(rational(rng), order)
        out[w] = out.get(w, Scalar(0, order)) + c
    return TensorElement(out)


def matrix_units_product(i: int, j: int) -> dict:
    """E_ab E_cd = delta_bc E_ad with basis index 2*a + b (directly from 2x2 matrices)."""
    def mat(k):
        m = [[0, 0], [0, 0]]
        m[k // 2][k % 2] = 1
        return m

    a, b = mat(i), mat(j)
    prod = [[sum(a[r][t] * b[t][c] for t in range(2)) for c in range(2)] for r in range(2)]
    return {2 * r + c: prod[r][c] for r in range(2) for c in range(2) if prod[r][c]}
