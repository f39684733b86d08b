from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from colorhom.algebra import AlgebraError, ColorHomLieAlgebra, GradedBasis, HomAssociativeAlgebra, LinearMap, verify_hom_associative
from colorhom.fixtures import load_fixture
from colorhom.grading import GradingGroup, trivial_factor
from colorhom.scalar import Scalar
from colorhom.tensor import (
    TensorAlgebra,
    TensorElement,
    alpha_T,
    alpha_T_power,
    free_extension,
    map_letters,
    odot,
    theta,
    word_degree,
    words_of_length,
)
from oracles import random_involution, random_involutive_module, random_tensor, theta_closed_form

W = TensorElement.word


def module(alpha_rows, order=1):
    n = len(alpha_rows)
    return ColorHomLieAlgebra(
        GradedBasis(tuple(f"e{i + 1}" for i in range(n)), ((0,),) * n),
        trivial_factor(GradingGroup((1,))), {}, LinearMap(tuple(tuple(Scalar(v) for v in r) for r in alpha_rows)),
    )


SWAP = module([[0, 1], [1, 0]])
IDENT = module([[1, 0], [0, 1]])


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        TensorElement({(): 1})


def test_canonical_sparsity():
    t = W((0, 1)) + W((1, 0)) - W((0, 1))
    assert t.terms == {(1, 0): 1}
    assert (t - t) == 0 and not (t - t).terms


def test_alpha_T_examples():
    assert alpha_T(IDENT, W((0, 1, 1))) == W((0, 1, 1))
    assert alpha_T(SWAP, W((0, 0, 1))) == W((1, 1, 0))
    h = load_fixture("heisenberg_odd_neg")
    assert alpha_T(h, W((0, 2), order=2)) == W((0, 2), -1, order=2)


def test_alpha_T_expands_linear_combinations():
    M = module([[1, 1], [0, -1]])  # e1 -> e1, e2 -> e1 - e2
    assert alpha_T(M, W((1, 1))) == TensorElement({(0, 0): 1, (0, 1): -1, (1, 0): -1, (1, 1): 1})


def test_odot_examples():
    assert odot(SWAP, W((0, 1)), W((1,))) == W((0, 1, 1))
    assert odot(SWAP, W((0,)), W((0, 1))) == W((1, 0, 0))
    rng = random.Random(3)
    for _ in range(20):
        x, y = random_tensor(rng, 2, 3), random_tensor(rng, 2, 3)
        assert odot(IDENT, x, y) == x.tensor(y)


def test_odot_hom_associative_exhaustive_small():
    for M in (SWAP, IDENT, module([[1, 0], [0, -1]])):
        words = [w for n in (1, 2, 3) for w in words_of_length(2, n)]
        for x, y, z in itertools.product(words, repeat=3):
            if len(x) + len(y) + len(z) > 6:
                continue
            X, Y, Z = W(x), W(y), W(z)
            assert odot(M, alpha_T(M, X), odot(M, Y, Z)) == odot(M, odot(M, X, Y), alpha_T(M, Z))


def test_left_indexed_reading_fails_hom_associativity():
    # twisting by the length of the left factor instead breaks the identity on a small witness
    def odot_left(M, x, y):
        out = TensorElement.zero()
        for u, a in x.items():
            xu = alpha_T_power(M, W(u), len(u) - 1)
            for v, b in y.items():
                tail = alpha_T(M, W(v[1:])) if len(v) > 1 else None
                right = W(v[:1]) if tail is None else W(v[:1]).tensor(tail)
                out = out + xu.tensor(right) * (a * b)
        return out

    found = False
    words = [w for n in (1, 2) for w in words_of_length(2, n)]
    for x, y, z in itertools.product(words, repeat=3):
        X, Y, Z = W(x), W(y), W(z)
        if odot_left(SWAP, alpha_T(SWAP, X), odot_left(SWAP, Y, Z)) != odot_left(SWAP, odot_left(SWAP, X, Y), alpha_T(SWAP, Z)):
            found = True
            break
    assert found


def test_theta_examples():
    assert theta(SWAP, W((0, 1))) == W((0, 1))
    assert theta(SWAP, W((0, 1, 0))) == W((0, 1, 1))
    assert theta(SWAP, W((0, 0, 0, 0, 0))) == W((0, 0, 1, 0, 1))


def test_degree_additivity_on_fixture():
    A = load_fixture("z2z2_twist")
    rng = random.Random(5)
    for _ in range(50):
        u = tuple(rng.randrange(4) for _ in range(rng.randint(1, 3)))
        v = tuple(rng.randrange(4) for _ in range(rng.randint(1, 3)))
        prod = odot(A, W(u, order=A.order), W(v, order=A.order))
        target = A.epsilon.group.add(word_degree(A, u), word_degree(A, v))
        assert prod and all(word_degree(A, w) == target for w in prod)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_involutions_square_to_identity(seed, dim):
    rng = random.Random(seed)
    M = random_involutive_module(rng, dim)
    t = random_tensor(rng, dim, 5, terms=3)
    assert alpha_T(M, alpha_T(M, t)) == t
    assert theta(M, theta(M, t)) == t


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_theta_closed_form_and_alpha_commutation(seed, dim):
    rng = random.Random(seed)
    M = random_involutive_module(rng, dim)
    w = tuple(rng.randrange(dim) for _ in range(rng.randint(1, 5)))
    assert theta(M, W(w)) == TensorElement(theta_closed_form(M, w))
    t = random_tensor(rng, dim, 5)
    assert theta(M, alpha_T(M, t)) == alpha_T(M, theta(M, t))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_theta_of_concatenation(seed, dim):
    rng = random.Random(seed)
    M = random_involutive_module(rng, dim)
    j, l = rng.randint(1, 4), rng.randint(1, 4)
    u = tuple(rng.randrange(dim) for _ in range(j))
    w = tuple(rng.randrange(dim) for _ in range(l))
    tail = W(w[:1])
    tail = alpha_T_power(M, tail, j - 1)
    for k in range(1, l):
        tail = tail.tensor(alpha_T_power(M, W(w[k : k + 1]), j + k - 1))
    assert theta(M, W(u + w)) == theta(M, W(u)).tensor(tail)


def right_factor(total: TensorElement, left: TensorElement) -> TensorElement:
    """c with total = left (x) c, read off from one support word of ``left``."""
    p, a = next(iter(left.sorted_items()))
    return TensorElement({w[len(p):]: c / a for w, c in total.items() if w[: len(p)] == p})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_theta_shift_by_one(seed, dim):
    rng = random.Random(seed)
    M = random_involutive_module(rng, dim)
    k = rng.randint(1, 3)
    u = W(tuple(rng.randrange(dim) for _ in range(k + 1)))
    v = W(tuple(rng.randrange(dim) for _ in range(k)))
    w = random_tensor(rng, dim, 3, terms=3)
    c = right_factor(theta(M, u.tensor(w)), theta(M, u))
    assert theta(M, u.tensor(w)) == theta(M, u).tensor(c)
    assert theta(M, v.tensor(w)) == theta(M, v).tensor(alpha_T(M, c))


def test_alpha_T_multiplicative_over_concatenation():
    rng = random.Random(11)
    for _ in range(100):
        M = random_involutive_module(rng, rng.randint(1, 3))
        x, y = random_tensor(rng, M.dim, 3), random_tensor(rng, M.dim, 3)
        assert alpha_T(M, x.tensor(y)) == alpha_T(M, x).tensor(alpha_T(M, y))


def test_map_letters_matches_alpha_T():
    rng = random.Random(2)
    M = random_involutive_module(rng, 3)
    t = random_tensor(rng, 3, 4, terms=4)
    assert map_letters(M.alpha, t) == alpha_T(M, t)


# free extension ----------------------------------------------------------------


def test_free_extension_into_T_is_identity():
    rng = random.Random(4)
    M = random_involutive_module(rng, 2)
    fbar = free_extension(M, TensorAlgebra(M), LinearMap.identity(2))
    for n in (1, 2, 3, 4):
        for w in words_of_length(2, n):
            assert fbar(W(w)) == W(w)


def twisted_product_algebra() -> HomAssociativeAlgebra:
    """k x k with idempotents u, v, twisted by the swap automorphism: u*u = v, v*v = u."""
    one = Scalar(1)
    return HomAssociativeAlgebra(
        GradedBasis(("u", "v"), ((0,), (0,))), trivial_factor(GradingGroup((1,))),
        {(0, 0): {1: one}, (1, 1): {0: one}}, LinearMap.from_columns([{1: 1}, {0: 1}], 2),
    )


def test_target_is_hom_associative():
    assert verify_hom_associative(twisted_product_algebra()).ok


def test_free_extension_length_one_is_f():
    V = twisted_product_algebra()
    f = LinearMap.from_columns([{0: 2, 1: 3}, {0: 3, 1: 2}], 2)
    fbar = free_extension(SWAP, V, f)
    assert fbar(W((0,))) == {0: 2, 1: 3}
    assert fbar(W((1,))) == {0: 3, 1: 2}


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_free_extension_is_a_morphism(a, b):
    V = twisted_product_algebra()
    f = LinearMap.from_columns([{0: a, 1: b}, {0: b, 1: a}], 2)  # commutes with both swaps
    fbar = free_extension(SWAP, V, f)
    words = [W(w) for n in (1, 2, 3) for w in words_of_length(2, n)]
    for x in words:
        assert fbar(alpha_T(SWAP, x)) == V.twist(fbar(x))
        for y in words:
            assert fbar(odot(SWAP, x, y)) == V.mul(fbar(x), fbar(y))


def test_free_extension_rejects_non_intertwining_map():
    V = twisted_product_algebra()
    f = LinearMap.from_columns([{0: 1}, {0: 1}], 2)  # alpha then f sends e1 to u; f then twist sends it to v
    with pytest.raises(AlgebraError) as info:
        free_extension(SWAP, V, f)
    assert info.value.witness == ("e1",)


def test_free_extension_with_explicit_target_alpha():
    V = twisted_product_algebra()
    f = LinearMap.from_columns([{0: 1}, {0: 1}], 2)
    with pytest.raises(AlgebraError):
        free_extension(SWAP, V, f, target_alpha=V.alpha)
    fbar = free_extension(SWAP, V, LinearMap.identity(2), target_alpha=V.alpha)
    assert fbar(W((0, 0))) == {1: 1}
