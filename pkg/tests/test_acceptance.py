"""Acceptance criteria C1-C8, one marked group of tests per criterion.

Run with pytest (or as a script); the terminal summary prints one
PASS/FAIL line per criterion.
"""
from __future__ import annotations

import itertools
import random
import sys
from pathlib import Path

import pytest

from colorhom.algebra import verify_color_hom_lie
from colorhom.cli import main as cli_main
from colorhom.fixtures import ALL, load_fixture
from colorhom.scalar import Scalar
from colorhom.specfile import load_algebra, loads_algebra, loads_super_description
from colorhom.tensor import TensorElement, alpha_T, alpha_T_power, odot, theta
from colorhom.uea import (
    annihilation_report,
    build_alpha_stable_basis,
    confluence_report,
    decomposition_oracle,
    faithfulness_report,
    normal_form,
    psi_check,
    random_words,
    theta_ideal_report,
)
from oracles import insertion_normal_form, random_involutive_module, random_tensor, theta_closed_form

DATA = Path(__file__).parent / "data"
SEED = 20261016

SABOTAGE = [
    ("skew_violation", "skew-symmetry", ("x", "y")),
    ("grading_violation", "grading", ("x", "y", "x")),
    ("jacobi_violation", "hom-jacobi", ("a", "b", "c")),
    ("alpha_not_even", "alpha-even", ("x", "z")),
    ("not_multiplicative", "multiplicativity", ("x", "y")),
    ("not_involutive", "involutivity", ("x",)),
]

CONSTRUCTIBLE = [n for n in ALL if n not in ("heisenberg_odd_neg", "z2z2_twist")]


def ctx_param(names):
    return pytest.mark.parametrize("name", names)


# C1 ----------------------------------------------------------------------------


@pytest.mark.criterion("C1")
@pytest.mark.parametrize("name", ALL)
def test_c1_fixture_axioms(algebras, name):
    report = verify_color_hom_lie(algebras[name], multiplicative=True, involutive=True)
    assert report.ok, report.render(name)


@pytest.mark.criterion("C1")
@pytest.mark.parametrize("name,check,witness", SABOTAGE)
def test_c1_sabotage(name, check, witness):
    report = verify_color_hom_lie(load_algebra(DATA / f"{name}.yaml"))
    assert witness in report.witnesses(check)


# C2 ----------------------------------------------------------------------------


def _modules(rng, count):
    return [random_involutive_module(rng, rng.randint(1, 3)) for _ in range(count)]


def _split_lengths(rng, total):
    a = rng.randint(1, total - 2)
    b = rng.randint(1, total - a - 1)
    c = rng.randint(1, total - a - b)
    return a, b, c


@pytest.mark.criterion("C2")
def test_c2_hom_associativity_1000_triples():
    rng = random.Random(SEED)
    mods = _modules(rng, 40)
    checked = 0
    for i in range(1000):
        M = mods[i % len(mods)]
        a, b, c = _split_lengths(rng, rng.randint(3, 6))
        x = random_tensor(rng, M.dim, a, terms=2)
        y = random_tensor(rng, M.dim, b, terms=2)
        z = random_tensor(rng, M.dim, c, terms=2)
        assert x.max_length() + y.max_length() + z.max_length() <= 6
        assert odot(M, alpha_T(M, x), odot(M, y, z)) == odot(M, odot(M, x, y), alpha_T(M, z))
        checked += 1
    assert checked >= 1000


@pytest.mark.criterion("C2")
def test_c2_involutions_500():
    rng = random.Random(SEED + 1)
    mods = _modules(rng, 25)
    for i in range(500):
        M = mods[i % len(mods)]
        t = random_tensor(rng, M.dim, 5, terms=3)
        assert alpha_T(M, alpha_T(M, t)) == t
        assert theta(M, theta(M, t)) == t


@pytest.mark.criterion("C2")
def test_c2_theta_closed_form_500():
    rng = random.Random(SEED + 2)
    mods = _modules(rng, 25)
    for i in range(500):
        M = mods[i % len(mods)]
        w = tuple(rng.randrange(M.dim) for _ in range(rng.randint(1, 5)))
        assert theta(M, TensorElement.word(w)) == TensorElement(theta_closed_form(M, w))


@pytest.mark.criterion("C2")
def test_c2_theta_commutes_with_alpha_500():
    rng = random.Random(SEED + 3)
    mods = _modules(rng, 25)
    for i in range(500):
        M = mods[i % len(mods)]
        t = random_tensor(rng, M.dim, 5, terms=3)
        assert theta(M, alpha_T(M, t)) == alpha_T(M, theta(M, t))


@pytest.mark.criterion("C2")
def test_c2_theta_of_concatenation_500():
    rng = random.Random(SEED + 4)
    mods = _modules(rng, 25)
    for i in range(500):
        M = mods[i % len(mods)]
        j, l = rng.randint(1, 4), rng.randint(1, 4)
        u = tuple(rng.randrange(M.dim) for _ in range(j))
        w = tuple(rng.randrange(M.dim) for _ in range(l))
        tail = alpha_T_power(M, TensorElement.word(w[:1]), j - 1)
        for k in range(1, l):
            tail = tail.tensor(alpha_T_power(M, TensorElement.word(w[k : k + 1]), j + k - 1))
        assert theta(M, TensorElement.word(u + w)) == theta(M, TensorElement.word(u)).tensor(tail)


@pytest.mark.criterion("C2")
def test_c2_theta_shift_by_one_500():
    rng = random.Random(SEED + 5)
    mods = _modules(rng, 25)
    for i in range(500):
        M = mods[i % len(mods)]
        k = rng.randint(1, 3)
        u = TensorElement.word(tuple(rng.randrange(M.dim) for _ in range(k + 1)))
        v = TensorElement.word(tuple(rng.randrange(M.dim) for _ in range(k)))
        w = random_tensor(rng, M.dim, 3, terms=3)
        tu = theta(M, u)
        p, a = next(iter(tu.sorted_items()))
        full = theta(M, u.tensor(w))
        c = TensorElement({q[len(p):]: x / a for q, x in full.items() if q[: len(p)] == p})
        assert full == tu.tensor(c)
        assert theta(M, v.tensor(w)) == theta(M, v).tensor(alpha_T(M, c))


# C3 ----------------------------------------------------------------------------


@pytest.mark.criterion("C3")
def test_c3_constructible_set(contexts):
    assert sorted(contexts) == sorted(CONSTRUCTIBLE)


@pytest.mark.criterion("C3")
@ctx_param(CONSTRUCTIBLE)
def test_c3_theta_ideal_equals_j(contexts, name):
    ctx = contexts[name]
    for L in (2, 3):
        report = theta_ideal_report(ctx, L)
        assert report.ok, report.render(f"{name} L={L}")


# C4 ----------------------------------------------------------------------------


@pytest.mark.criterion("C4")
@ctx_param(CONSTRUCTIBLE)
def test_c4_decomposition(contexts, name):
    ctx = contexts[name]
    for L in (1, 2, 3, 4):
        report = decomposition_oracle(ctx, L)
        assert report.ok, report.render(f"{name} L={L}")


@pytest.mark.criterion("C4")
def test_c4_h_ranks(contexts):
    s = decomposition_oracle(contexts["heisenberg"], 2).stats
    assert (s["rank_J"], s["num_W"], s["dim_T"]) == (3, 9, 12)


# C5 ----------------------------------------------------------------------------


@pytest.mark.criterion("C5")
@ctx_param(CONSTRUCTIBLE)
def test_c5_confluence(contexts, name):
    ctx = contexts[name]
    words = random_words(ctx, 1000, 5, random.Random(f"{SEED}-{name}"))
    for mu in (None, 1):
        report = confluence_report(ctx, words, mu=mu)
        assert report.stats["elements"] == 1000
        assert report.ok, report.render(name)


# C6 ----------------------------------------------------------------------------


@pytest.mark.criterion("C6")
@ctx_param(CONSTRUCTIBLE)
def test_c6_annihilation(contexts, name):
    report = annihilation_report(contexts[name], 4)
    assert report.ok, report.render(name)


@pytest.mark.criterion("C6")
@ctx_param(CONSTRUCTIBLE)
def test_c6_faithfulness(contexts, name):
    report = faithfulness_report(contexts[name], 4)
    assert report.ok, report.render(name)


# C7 ----------------------------------------------------------------------------


@pytest.mark.criterion("C7")
@ctx_param(CONSTRUCTIBLE)
def test_c7_psi(contexts, name):
    report = psi_check(contexts[name])
    assert report.ok, report.render(name)


# C8 ----------------------------------------------------------------------------

CLASSICAL = [
    n for n in ALL if (A := load_fixture(n)).alpha.is_identity() and A.epsilon.is_trivial()
]


@pytest.mark.criterion("C8")
@ctx_param(CLASSICAL)
def test_c8_classical_oracle(contexts, name):
    ctx = contexts[name]
    A = ctx.algebra_x
    for n in (1, 2, 3):
        for w in itertools.product(range(ctx.dim), repeat=n):
            nf = normal_form(ctx, TensorElement.word(w, Scalar(1, ctx.order)))
            assert nf.terms == insertion_normal_form(A, w), (name, w)


@pytest.mark.criterion("C8")
def test_c8_classical_cases_exist():
    assert {"abelian1", "abelian2", "sl2"} <= set(CLASSICAL)


@pytest.mark.criterion("C8")
def test_c8_super_preset_same_algebra():
    preset = loads_algebra(loads_super_description((DATA / "heisenberg_super.yaml").read_text()))
    generic = load_algebra(DATA / "heisenberg_epsilon.yaml")
    assert preset == generic
    a, b = build_alpha_stable_basis(preset), build_alpha_stable_basis(generic)
    rng = random.Random(SEED)
    for t in random_words(a, 300, 4, rng):
        assert normal_form(a, t) == normal_form(b, t)


@pytest.mark.criterion("C8")
def test_c8_super_preset_byte_identical_cli(tmp_path, capsys):
    preset = tmp_path / "preset.yaml"
    assert cli_main(["super-preset", str(DATA / "heisenberg_super.yaml"), "-o", str(preset)]) == 0
    generic = DATA / "heisenberg_epsilon.yaml"
    xyx, yx = str(DATA / "element_xyx.yaml"), str(DATA / "element_yx.yaml")
    commands = [
        ["normalize", "{}", xyx],
        ["normalize", "{}", yx, "--format", "structured"],
        ["multiply", "{}", xyx, yx],
        ["multiply", "{}", yx, xyx, "--strategy", "rightmost"],
        ["pbw-check", "{}", "--max-len", "4", "--seed", "11"],
    ]
    capsys.readouterr()
    for argv in commands:
        outputs = []
        for spec in (preset, generic):
            code = cli_main([str(spec) if s == "{}" else s for s in argv])
            out = capsys.readouterr().out
            outputs.append((code, out.encode()))
        assert outputs[0][0] == 0
        assert outputs[0] == outputs[1], argv


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
