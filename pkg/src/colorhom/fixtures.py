"""Bundled example algebras and their Yau twists."""
from __future__ import annotations

from importlib import resources

from .algebra import ColorHomLieAlgebra, LinearMap, yau_twist
from .scalar import Scalar
from .specfile import loads_algebra

BASE = ("abelian1", "abelian2", "abelian3", "heisenberg", "z2z2", "sl2")

# twisted fixture -> (base fixture, images of the twisting map by name)
TWISTS: dict[str, tuple[str, dict[str, dict[str, int]]]] = {
    "abelian1_neg": ("abelian1", {"a": {"a": -1}}),
    "abelian2_swap": ("abelian2", {"a": {"b": 1}, "b": {"a": 1}}),
    "abelian3_neg": ("abelian3", {"a": {"a": -1}, "b": {"b": -1}, "c": {"c": -1}}),
    "heisenberg_swap": ("heisenberg", {"x": {"y": 1}, "y": {"x": 1}}),
    "heisenberg_odd_neg": ("heisenberg", {"x": {"x": -1}, "y": {"y": -1}}),
    "z2z2_twist": ("z2z2", {"e1": {"e1": -1}, "e2": {"e2": -1}}),
    "sl2_chevalley": ("sl2", {"e": {"f": -1}, "f": {"e": -1}, "h": {"h": -1}}),
}

ALL = BASE + tuple(TWISTS)


def fixture_text(name: str) -> str:
    if name not in ALL:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(ALL)}")
    return resources.files("colorhom").joinpath("data").joinpath(f"{name}.yaml").read_text(encoding="utf-8")


def load_fixture(name: str) -> ColorHomLieAlgebra:
    return loads_algebra(fixture_text(name))


def fixture_path(name: str):
    return resources.files("colorhom").joinpath("data").joinpath(f"{name}.yaml")


def twist_map(base: ColorHomLieAlgebra, images: dict[str, dict[str, int]]) -> LinearMap:
    """Map fixing every basis element not listed in ``images``."""
    order = base.order
    cols = []
    for j, n in enumerate(base.names):
        if n in images:
            cols.append({base.basis.index(k): Scalar(v, order) for k, v in images[n].items()})
        else:
            cols.append({j: Scalar(1, order)})
    return LinearMap.from_columns(cols, base.dim, order)


def build_twist(name: str) -> ColorHomLieAlgebra:
    """Recompute a twisted fixture from its base (the bundled file must agree)."""
    base_name, images = TWISTS[name]
    base = load_fixture(base_name)
    return yau_twist(base, twist_map(base, images), name=name)
