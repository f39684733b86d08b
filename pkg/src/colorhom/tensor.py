"""The free involutive hom-associative algebra T(M) = sum_{i>=1} M^{(x)i}.

Words are nonempty tuples of basis indices.  There is no empty word, so
T(M) has no unit.
"""
from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Protocol, Sequence

from .algebra import AlgebraError, ColorHomLieAlgebra, LinearMap, add_into, format_combination
from .grading import Degree
from .scalar import Scalar

Word = tuple[int, ...]


class TensorElement:
    """Sparse linear combination of words with canonical sparsity."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        out: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not w:
                raise ValueError("T(M) has no empty word")
            if c:
                out[w] = out[w] + c if w in out else c
                if not out[w]:
                    del out[w]
        self.terms = out

    @classmethod
    def _wrap(cls, terms: dict) -> "TensorElement":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def word(cls, letters: Sequence[int], coeff=1, order: int = 1) -> "TensorElement":
        return cls({tuple(letters): Scalar(0, order) + coeff})

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls._wrap({})

    # linear structure ------------------------------------------------------
    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return TensorElement._wrap(add_into(dict(self.terms), 1, other.terms))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return TensorElement._wrap(add_into(dict(self.terms), -1, other.terms))

    def __neg__(self) -> "TensorElement":
        return TensorElement._wrap({w: -c for w, c in self.terms.items()})

    def __mul__(self, coeff) -> "TensorElement":
        if isinstance(coeff, TensorElement):
            return NotImplemented
        if not coeff:
            return TensorElement.zero()
        return TensorElement._wrap({w: c * coeff for w, c in self.terms.items()})

    __rmul__ = __mul__

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Plain concatenation product."""
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                add_into(out, a * b, {u + v: 1})
        return TensorElement._wrap(out)

    # inspection ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, word: Sequence[int]):
        return self.terms.get(tuple(word), 0)

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def sorted_items(self) -> list[tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def format(self, names: Sequence[str]) -> str:
        return format_combination(
            ("*".join(names[i] for i in w), c) for w, c in self.sorted_items()
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {c}" for w, c in self.sorted_items())
        return f"TensorElement({{{body}}})"


def as_tensor(t) -> TensorElement:
    return t if isinstance(t, TensorElement) else TensorElement(t)


def word_degree(A: ColorHomLieAlgebra, word: Sequence[int]) -> Degree:
    return A.epsilon.group.sum(A.degree(i) for i in word)


def _expand(images: Sequence[Mapping[int, Scalar]]) -> dict:
    """Multilinear expansion of a word whose letters map to linear combinations."""
    acc: dict = {(): 1}
    for img in images:
        nxt: dict = {}
        for w, c in acc.items():
            for k, v in img.items():
                add_into(nxt, c * v, {w + (k,): 1})
        acc = nxt
    return acc


def _letterwise(alpha: LinearMap, t: TensorElement, twisted: Callable[[int, int], bool]) -> TensorElement:
    """Apply alpha at positions p of each word where ``twisted(p, len)`` holds."""
    out: dict = {}
    unit = {}
    for w, c in t.terms.items():
        images = []
        for p, letter in enumerate(w):
            if twisted(p, len(w)):
                images.append(alpha.column(letter))
            else:
                unit[letter] = unit.get(letter) or {letter: 1}
                images.append(unit[letter])
        add_into(out, c, _expand(images))
    return TensorElement._wrap(out)


def map_letters(M: LinearMap, t: TensorElement) -> TensorElement:
    """Apply a linear map to every letter (M^{(x)n} on each component)."""
    return _letterwise(M, t, lambda p, n: True)


def alpha_T(A: ColorHomLieAlgebra, t: TensorElement) -> TensorElement:
    """Letterwise twist, expanded multilinearly."""
    if A.alpha.is_identity():
        return t
    return _letterwise(A.alpha, t, lambda p, n: True)


def alpha_T_power(A: ColorHomLieAlgebra, t: TensorElement, k: int) -> TensorElement:
    if A.involutive:
        k %= 2
    for _ in range(k):
        t = alpha_T(A, t)
    return t


def odot(A: ColorHomLieAlgebra, x: TensorElement, y: TensorElement) -> TensorElement:
    """x (.) y = alpha_T^{m-1}(x) (x) y_1 (x) alpha_T(y_2 ... y_m) with m = len(y)."""
    out: dict = {}
    twisted_x: dict[int, TensorElement] = {}
    for v, b in y.terms.items():
        m = len(v)
        if m not in twisted_x:
            twisted_x[m] = alpha_T_power(A, x, m - 1)
        tail = alpha_T(A, TensorElement._wrap({v[1:]: 1})) if m > 1 else None
        right = {(v[0],) + w: c for w, c in tail.terms.items()} if tail is not None else {(v[0],): 1}
        for u, a in twisted_x[m].terms.items():
            for w, c in right.items():
                add_into(out, a * b * c, {u + w: 1})
    return TensorElement._wrap(out)


def theta(A: ColorHomLieAlgebra, t: TensorElement) -> TensorElement:
    """Apply alpha at 1-based positions 3, 5, 7, ...; words of length <= 2 are fixed."""
    if A.alpha.is_identity():
        return t
    return _letterwise(A.alpha, t, lambda p, n: p >= 2 and p % 2 == 0)


# free extension --------------------------------------------------------------


class HomAssociativeTarget(Protocol):
    """What free_extension needs from a target algebra."""

    def mul(self, x, y): ...

    def twist(self, x): ...

    def embed(self, vec: Mapping[int, Scalar]): ...

    def zero(self): ...

    def add_scaled(self, acc, coeff, x): ...


class TensorAlgebra:
    """T(M) itself as a target of free_extension."""

    def __init__(self, A: ColorHomLieAlgebra):
        self.A = A

    def mul(self, x: TensorElement, y: TensorElement) -> TensorElement:
        return odot(self.A, x, y)

    def twist(self, x: TensorElement) -> TensorElement:
        return alpha_T(self.A, x)

    def embed(self, vec: Mapping[int, Scalar]) -> TensorElement:
        return TensorElement({(k,): v for k, v in vec.items()})

    def zero(self) -> TensorElement:
        return TensorElement.zero()

    def add_scaled(self, acc: TensorElement, coeff, x: TensorElement) -> TensorElement:
        return acc + x * coeff

    def equal(self, x, y) -> bool:
        return x == y


def free_extension(
    A: ColorHomLieAlgebra,
    target: HomAssociativeTarget,
    f: LinearMap,
    target_alpha: LinearMap | None = None,
) -> Callable[[TensorElement], object]:
    """Unique hom-associative morphism T(M) -> target extending f.

    f maps A's basis into the target; its column j, passed through
    ``target.embed``, is the image of e_j.  ``target_alpha`` is the target's
    twist on the image coordinates; when omitted the twist is checked through
    ``target.twist`` on embedded columns.
    """
    n = A.dim
    if f.shape[1] != n:
        raise ValueError(f"f has {f.shape[1]} columns, module has dimension {n}")
    images = [target.embed(f.column(j)) for j in range(n)]
    for j in range(n):
        if target_alpha is not None:
            lhs, rhs = f.apply(A.alpha.column(j)), target_alpha.apply(f.column(j))
            same = lhs == rhs
        else:
            lhs = target.embed(f.apply(A.alpha.column(j)))
            rhs = target.twist(images[j])
            same = lhs == rhs
        if not same:
            raise AlgebraError(
                f"f does not intertwine the twists at basis element {A.names[j]!r}", (A.names[j],)
            )

    cache: dict[Word, object] = {}

    def on_word(w: Word):
        if w in cache:
            return cache[w]
        if len(w) == 1:
            val = images[w[0]]
        else:
            # right multiplication by a length-1 word is plain append
            val = target.mul(on_word(w[:-1]), images[w[-1]])
        cache[w] = val
        return val

    def evaluate(t: TensorElement):
        acc = target.zero()
        for w, c in as_tensor(t).sorted_items():
            acc = target.add_scaled(acc, c, on_word(w))
        return acc

    return evaluate


def words_of_length(dim: int, length: int) -> Iterable[Word]:
    from itertools import product

    return product(range(dim), repeat=length)
