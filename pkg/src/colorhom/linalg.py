"""Exact linear algebra over :class:`Scalar`.

Sparse vectors are dicts ``column -> Scalar`` with no zero entries.  Columns
can be any hashable; an optional ``key`` function fixes the pivot order.
"""
from __future__ import annotations

import heapq
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .scalar import Scalar

SparseVec = dict


def _identity(c):
    return c


class Echelon:
    """Incrementally maintained echelon basis of a row space.

    Each stored row has leading coefficient 1 at its pivot, where the pivot
    is the smallest column under ``key`` among its support.
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None):
        self.key = key or _identity
        self.rows: dict[Hashable, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> SparseVec:
        """Fully reduce ``vec`` against the stored rows; zero means membership."""
        work = {c: v for c, v in vec.items() if v}
        key = self.key
        heap = [(key(c), i, c) for i, c in enumerate(work)]
        heapq.heapify(heap)
        counter = len(heap)
        out: SparseVec = {}
        while heap:
            _, _, c = heapq.heappop(heap)
            v = work.pop(c, None)
            if v is None:
                continue
            row = self.rows.get(c)
            if row is None:
                out[c] = v
                continue
            for k, w in row.items():
                if k == c:
                    continue
                old = work.get(k)
                if old is None:
                    work[k] = -v * w
                    heapq.heappush(heap, (key(k), counter, k))
                    counter += 1
                else:
                    new = old - v * w
                    if new:
                        work[k] = new
                    else:
                        del work[k]
        return out

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r, key=self.key)
        inv = r[pivot].inverse()
        self.rows[pivot] = {c: v * inv for c, v in r.items()}
        return True

    def extend(self, vecs: Iterable[Mapping]) -> "Echelon":
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)


def sparse_rank(vectors: Iterable[Mapping], key=None) -> int:
    return Echelon(key).extend(vectors).rank


def same_span(a: Sequence[Mapping], b: Sequence[Mapping], key=None) -> bool:
    ea = Echelon(key).extend(a)
    eb = Echelon(key).extend(b)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(v) for v in b)


# dense helpers -------------------------------------------------------------

Matrix = list  # list of rows, each a list of Scalar


def rref(m: Sequence[Sequence[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and pivot columns of a dense matrix."""
    a = [list(r) for r in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Scalar]], ncols: int, order: int = 1) -> list[list[Scalar]]:
    """Basis of {v : m v = 0}, one vector per free column, in column order.

    The vector for free column f has a 1 at f, so the basis is already in
    a canonical (pivot-ordered) form.
    """
    zero = Scalar.zero(order)
    if not m:
        return [[Scalar.one(order) if i == j else zero for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = Scalar.one(order)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence[Scalar]], order: int = 1) -> list[list[Scalar]]:
    n = len(m)
    one, zero = Scalar.one(order), Scalar.zero(order)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], order: int = 1) -> list[list[Scalar]]:
    zero = Scalar.zero(order)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = zero
            for x, brow in zip(row, b):
                if x and brow[j]:
                    acc = acc + x * brow[j]
            new.append(acc)
        out.append(new)
    return out


def identity(n: int, order: int = 1) -> list[list[Scalar]]:
    one, zero = Scalar.one(order), Scalar.zero(order)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
