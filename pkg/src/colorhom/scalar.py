"""Exact arithmetic in the cyclotomic field Q(zeta_N).

A :class:`Scalar` stores its coordinates in the power basis
``1, z, z^2, ..., z^(phi(N)-1)`` where ``z`` is a primitive N-th root of
unity, reduced modulo the N-th cyclotomic polynomial.  For ``N in (1, 2)``
the field is just Q and a scalar carries a single rational coordinate.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = ["Scalar", "ScalarParseError", "as_scalar", "cyclotomic_polynomial", "format_scalar", "parse_scalar"]


class ScalarParseError(ValueError):
    """Raised for malformed scalar literals; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1} in {text!r}")
        self.text = text
        self.position = position


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, lowest degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert rem == [0]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the coordinates of z^k for 0 <= k < 2*phi - 1."""
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    rows: list[list[int]] = []
    for k in range(max(2 * phi - 1, 1)):
        if k < phi:
            row = [0] * phi
            row[k] = 1
        else:
            # z * z^(k-1), then substitute z^phi = -sum(c_i z^i)
            prev = rows[k - 1]
            top = prev[-1]
            row = [0] + prev[:-1]
            for i in range(phi):
                row[i] -= top * phi_poly[i]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


class Scalar:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence | int | Fraction = 0, order: int = 1):
        if isinstance(coeffs, (int, Fraction, Rational)):
            coeffs = [coeffs]
        phi = len(cyclotomic_polynomial(order)) - 1
        raw = [_to_fraction(c) for c in coeffs]
        if len(raw) > phi:
            raw = _reduce(raw, order)
        elif len(raw) < phi:
            raw = raw + [Fraction(0)] * (phi - len(raw))
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(raw)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], order: int) -> "Scalar":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # construction helpers ------------------------------------------------
    @classmethod
    def zero(cls, order: int = 1) -> "Scalar":
        return cls(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Scalar":
        return cls(1, order)

    @classmethod
    def root_of_unity(cls, k: int, order: int) -> "Scalar":
        """zeta_order ** k, reduced."""
        k %= order
        return cls([0] * k + [1], order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # coercion ------------------------------------------------------------
    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.order == self.order:
                return other
            if other.is_rational():
                return Scalar(other.coeffs[0], self.order)
            if self.is_rational():
                return None  # handled by the caller swapping roles
            raise ValueError(f"cannot combine scalars of orders {self.order} and {other.order}")
        if isinstance(other, (int, Fraction, Rational)):
            return Scalar(other, self.order)
        return None

    def _lift(self, other) -> tuple["Scalar", "Scalar"] | None:
        o = self._coerce(other)
        if o is not None:
            return self, o
        if isinstance(other, Scalar) and self.is_rational():
            return Scalar(self.coeffs[0], other.order), other
        return None

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar._raw(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.order)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(tuple(-x for x in self.coeffs), self.order)

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar._raw(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.order)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if len(a.coeffs) == 1:
            return Scalar._raw((a.coeffs[0] * b.coeffs[0],), a.order)
        return Scalar._raw(_mul(a.coeffs, b.coeffs, a.order), a.order)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if len(self.coeffs) == 1:
            return Scalar._raw((1 / self.coeffs[0],), self.order)
        return Scalar._raw(_inverse(self.coeffs, self.order), self.order)

    def __truediv__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = Scalar.one(self.order)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing ------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        if isinstance(other, (int, Fraction, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            # rational scalars hash like the Fraction so mixed-order equality is consistent
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # text ----------------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r}, order={self.order})"

    @classmethod
    def parse(cls, text: str, order: int = 1) -> "Scalar":
        return parse_scalar(text, order)


def _reduce(raw: list[Fraction], order: int) -> list[Fraction]:
    phi_poly = cyclotomic_polynomial(order)
    phi = len(phi_poly) - 1
    raw = list(raw)
    for k in range(len(raw) - 1, phi - 1, -1):
        top = raw[k]
        if top:
            raw[k] = Fraction(0)
            for i in range(phi):
                raw[k - phi + i] -= top * phi_poly[i]
    return raw[:phi]


def _mul(a: tuple[Fraction, ...], b: tuple[Fraction, ...], order: int) -> tuple[Fraction, ...]:
    phi = len(a)
    table = _reduction_table(order)
    out = [Fraction(0)] * phi
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            p = x * y
            for k, t in enumerate(table[i + j]):
                if t:
                    out[k] += p * t
    return tuple(out)


def _inverse(a: tuple[Fraction, ...], order: int) -> tuple[Fraction, ...]:
    # solve (multiplication by a) c = 1 by Gauss-Jordan
    phi = len(a)
    cols = []
    basis = [tuple(Fraction(int(i == k)) for i in range(phi)) for k in range(phi)]
    for k in range(phi):
        cols.append(_mul(a, basis[k], order))
    m = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
    for c in range(phi):
        piv = next(r for r in range(c, phi) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(phi):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [v - f * w for v, w in zip(m[r], m[c])]
    return tuple(m[i][phi] for i in range(phi))


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical literal, highest power first: ``z^2-1/2``, ``-z``, ``3/4``."""
    parts: list[str] = []
    for k in range(len(s.coeffs) - 1, -1, -1):
        c = s.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = _format_rational(mag)
        else:
            power = "z" if k == 1 else f"z^{k}"
            body = power if mag == 1 else f"{_format_rational(mag)}*{power}"
        parts.append(sign + body)
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)(?:\s*\*\s*(?P<z1>z)(?:\s*\^\s*(?P<e1>\d+))?)?
          |
          (?P<z2>z)(?:\s*\^\s*(?P<e2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str, order: int = 1) -> Scalar:
    """Parse ``"3/4"``, ``"-2"``, ``"z^2-1/2"``, ``"1/2*z + 3"`` into Q(zeta_order)."""
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return Scalar(text, order)
        raise ScalarParseError("expected a scalar literal", repr(text), 0)
    pos = 0
    if not text.strip():
        raise ScalarParseError("empty scalar literal", text, 0)
    acc: dict[int, Fraction] = {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (not first and m.group("sign") is None):
            raise ScalarParseError("unexpected character", text, _first_bad(text, pos))
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            literal = m.group("coef")
            if "/" in literal and int(literal.split("/")[1]) == 0:
                raise ScalarParseError("zero denominator", text, m.start("coef"))
            coef = Fraction(literal)
            power = 0
            if m.group("z1"):
                power = int(m.group("e1") or 1)
        elif m.group("z2") is not None:
            coef = Fraction(1)
            power = int(m.group("e2") or 1)
        else:
            raise ScalarParseError("missing term", text, _first_bad(text, pos))
        acc[power] = acc.get(power, Fraction(0)) + sign * coef
        pos = m.end()
    if any(p > 0 for p, c in acc.items() if c) and order == 1:
        raise ScalarParseError("z is not available over the rationals (order 1)", text, text.index("z"))
    # fold z^order = 1 before reducing modulo the cyclotomic polynomial
    coeffs = [Fraction(0)] * order
    for p, c in acc.items():
        coeffs[p % order] += c
    return Scalar(coeffs, order)


def _first_bad(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return min(pos, max(len(text) - 1, 0))


def as_scalar(value, order: int = 1) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value, order)
    return Scalar(value, order)


def scalar_sum(values: Iterable[Scalar], order: int = 1) -> Scalar:
    total = Scalar.zero(order)
    for v in values:
        total = total + v
    return total
