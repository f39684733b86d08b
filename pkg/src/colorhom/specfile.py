"""YAML algebra-definition and element files.

Scalars are always exact: integers, rationals such as ``"3/4"`` and
zeta-polynomials such as ``"z^2-1/2"``.  Floating-point literals are rejected.
Every parse error carries the line and column of the offending node.
"""
from __future__ import annotations

import re
from typing import Mapping, Sequence

import yaml

from .algebra import ColorHomLieAlgebra, GradedBasis, LinearMap
from .grading import CommutationFactor, GradingGroup, InvalidBicharacter, factor_from_pairing
from .scalar import Scalar, ScalarParseError, format_scalar, parse_scalar
from .tensor import TensorElement

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_FLOAT_TAG = "tag:yaml.org,2002:float"
_INT_TAG = "tag:yaml.org,2002:int"
_BOOL_TAG = "tag:yaml.org,2002:bool"


class SpecError(ValueError):
    """Parse or validation failure with a 1-based source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, field: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.field = field
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}, column {self.column}")
        if self.field:
            where.append(f"field '{self.field}'")
        return f"{': '.join(where)}: {self.message}" if where else self.message


def _err(node, field: str, message: str) -> SpecError:
    mark = getattr(node, "start_mark", None)
    if mark is None:
        return SpecError(message, field=field)
    return SpecError(message, mark.line + 1, mark.column + 1, field)


# node readers ----------------------------------------------------------------


def _compose(text: str):
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        raise SpecError(f"YAML syntax error: {e.problem}", mark.line + 1, mark.column + 1) from None
    if node is None:
        raise SpecError("empty document")
    return node


def _mapping(node, field: str, allowed: Sequence[str] | None = None, required: Sequence[str] = ()) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise _err(node, field, "expected a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise _err(k, field, "mapping keys must be plain names")
        key = k.value
        if key in out:
            raise _err(k, field, f"duplicate key {key!r}")
        if allowed is not None and key not in allowed:
            raise _err(k, field, f"unknown key {key!r} (expected one of {', '.join(allowed)})")
        out[key] = (k, v)
    for r in required:
        if r not in out:
            raise _err(node, field, f"missing required key {r!r}")
    return out


def _sequence(node, field: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise _err(node, field, "expected a list")
    return list(node.value)


def _scalar_node(node, field: str) -> yaml.ScalarNode:
    if not isinstance(node, yaml.ScalarNode):
        raise _err(node, field, "expected a single value")
    return node


def _name(node, field: str) -> str:
    text = _scalar_node(node, field).value
    if not _NAME.match(text):
        raise _err(node, field, f"{text!r} is not a valid identifier")
    return text


def _int(node, field: str) -> int:
    n = _scalar_node(node, field)
    if n.tag != _INT_TAG:
        raise _err(node, field, f"expected an integer, got {n.value!r}")
    return int(n.value, 0)


def _bool(node, field: str) -> bool:
    n = _scalar_node(node, field)
    if n.tag != _BOOL_TAG:
        raise _err(node, field, f"expected true or false, got {n.value!r}")
    return n.value.lower() in ("true", "yes", "on")


def _exact(node, field: str, order: int) -> Scalar:
    n = _scalar_node(node, field)
    if n.tag == _FLOAT_TAG:
        raise _err(node, field, f"floating-point literal {n.value!r} is not exact; write a rational like '3/4'")
    try:
        return parse_scalar(n.value, order)
    except ScalarParseError as e:
        mark = n.start_mark
        # quoted scalars start one column before their text
        offset = 1 if n.style in ("'", '"') else 0
        raise SpecError(
            f"bad scalar {n.value!r}: {e.args[0]}", mark.line + 1, mark.column + 1 + offset + e.position, field
        ) from None


# algebra files -----------------------------------------------------------------

_TOP_KEYS = ("name", "grading", "basis", "bracket", "alpha", "involutive", "multiplicative")


def loads_algebra(text: str) -> ColorHomLieAlgebra:
    root = _mapping(_compose(text), "<root>", _TOP_KEYS, ("grading", "basis"))
    name = _name(root["name"][1], "name") if "name" in root else ""

    g = _mapping(root["grading"][1], "grading", ("moduli", "pairing", "epsilon"), ("moduli",))
    mod_nodes = _sequence(g["moduli"][1], "grading.moduli")
    moduli = tuple(_int(m, "grading.moduli") for m in mod_nodes)
    for m, node in zip(moduli, mod_nodes):
        if m < 1:
            raise _err(node, "grading.moduli", "moduli must be >= 1")
    if not moduli:
        raise _err(g["moduli"][1], "grading.moduli", "at least one modulus is required")
    group = GradingGroup(moduli)
    order = group.exponent
    epsilon = _read_epsilon(g, group)

    names: list[str] = []
    degrees: list[tuple[int, ...]] = []
    for item in _sequence(root["basis"][1], "basis"):
        entry = _mapping(item, "basis", ("name", "degree"), ("name", "degree"))
        nm = _name(entry["name"][1], "basis.name")
        if nm in names:
            raise _err(entry["name"][1], "basis.name", f"duplicate basis name {nm!r}")
        names.append(nm)
        degrees.append(_read_degree(entry["degree"][1], group, f"basis.{nm}.degree"))
    if not names:
        raise _err(root["basis"][1], "basis", "basis must not be empty")
    index = {n: i for i, n in enumerate(names)}

    def lookup(node, field):
        nm = _name(node, field)
        if nm not in index:
            raise _err(node, field, f"unknown basis element {nm!r}")
        return index[nm]

    table: dict = {}
    if "bracket" in root:
        for item in _sequence(root["bracket"][1], "bracket"):
            entry = _mapping(item, "bracket", ("pair", "value"), ("pair", "value"))
            pair = _sequence(entry["pair"][1], "bracket.pair")
            if len(pair) != 2:
                raise _err(entry["pair"][1], "bracket.pair", "pair must name exactly two basis elements")
            i, j = lookup(pair[0], "bracket.pair"), lookup(pair[1], "bracket.pair")
            if (i, j) in table:
                raise _err(entry["pair"][1], "bracket.pair", f"duplicate bracket entry [{names[i]}, {names[j]}]")
            table[(i, j)] = _read_vector(entry["value"][1], lookup, order, f"bracket[{names[i]},{names[j]}]")

    alpha = LinearMap.identity(len(names), order)
    if "alpha" in root:
        node = root["alpha"][1]
        if isinstance(node, yaml.ScalarNode) and node.value == "identity":
            pass
        else:
            images = _mapping(node, "alpha")
            columns = [{j: Scalar(1, order)} for j in range(len(names))]
            for key, (knode, vnode) in images.items():
                j = lookup(knode, "alpha")
                columns[j] = _read_vector(vnode, lookup, order, f"alpha.{key}")
            alpha = LinearMap.from_columns(columns, len(names), order)

    involutive = _bool(root["involutive"][1], "involutive") if "involutive" in root else True
    multiplicative = _bool(root["multiplicative"][1], "multiplicative") if "multiplicative" in root else False
    return ColorHomLieAlgebra(
        GradedBasis(tuple(names), tuple(degrees)), epsilon, table, alpha,
        involutive=involutive, multiplicative=multiplicative, name=name,
    )


def _read_degree(node, group: GradingGroup, field: str) -> tuple[int, ...]:
    if isinstance(node, yaml.ScalarNode):
        parts = [node]
    else:
        parts = _sequence(node, field)
    values = tuple(_int(p, field) for p in parts)
    if len(values) != group.rank:
        raise _err(node, field, f"degree has {len(values)} components, grading group has {group.rank}")
    for v, m, p in zip(values, group.moduli, parts):
        if not 0 <= v < m:
            raise _err(p, field, f"residue {v} is outside [0, {m})")
    return values


def _read_vector(node, lookup, order: int, field: str) -> dict:
    entries = _mapping(node, field)
    out: dict = {}
    for _, (knode, vnode) in entries.items():
        k = lookup(knode, field)
        out[k] = _exact(vnode, field, order)
    return out


def _read_epsilon(g: dict, group: GradingGroup) -> CommutationFactor:
    if "pairing" in g and "epsilon" in g:
        raise _err(g["epsilon"][0], "grading", "give either 'pairing' or 'epsilon', not both")
    if "pairing" in g:
        node = g["pairing"][1]
        rows = [[_int(v, "grading.pairing") for v in _sequence(r, "grading.pairing")] for r in _sequence(node, "grading.pairing")]
        try:
            return factor_from_pairing(group, rows)
        except InvalidBicharacter as e:
            raise _err(node, "grading.pairing", str(e)) from None
    if "epsilon" in g:
        node = g["epsilon"][1]
        table = {}
        for item in _sequence(node, "grading.epsilon"):
            entry = _mapping(item, "grading.epsilon", ("left", "right", "value"), ("left", "right", "value"))
            a = _read_degree(entry["left"][1], group, "grading.epsilon.left")
            b = _read_degree(entry["right"][1], group, "grading.epsilon.right")
            if (a, b) in table:
                raise _err(item, "grading.epsilon", f"duplicate entry for {a}, {b}")
            table[(a, b)] = _exact(entry["value"][1], "grading.epsilon.value", group.exponent)
        try:
            return CommutationFactor(group, table)
        except ValueError as e:
            raise _err(node, "grading.epsilon", str(e)) from None
    return factor_from_pairing(group, [[0] * group.rank for _ in range(group.rank)])


def load_algebra(path) -> ColorHomLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads_algebra(fh.read())


# emission ----------------------------------------------------------------------


def _q(s: Scalar) -> str:
    return '"' + format_scalar(s) + '"'


def _vec(names: Sequence[str], vec: Mapping[int, Scalar]) -> str:
    return "{" + ", ".join(f"{names[k]}: {_q(vec[k])}" for k in sorted(vec)) + "}"


def _deg(d: Sequence[int]) -> str:
    return "[" + ", ".join(str(x) for x in d) + "]"


def dumps_algebra(A: ColorHomLieAlgebra) -> str:
    """Canonical text; ``loads_algebra(dumps_algebra(A)) == A``."""
    names = A.names
    g = A.epsilon.group
    lines = []
    if A.name:
        lines.append(f"name: {A.name}")
    lines.append("grading:")
    lines.append(f"  moduli: {_deg(g.moduli)}")
    if A.epsilon.pairing is not None:
        lines.append("  pairing:")
        for row in A.epsilon.pairing:
            lines.append(f"    - {_deg(row)}")
    else:
        lines.append("  epsilon:")
        for a in g.elements():
            for b in g.elements():
                lines.append(f"    - {{left: {_deg(a)}, right: {_deg(b)}, value: {_q(A.epsilon(a, b))}}}")
    lines.append("basis:")
    for n, d in zip(names, A.basis.degrees):
        lines.append(f"  - {{name: {n}, degree: {_deg(d)}}}")
    if A.bracket:
        lines.append("bracket:")
        for (i, j) in sorted(A.bracket):
            lines.append(f"  - {{pair: [{names[i]}, {names[j]}], value: {_vec(names, A.bracket[(i, j)])}}}")
    if A.alpha.is_identity():
        lines.append("alpha: identity")
    else:
        lines.append("alpha:")
        for j in range(A.dim):
            col = A.alpha.column(j)
            if col != {j: 1}:
                lines.append(f"  {names[j]}: {_vec(names, col)}")
    lines.append(f"involutive: {'true' if A.involutive else 'false'}")
    lines.append(f"multiplicative: {'true' if A.multiplicative else 'false'}")
    return "\n".join(lines) + "\n"


# element files -----------------------------------------------------------------


def loads_element(text: str, names: Sequence[str], order: int) -> TensorElement:
    root = _mapping(_compose(text), "<root>", ("terms",), ("terms",))
    index = {n: i for i, n in enumerate(names)}
    terms: dict = {}
    for item in _sequence(root["terms"][1], "terms"):
        entry = _mapping(item, "terms", ("word", "coeff"), ("word",))
        letters = _sequence(entry["word"][1], "terms.word")
        if not letters:
            raise _err(entry["word"][1], "terms.word", "words must be nonempty")
        word = []
        for node in letters:
            nm = _name(node, "terms.word")
            if nm not in index:
                raise _err(node, "terms.word", f"unknown basis element {nm!r}")
            word.append(index[nm])
        coeff = _exact(entry["coeff"][1], "terms.coeff", order) if "coeff" in entry else Scalar(1, order)
        w = tuple(word)
        terms[w] = terms[w] + coeff if w in terms else coeff
    return TensorElement(terms)


def load_element(path, names: Sequence[str], order: int) -> TensorElement:
    with open(path, encoding="utf-8") as fh:
        return loads_element(fh.read(), names, order)


def dumps_element(t: TensorElement, names: Sequence[str]) -> str:
    lines = ["terms:"]
    for w, c in t.sorted_items():
        lines.append(f"  - {{word: [{', '.join(names[i] for i in w)}], coeff: {_q(c)}}}")
    if len(lines) == 1:
        lines[0] = "terms: []"
    return "\n".join(lines) + "\n"


# superalgebra preset -------------------------------------------------------------


def super_preset(
    names: Sequence[str],
    parities: Sequence[int],
    brackets: Mapping[tuple[str, str], Mapping[str, object]] | None = None,
    alpha: Mapping[str, Mapping[str, object]] | None = None,
    name: str = "",
    involutive: bool = True,
    multiplicative: bool = False,
) -> str:
    """Spec-file text for a hom-Lie superalgebra: Z_2 grading with pairing [[1]]."""
    names = list(names)
    parities = list(parities)
    if len(names) != len(parities):
        raise ValueError(f"{len(names)} names but {len(parities)} parities")
    for n, p in zip(names, parities):
        if p not in (0, 1):
            raise ValueError(f"parity of {n!r} must be 0 or 1, got {p!r}")
    group = GradingGroup((2,))
    index = {n: i for i, n in enumerate(names)}

    def vec(m):
        out = {}
        for k, v in m.items():
            if k not in index:
                raise ValueError(f"unknown basis element {k!r}")
            out[index[k]] = v if isinstance(v, Scalar) else parse_scalar(str(v), 2)
        return out

    table = {}
    for (a, b), v in (brackets or {}).items():
        if a not in index or b not in index:
            raise ValueError(f"bracket names unknown element in ({a!r}, {b!r})")
        table[(index[a], index[b])] = vec(v)
    columns = [{j: Scalar(1, 2)} for j in range(len(names))]
    for k, v in (alpha or {}).items():
        if k not in index:
            raise ValueError(f"unknown basis element {k!r}")
        columns[index[k]] = vec(v)
    A = ColorHomLieAlgebra(
        GradedBasis(tuple(names), tuple((p,) for p in parities)),
        factor_from_pairing(group, [[1]]),
        table,
        LinearMap.from_columns(columns, len(names), 2),
        involutive=involutive,
        multiplicative=multiplicative,
        name=name,
    )
    return dumps_algebra(A)


_SUPER_KEYS = ("name", "basis", "bracket", "alpha", "involutive", "multiplicative")


def loads_super_description(text: str) -> str:
    """Read a superalgebra description (basis with parities) and emit a spec file."""
    root = _mapping(_compose(text), "<root>", _SUPER_KEYS, ("basis",))
    name = _name(root["name"][1], "name") if "name" in root else ""
    names, parities = [], []
    for item in _sequence(root["basis"][1], "basis"):
        entry = _mapping(item, "basis", ("name", "parity"), ("name", "parity"))
        names.append(_name(entry["name"][1], "basis.name"))
        p = _int(entry["parity"][1], "basis.parity")
        if p not in (0, 1):
            raise _err(entry["parity"][1], "basis.parity", f"parity must be 0 or 1, got {p}")
        parities.append(p)

    def raw_vector(node, field):
        return {k: _exact(v, field, 2) for k, (_, v) in _mapping(node, field).items()}

    brackets = {}
    if "bracket" in root:
        for item in _sequence(root["bracket"][1], "bracket"):
            entry = _mapping(item, "bracket", ("pair", "value"), ("pair", "value"))
            pair = _sequence(entry["pair"][1], "bracket.pair")
            if len(pair) != 2:
                raise _err(entry["pair"][1], "bracket.pair", "pair must name exactly two basis elements")
            key = (_name(pair[0], "bracket.pair"), _name(pair[1], "bracket.pair"))
            brackets[key] = raw_vector(entry["value"][1], "bracket.value")
    alpha = None
    if "alpha" in root:
        node = root["alpha"][1]
        if not (isinstance(node, yaml.ScalarNode) and node.value == "identity"):
            alpha = {k: raw_vector(v, f"alpha.{k}") for k, (_, v) in _mapping(node, "alpha").items()}
    involutive = _bool(root["involutive"][1], "involutive") if "involutive" in root else True
    multiplicative = _bool(root["multiplicative"][1], "multiplicative") if "multiplicative" in root else False
    try:
        return super_preset(names, parities, brackets, alpha, name, involutive, multiplicative)
    except ValueError as e:
        raise _err(root["basis"][1], "basis", str(e)) from None
