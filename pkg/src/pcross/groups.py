"""Finite groups as validated multiplication tables, identity at index 0."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CapacityError,
    EmptyGroup,
    IdentityNotFirst,
    IndexOutOfRange,
    NonAssociativeTable,
    NotLatinSquare,
    ParseError,
)

GROUP_ORDER_CAP = 24


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication-table group; elements are 0..order-1 and 0 is the identity."""

    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple[str, ...]
    abelian: bool
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        if not (0 <= a < self.order and 0 <= b < self.order):
            raise IndexOutOfRange(f"element index out of range: {(a, b)}")
        return self.table[a][b]

    def inv(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise IndexOutOfRange(f"element index out of range: {a}")
        return self.inverse[a]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_abelian(self) -> bool:
        return self.abelian

    def label(self, a: int) -> str:
        return self.labels[a]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.order})"


def _validated(table, labels, name) -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise EmptyGroup("a group needs at least the identity element")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}")
        if any(x < 0 or x >= n for x in row):
            raise NotLatinSquare(f"row {i} has entries outside [0, {n})")
        rows.append(row)
    tab = tuple(rows)
    full = frozenset(range(n))
    for i in range(n):
        if frozenset(tab[i]) != full:
            raise NotLatinSquare(f"row {i} is not a permutation")
        if frozenset(tab[j][i] for j in range(n)) != full:
            raise NotLatinSquare(f"column {i} is not a permutation")
    if tab[0] != tuple(range(n)) or any(tab[i][0] != i for i in range(n)):
        raise IdentityNotFirst("element 0 must act as the identity")
    for a in range(n):
        ta = tab[a]
        for b in range(n):
            tab_ab = tab[ta[b]]
            tb = tab[b]
            for c in range(n):
                if tab_ab[c] != ta[tb[c]]:
                    raise NonAssociativeTable(
                        f"({a}*{b})*{c} = {tab_ab[c]} but {a}*({b}*{c}) = {ta[tb[c]]}"
                    )
    inverse = tuple(tab[i].index(0) for i in range(n))
    abelian = all(tab[a][b] == tab[b][a] for a in range(n) for b in range(a + 1, n))
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise NotLatinSquare(f"got {len(labels)} labels for {n} elements")
    return FiniteGroup(n, tab, inverse, labels, abelian, name=name)


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    """C_n in additive notation; element i is the class of i."""
    if n < 1:
        raise EmptyGroup(f"cyclic group order must be >= 1, got {n}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return _validated(table, [str(i) for i in range(n)], name or f"C{n}")


def product_group(g1: FiniteGroup, g2: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Direct product with element (a, b) packed as a * |G2| + b."""
    n1, n2 = g1.order, g2.order
    n = n1 * n2

    def enc(a: int, b: int) -> int:
        return a * n2 + b

    table = []
    for a1 in range(n1):
        for b1 in range(n2):
            row = []
            for a2 in range(n1):
                for b2 in range(n2):
                    row.append(enc(g1.table[a1][a2], g2.table[b1][b2]))
            table.append(tuple(row))
    labels = [f"({g1.label(a)},{g2.label(b)})" for a in range(n1) for b in range(n2)]
    return _validated(tuple(table), labels, name or f"{g1.name}x{g2.name}")


def table_group(table, labels=None, name: str = "table") -> FiniteGroup:
    """Group from an explicit multiplication table (validated)."""
    return _validated(tuple(tuple(row) for row in table), labels, name)


def symmetric_group_3() -> FiniteGroup:
    """S3 as an explicit table, composing permutations left-to-right as (p*q)(x) = p(q(x))."""
    perms = [
        (0, 1, 2),
        (1, 0, 2),
        (2, 1, 0),
        (0, 2, 1),
        (1, 2, 0),
        (2, 0, 1),
    ]
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    return table_group(table, labels=["e", "(01)", "(02)", "(12)", "(012)", "(021)"], name="S3")


def make_group(spec: dict, max_order: int = GROUP_ORDER_CAP) -> FiniteGroup:
    """Build a group from a JSON descriptor: cyclic, product, or explicit table."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("group descriptor must be an object with a 'kind'", field="group")
    kind = spec["kind"]
    if kind == "cyclic":
        n = spec.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise ParseError("cyclic group needs an integer 'n'", field="group.n")
        if n < 1:
            raise EmptyGroup(f"cyclic group order must be >= 1, got {n}")
        if n > max_order:
            raise CapacityError("group order", n, max_order)
        return cyclic_group(n)
    if kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ParseError("product group needs a nonempty 'factors' list", field="group.factors")
        groups = [make_group(f, max_order=max_order) for f in factors]
        total = 1
        for g in groups:
            total *= g.order
        if total > max_order:
            raise CapacityError("group order", total, max_order)
        out = groups[0]
        for g in groups[1:]:
            out = product_group(out, g)
        return out
    if kind == "table":
        mul = spec.get("mul")
        if not isinstance(mul, list):
            raise ParseError("table group needs a 'mul' table", field="group.mul")
        if len(mul) > max_order:
            raise CapacityError("group order", len(mul), max_order)
        return table_group(mul, labels=spec.get("labels"), name=spec.get("name", "table"))
    raise ParseError(f"unknown group kind {kind!r}", field="group.kind")


def group_spec_from_name(name: str) -> dict:
    """Parse compact CLI group names: c6, c2xc2, klein, s3."""
    s = name.strip().lower().replace(" ", "")
    if s in ("klein", "v4"):
        s = "c2xc2"
    if s == "s3":
        g = symmetric_group_3()
        return {"kind": "table", "mul": [list(r) for r in g.table], "name": "S3"}
    parts = s.split("x")
    factors = []
    for part in parts:
        if not part.startswith("c") or not part[1:].isdigit():
            raise ParseError(f"unknown group name {name!r}", field="group")
        factors.append({"kind": "cyclic", "n": int(part[1:])})
    if len(factors) == 1:
        return factors[0]
    return {"kind": "product", "factors": factors}
