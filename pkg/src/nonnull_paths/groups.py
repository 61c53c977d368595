"""Finite groups as Cayley tables.

Elements are dense indices into ``elem_names``; the hot paths everywhere else
in the package work on those raw ints via :meth:`FiniteGroup.mul`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import StructuralError, ValidationError

MAX_SYMMETRIC_DEGREE = 5


class FiniteGroup:
    """Immutable finite group given by its composition table."""

    def __init__(self, elem_names: Sequence[str], table: Sequence[Sequence[int]], spec: dict | None = None):
        n = len(elem_names)
        if n == 0:
            raise ValidationError("a group needs at least one element")
        if len(set(elem_names)) != n:
            raise ValidationError("element names must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise ValidationError(f"table must be {n}x{n}")
        for i, row in enumerate(table):
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ValidationError(f"table[{i}][{j}] = {v!r} is not an element index")
        self.order = n
        self.elem_names = tuple(str(e) for e in elem_names)
        self.table = tuple(tuple(row) for row in table)
        self.spec = spec if spec is not None else {"kind": "table", "elems": list(self.elem_names),
                                                   "table": [list(r) for r in self.table]}
        self._index = {name: i for i, name in enumerate(self.elem_names)}
        self.identity_index = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_associative()

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.order)):
                return e
        raise ValidationError("table has no two-sided identity")

    def _find_inverses(self) -> tuple:
        e = self.identity_index
        inv = []
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == e and self.table[b][a] == e:
                    inv.append(b)
                    break
            else:
                raise ValidationError(f"element {self.elem_names[a]!r} has no inverse")
        return tuple(inv)

    def _check_associative(self):
        t = self.table
        rng = range(self.order)
        for a in rng:
            ta = t[a]
            for b in rng:
                tab = t[ta[b]]
                tb = t[b]
                for c in rng:
                    if tab[c] != ta[tb[c]]:
                        names = self.elem_names
                        raise ValidationError(
                            f"not associative at ({names[a]}, {names[b]}, {names[c]})")

    # -- raw index arithmetic -------------------------------------------------

    @property
    def identity(self) -> int:
        return self.identity_index

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index(self, name: str) -> int:
        try:
            return self._index[str(name)]
        except KeyError:
            raise ValidationError(f"unknown group element {name!r}") from None

    def name(self, i: int) -> str:
        return self.elem_names[i]

    # -- element view ---------------------------------------------------------

    def elem(self, i: int | str) -> "GroupElem":
        if isinstance(i, str):
            i = self.index(i)
        if not 0 <= i < self.order:
            raise ValidationError(f"element index {i} out of range")
        return GroupElem(self, i)

    def elements(self):
        return [GroupElem(self, i) for i in range(self.order)]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.elem_names == other.elem_names \
            and self.table == other.table

    def __hash__(self):
        return hash((self.elem_names, self.table))

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, spec={self.spec.get('kind')})"


@dataclass(frozen=True)
class GroupElem:
    group: FiniteGroup
    index: int

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return compose(self, other)

    def __invert__(self) -> "GroupElem":
        return invert(self)

    @property
    def name(self) -> str:
        return self.group.elem_names[self.index]

    def is_identity(self) -> bool:
        return self.index == self.group.identity_index

    def __repr__(self):
        return f"GroupElem({self.name!r})"


def compose(a: GroupElem, b: GroupElem) -> GroupElem:
    if a.group is not b.group and a.group != b.group:
        raise StructuralError("cannot compose elements of different groups")
    return GroupElem(a.group, a.group.table[a.index][b.index])


def invert(a: GroupElem) -> GroupElem:
    return GroupElem(a.group, a.group.inverse[a.index])


# -- constructions -------------------------------------------------------------

def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup([str(i) for i in range(n)], table, spec={"kind": "cyclic", "n": n})


def make_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    names = [f"({a},{b})" for a in g1.elem_names for b in g2.elem_names]
    n2 = g2.order

    def idx(a, b):
        return a * n2 + b

    table = [[idx(g1.table[a1][b1], g2.table[a2][b2])
              for b1 in range(g1.order) for b2 in range(n2)]
             for a1 in range(g1.order) for a2 in range(n2)]
    return FiniteGroup(names, table, spec={"kind": "product", "factors": [g1.spec, g2.spec]})


def make_symmetric(m: int) -> FiniteGroup:
    """Symmetric group on ``m`` points; ``p*q`` is the function ``x -> p[q[x]]``."""
    if not 1 <= m <= MAX_SYMMETRIC_DEGREE:
        raise ValidationError(f"symmetric degree must be in 1..{MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(m))] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(names, table, spec={"kind": "symmetric", "m": m})


def make_from_table(names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    return FiniteGroup(names, table)


def klein_four() -> FiniteGroup:
    return make_product(make_cyclic(2), make_cyclic(2))


def group_from_spec(spec) -> FiniteGroup:
    """Build a group from its JSON description (see the graph file schema)."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("group spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "cyclic":
        n = spec.get("n")
        if not isinstance(n, int):
            raise ValidationError("group.n must be an integer")
        return make_cyclic(n)
    if kind == "symmetric":
        m = spec.get("m")
        if not isinstance(m, int):
            raise ValidationError("group.m must be an integer")
        return make_symmetric(m)
    if kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ValidationError("group.factors must be a non-empty list")
        g = group_from_spec(factors[0])
        for f in factors[1:]:
            g = make_product(g, group_from_spec(f))
        if len(factors) > 1:
            g.spec = {"kind": "product", "factors": list(factors)}
        return g
    if kind == "table":
        elems, table = spec.get("elems"), spec.get("table")
        if not isinstance(elems, list) or not isinstance(table, list):
            raise ValidationError("group.elems and group.table must be lists")
        return make_from_table(elems, table)
    raise ValidationError(f"unknown group kind {kind!r}")
