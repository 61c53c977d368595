"""Group-labelled ST-graphs.

Vertices are dense integers ``0..n-1`` carrying string names.  Each stored
edge ``(u, v, label)`` fixes the label of the arc ``u -> v``; the reverse arc
is labelled with the inverse and is never stored, so the two orientations can
not disagree.  Vertex subsets are ``frozenset[int]`` at the API boundary and
int bitmasks inside the solvers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import StructuralError, ValidationError
from .groups import FiniteGroup, group_from_spec


def mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class STGraph:
    """Immutable group-labelled multigraph with sources, targets and interface."""

    def __init__(self, group: FiniteGroup, names: Sequence[str], edges: Sequence[tuple],
                 S: Iterable[int] = (), T: Iterable[int] = (), interface: Sequence[int] = ()):
        self.group = group
        self.names = tuple(str(x) for x in names)
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValidationError("vertex names must be distinct")
        self.n = n
        self.index = {name: i for i, name in enumerate(self.names)}
        es = []
        for i, (u, v, lab) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge {i} references a missing vertex")
            if u == v:
                raise ValidationError(f"edge {i} is a self-loop at {self.names[u]!r}")
            if not 0 <= lab < group.order:
                raise ValidationError(f"edge {i} label index {lab} out of range")
            es.append((u, v, lab))
        self.edges = tuple(es)
        self.S = frozenset(S)
        self.T = frozenset(T)
        self.interface = tuple(interface)
        for name, part in (("S", self.S), ("T", self.T), ("interface", self.interface)):
            for v in part:
                if not 0 <= v < n:
                    raise StructuralError(f"{name} references a missing vertex {v}")
        if len(set(self.interface)) != len(self.interface):
            raise ValidationError("interface vertices must be distinct")
        self.S_mask = mask_of(self.S)
        self.T_mask = mask_of(self.T)
        self.all_mask = (1 << n) - 1
        inv = group.inverse
        adj = [[] for _ in range(n)]
        for i, (u, v, lab) in enumerate(self.edges):
            adj[u].append((v, lab, i, True))
            adj[v].append((u, inv[lab], i, False))
        for lst in adj:
            lst.sort(key=lambda t: (t[0], t[2]))
        self.adj = tuple(tuple(lst) for lst in adj)
        self.nbr_mask = tuple(mask_of(w for w, _, _, _ in lst) for lst in self.adj)

    # -- arcs -------------------------------------------------------------------

    def arc_label(self, arc) -> int:
        """Label of arc ``(edge_index, forward)``."""
        e, fwd = arc
        lab = self.edges[e][2]
        return lab if fwd else self.group.inverse[lab]

    def arc_ends(self, arc) -> tuple:
        e, fwd = arc
        u, v, _ = self.edges[e]
        return (u, v) if fwd else (v, u)

    def arcs(self):
        for e in range(len(self.edges)):
            yield (e, True)
            yield (e, False)

    # -- helpers ----------------------------------------------------------------

    def vset(self, names: Iterable[str]) -> frozenset:
        out = set()
        for x in names:
            if x not in self.index:
                raise StructuralError(f"unknown vertex {x!r}")
            out.add(self.index[x])
        return frozenset(out)

    def vertices(self) -> range:
        return range(self.n)

    def with_st(self, S=None, T=None, interface=None) -> "STGraph":
        return STGraph(self.group, self.names, self.edges,
                       self.S if S is None else S, self.T if T is None else T,
                       self.interface if interface is None else interface)

    def canonical(self):
        """Name-based form used for equality: independent of vertex order."""
        inv = self.group.inverse
        es = []
        for u, v, lab in self.edges:
            a, b = self.names[u], self.names[v]
            es.append((a, b, lab) if a <= b else (b, a, inv[lab]))
        return (self.group, frozenset(self.names), tuple(sorted(es)),
                frozenset(self.names[v] for v in self.S),
                frozenset(self.names[v] for v in self.T))

    def __eq__(self, other):
        return isinstance(other, STGraph) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"STGraph(n={self.n}, m={len(self.edges)}, |S|={len(self.S)}, |T|={len(self.T)})"


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    def swapped(self) -> "Separation":
        return Separation(self.B, self.A)


def induced_subgraph(g: STGraph, A: Iterable[int]) -> STGraph:
    keep = sorted(set(A))
    for v in keep:
        if not 0 <= v < g.n:
            raise StructuralError(f"unknown vertex {v} in induced_subgraph")
    new = {old: i for i, old in enumerate(keep)}
    edges = [(new[u], new[v], lab) for u, v, lab in g.edges if u in new and v in new]
    return STGraph(g.group, [g.names[v] for v in keep], edges,
                   [new[v] for v in g.S if v in new], [new[v] for v in g.T if v in new],
                   [new[v] for v in g.interface if v in new])


def delete_vertices(g: STGraph, X: Iterable[int]) -> STGraph:
    X = set(X)
    return induced_subgraph(g, [v for v in range(g.n) if v not in X])


def is_separation(g: STGraph, A: Iterable[int], B: Iterable[int]) -> bool:
    A, B = frozenset(A), frozenset(B)
    if len(A | B) != g.n or any(not 0 <= v < g.n for v in A | B):
        return False
    a_only, b_only = A - B, B - A
    for u, v, _ in g.edges:
        if (u in a_only and v in b_only) or (u in b_only and v in a_only):
            return False
    return True


# -- serialization ---------------------------------------------------------------

def graph_to_doc(g: STGraph) -> dict:
    doc = {
        "group": g.group.spec,
        "vertices": list(g.names),
        "S": [g.names[v] for v in sorted(g.S)],
        "T": [g.names[v] for v in sorted(g.T)],
        "edges": [{"u": g.names[u], "v": g.names[v], "label": g.group.name(lab)}
                  for u, v, lab in g.edges],
    }
    if g.interface:
        doc["interface"] = [g.names[v] for v in g.interface]
    return doc


def save_graph(g: STGraph) -> bytes:
    return (json.dumps(graph_to_doc(g), sort_keys=True, indent=2) + "\n").encode()


def _expect_list(doc, key, where):
    val = doc.get(key, [])
    if not isinstance(val, list):
        raise ValidationError(f"{where}{key}: expected a list")
    return val


def graph_from_doc(doc) -> STGraph:
    if not isinstance(doc, dict):
        raise ValidationError("$: expected an object")
    if "group" not in doc:
        raise ValidationError("$.group: missing")
    try:
        group = group_from_spec(doc["group"])
    except ValidationError as exc:
        raise ValidationError(f"$.group: {exc}") from None
    vertices = _expect_list(doc, "vertices", "$.")
    names = []
    for i, v in enumerate(vertices):
        if not isinstance(v, str):
            raise ValidationError(f"$.vertices[{i}]: vertex ids must be strings")
        names.append(v)
    if len(set(names)) != len(names):
        raise ValidationError("$.vertices: duplicate vertex id")
    index = {v: i for i, v in enumerate(names)}

    def lookup(name, where):
        if name not in index:
            raise ValidationError(f"{where}: unknown vertex {name!r}")
        return index[name]

    S = [lookup(x, f"$.S[{i}]") for i, x in enumerate(_expect_list(doc, "S", "$."))]
    T = [lookup(x, f"$.T[{i}]") for i, x in enumerate(_expect_list(doc, "T", "$."))]
    iface = [lookup(x, f"$.interface[{i}]") for i, x in enumerate(_expect_list(doc, "interface", "$."))]
    edges = []
    for i, e in enumerate(_expect_list(doc, "edges", "$.")):
        where = f"$.edges[{i}]"
        if not isinstance(e, dict):
            raise ValidationError(f"{where}: expected an object")
        for key in ("u", "v", "label"):
            if key not in e:
                raise ValidationError(f"{where}.{key}: missing")
        u, v = lookup(e["u"], f"{where}.u"), lookup(e["v"], f"{where}.v")
        if u == v:
            raise ValidationError(f"{where}: self-loops are not allowed")
        try:
            lab = group.index(str(e["label"]))
        except ValidationError:
            raise ValidationError(f"{where}.label: {e['label']!r} is not an element of the group") from None
        edges.append((u, v, lab))
    try:
        return STGraph(group, names, edges, S, T, iface)
    except ValidationError as exc:
        raise ValidationError(f"$: {exc}") from None


def load_graph(data: bytes | str) -> STGraph:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    return graph_from_doc(doc)


def to_dot(g: STGraph, paths: Sequence = (), hitset: Iterable[int] = ()) -> str:
    """Graphviz rendering; certificate paths get colours, hit vertices are filled."""
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
    hit = set(hitset)
    on_path = {}
    for i, p in enumerate(paths):
        for e, _ in p.arcs:
            on_path.setdefault(e, []).append(palette[i % len(palette)])
    iface = set(g.interface)
    lines = ["graph G {"]
    for v in range(g.n):
        attrs = []
        if v in iface:
            attrs.append("shape=doublecircle")
        elif v in g.S:
            attrs.append("shape=box")
        elif v in g.T:
            attrs.append("shape=diamond")
        if v in g.S and v in g.T:
            attrs.append('xlabel="S,T"')
        if v in hit:
            attrs.append("style=filled fillcolor=gray")
        lines.append(f'  "{g.names[v]}" [{" ".join(attrs)}];' if attrs else f'  "{g.names[v]}";')
    for i, (u, v, lab) in enumerate(g.edges):
        attrs = [f'label="{g.group.name(lab)}"', "dir=forward"]
        if i in on_path:
            attrs.append(f'color="{":".join(on_path[i])}" penwidth=2')
        lines.append(f'  "{g.names[u]}" -- "{g.names[v]}" [{" ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
