"""Simple paths in group-labelled graphs.

A path is stored as its vertex sequence plus the arcs it uses, where an arc is
``(edge_index, forward)``.  Everything here is exhaustive search: the
simple-path restriction makes dynamic programming over (vertex, value) states
unsound, so the search state always includes the visited set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import BudgetExceeded, StructuralError
from .graph import STGraph, bits, mask_of

DEFAULT_PATH_BUDGET = 10**6


@dataclass(frozen=True)
class GPath:
    vertices: tuple
    arcs: tuple
    value: int

    def __len__(self):
        return len(self.arcs)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def names(self, g: STGraph) -> list:
        return [g.names[v] for v in self.vertices]


def trivial_path(v: int, g: STGraph) -> GPath:
    return GPath((v,), (), g.group.identity)


def path_value(g: STGraph, p: GPath) -> int:
    """Left-to-right product of the arc labels; the identity for a zero-arc path."""
    mul = g.group.table
    x = g.group.identity
    for arc in p.arcs:
        x = mul[x][g.arc_label(arc)]
    return x


def make_path(g: STGraph, vertices, arcs=None) -> GPath:
    """Build a path from a vertex sequence (and optionally explicit arcs).

    Without ``arcs`` the lowest-index edge between consecutive vertices is used.
    """
    vertices = tuple(vertices)
    if not vertices:
        raise StructuralError("a path needs at least one vertex")
    if len(set(vertices)) != len(vertices):
        raise StructuralError("path vertices must be pairwise distinct")
    if arcs is None:
        arcs = []
        for a, b in zip(vertices, vertices[1:]):
            for w, _, e, fwd in g.adj[a]:
                if w == b:
                    arcs.append((e, fwd))
                    break
            else:
                raise StructuralError(f"no edge between {g.names[a]!r} and {g.names[b]!r}")
    arcs = tuple(arcs)
    p = GPath(vertices, arcs, 0)
    check_path(g, p, check_value=False)
    return GPath(vertices, arcs, path_value(g, p))


def check_path(g: STGraph, p: GPath, check_value=True):
    if len(p.arcs) != len(p.vertices) - 1:
        raise StructuralError("arc count must be one less than vertex count")
    if len(set(p.vertices)) != len(p.vertices):
        raise StructuralError("path vertices must be pairwise distinct")
    for i, arc in enumerate(p.arcs):
        if g.arc_ends(arc) != (p.vertices[i], p.vertices[i + 1]):
            raise StructuralError(f"arc {i} does not join consecutive path vertices")
    if check_value and path_value(g, p) != p.value:
        raise StructuralError("stored path value does not match its labels")


def reverse_path(g: STGraph, p: GPath) -> GPath:
    arcs = tuple((e, not fwd) for e, fwd in reversed(p.arcs))
    return GPath(tuple(reversed(p.vertices)), arcs, g.group.inverse[p.value])


def is_nonnull(g: STGraph, p: GPath) -> bool:
    return p.value != g.group.identity


def concat(g: STGraph, p: GPath, q: GPath) -> GPath:
    """Join ``p`` and ``q`` where ``p`` ends at the vertex ``q`` starts from."""
    if p.end != q.start:
        raise StructuralError("paths do not meet end-to-start")
    vs = p.vertices + q.vertices[1:]
    if len(set(vs)) != len(vs):
        raise StructuralError("concatenation is not a simple path")
    return GPath(vs, p.arcs + q.arcs, g.group.table[p.value][q.value])


def subpath(g: STGraph, p: GPath, i: int, j: int) -> GPath:
    """Vertices ``i..j`` of ``p`` (inclusive); reversed if ``j < i``."""
    if i <= j:
        q = GPath(p.vertices[i:j + 1], p.arcs[i:j], 0)
        return GPath(q.vertices, q.arcs, path_value(g, q))
    return reverse_path(g, subpath(g, p, j, i))


def reach_mask(g: STGraph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside ``allowed`` (start always included)."""
    seen = 1 << start
    frontier = seen
    nbr = g.nbr_mask
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= nbr[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def enumerate_paths(g: STGraph, frm: Iterable[int], to: Iterable[int],
                    value_filter: Callable[[int], bool] | None = None,
                    limit: int = DEFAULT_PATH_BUDGET, allowed: int | None = None) -> list:
    """All simple ``frm``-``to`` paths whose value passes ``value_filter``.

    A path and its reversal count once when both orientations run ``frm`` to
    ``to``; the kept orientation starts at the smaller vertex index.  Output is
    lexicographic in the step sequence ``(v1, e1), (v2, e2), ...``, so
    parallel edges are tried in index order at each step.  Raises
    :class:`BudgetExceeded` past ``limit`` paths.
    """
    if limit <= 0:
        raise ValueError("limit must be positive")
    return list(iter_paths(g, frm, to, value_filter, limit, allowed))


def iter_paths(g: STGraph, frm, to, value_filter=None, limit=DEFAULT_PATH_BUDGET, allowed=None):
    """Lazy form of :func:`enumerate_paths`, same order and budget."""
    from_mask = mask_of(frm)
    to_mask = mask_of(to)
    if allowed is None:
        allowed = g.all_mask
    from_mask &= allowed
    to_mask &= allowed
    mul = g.group.table
    adj = g.adj
    ident = g.group.identity
    count = 0
    for s in bits(from_mask):
        if not reach_mask(g, s, allowed) & to_mask:
            continue
        s_in_to = (to_mask >> s) & 1
        vs = [s]
        arcs = []
        stack = [(s, ident, 1 << s, iter(adj[s]))]
        if s_in_to and (value_filter is None or value_filter(ident)):
            count += 1
            if count > limit:
                raise BudgetExceeded("path enumeration", limit)
            yield GPath((s,), (), ident)
        while stack:
            v, x, visited, it = stack[-1]
            for w, lab, e, fwd in it:
                if not (allowed >> w) & 1 or (visited >> w) & 1:
                    continue
                y = mul[x][lab]
                nvis = visited | (1 << w)
                vs.append(w)
                arcs.append((e, fwd))
                if (to_mask >> w) & 1 and (value_filter is None or value_filter(y)):
                    # skip the orientation the reversal already covers
                    if not (s_in_to and (from_mask >> w) & 1 and w < s):
                        count += 1
                        if count > limit:
                            raise BudgetExceeded("path enumeration", limit)
                        yield GPath(tuple(vs), tuple(arcs), y)
                stack.append((w, y, nvis, iter(adj[w])))
                break
            else:
                stack.pop()
                if arcs:
                    vs.pop()
                    arcs.pop()


def _walk_values(g: STGraph, v: int, to_mask: int, allowed: int) -> set:
    """Values of walks from ``v`` to ``to_mask`` inside ``allowed``.

    A superset of the values of simple paths, used as a sound pruning test.
    """
    mul = g.group.table
    start = (v, g.group.identity)
    seen = {start}
    stack = [start]
    out = set()
    adj = g.adj
    while stack:
        u, x = stack.pop()
        if (to_mask >> u) & 1:
            out.add(x)
        for w, lab, _, _ in adj[u]:
            if (allowed >> w) & 1:
                st = (w, mul[x][lab])
                if st not in seen:
                    seen.add(st)
                    stack.append(st)
    return out


def exists_nonnull_path(g: STGraph, frm: Iterable[int], to: Iterable[int],
                        allowed: int | None = None) -> GPath | None:
    """Some non-null simple ``frm``-``to`` path, or ``None``.

    Depth-first over (vertex, value, visited).  A branch is cut when no walk
    from the current vertex to ``to`` avoiding the visited set could make the
    total non-null; walks include all simple paths, so the cut is sound.
    """
    if allowed is None:
        allowed = g.all_mask
    from_mask = mask_of(frm) & allowed
    to_mask = mask_of(to) & allowed
    if not from_mask or not to_mask:
        return None
    mul = g.group.table
    ident = g.group.identity
    adj = g.adj

    def hopeless(v, x, visited):
        residual = (allowed & ~visited) | (1 << v)
        targets = to_mask & residual
        if not targets:
            return True
        ws = _walk_values(g, v, targets, residual)
        return all(mul[x][w] == ident for w in ws)

    for s in bits(from_mask):
        if hopeless(s, ident, 1 << s):
            continue
        vs = [s]
        arcs = []
        stack = [(s, ident, 1 << s, iter(adj[s]))]
        while stack:
            v, x, visited, it = stack[-1]
            for w, lab, e, fwd in it:
                if not (allowed >> w) & 1 or (visited >> w) & 1:
                    continue
                y = mul[x][lab]
                nvis = visited | (1 << w)
                if (to_mask >> w) & 1 and y != ident:
                    return GPath(tuple(vs) + (w,), tuple(arcs) + ((e, fwd),), y)
                if hopeless(w, y, nvis):
                    continue
                vs.append(w)
                arcs.append((e, fwd))
                stack.append((w, y, nvis, iter(adj[w])))
                break
            else:
                stack.pop()
                if arcs:
                    vs.pop()
                    arcs.pop()
    return None


def ensure_inverse_labels(g: STGraph) -> bool:
    """Every arc's reverse carries the inverse label (true by construction)."""
    inv = g.group.inverse
    for e in range(len(g.edges)):
        if g.arc_label((e, False)) != inv[g.arc_label((e, True))]:
            return False
    return True
