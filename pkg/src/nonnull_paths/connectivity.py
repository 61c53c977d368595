"""Vertex-disjoint linkages and (q, k)-unbreakability."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceeded, ContractError
from .graph import STGraph, Separation, bits, mask_of
from .paths import make_path


@dataclass
class LinkageResult:
    count: int
    paths: list = field(default_factory=list)
    cut: frozenset = frozenset()


class _FlowNet:
    """Residual network with adjacency lists of arc ids; arc ``i ^ 1`` is the reverse."""

    def __init__(self, n_nodes):
        self.head = []
        self.cap = []
        self.tag = []
        self.out = [[] for _ in range(n_nodes)]

    def add(self, u, v, c, tag=None):
        self.out[u].append(len(self.head))
        self.head.append(v)
        self.cap.append(c)
        self.tag.append(tag)
        self.out[v].append(len(self.head))
        self.head.append(u)
        self.cap.append(0)
        self.tag.append(None)

    def augment(self, s, t) -> bool:
        prev = {s: None}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for a in self.out[u]:
                v = self.head[a]
                if self.cap[a] > 0 and v not in prev:
                    prev[v] = a
                    if v == t:
                        while prev[v] is not None:
                            a = prev[v]
                            self.cap[a] -= 1
                            self.cap[a ^ 1] += 1
                            v = self.head[a ^ 1]
                        return True
                    dq.append(v)
        return False

    def reachable(self, s) -> set:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for a in self.out[u]:
                v = self.head[a]
                if self.cap[a] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def max_disjoint_linkage(g: STGraph, X, Y, allowed: int | None = None) -> LinkageResult:
    """Maximum family of vertex-disjoint X-Y paths and a matching minimum vertex cut.

    Every vertex ``v`` becomes ``v_in -> v_out`` with capacity 1; edges become
    wide arcs ``u_out -> v_in`` both ways, so a minimum cut only ever uses
    vertex arcs.  A vertex of ``X & Y`` is a zero-length path.
    """
    if allowed is None:
        allowed = g.all_mask
    X = [v for v in sorted(set(X)) if (allowed >> v) & 1]
    Y = [v for v in sorted(set(Y)) if (allowed >> v) & 1]
    n = g.n
    wide = n + 1
    src, snk = 2 * n, 2 * n + 1
    net = _FlowNet(2 * n + 2)
    for v in bits(allowed):
        net.add(2 * v, 2 * v + 1, 1)
    for e, (u, v, _) in enumerate(g.edges):
        if (allowed >> u) & 1 and (allowed >> v) & 1:
            net.add(2 * u + 1, 2 * v, wide, tag=(e, True))
            net.add(2 * v + 1, 2 * u, wide, tag=(e, False))
    for x in X:
        net.add(src, 2 * x, wide)
    for y in Y:
        net.add(2 * y + 1, snk, wide)
    count = 0
    while net.augment(src, snk):
        count += 1

    # decompose: each vertex carries at most one unit, so following flow never merges
    paths = []
    flow_next = {}
    for u in range(2 * n + 2):
        for a in net.out[u]:
            if a % 2 == 0 and net.cap[a ^ 1] > 0:
                flow_next.setdefault(u, []).append(a)
    for a0 in flow_next.get(src, []):
        v = net.head[a0]
        verts = [v // 2]
        arcs = []
        node = v
        while True:
            node = node + 1  # v_in -> v_out
            step = [a for a in flow_next.get(node, [])]
            a = step[0]
            nxt = net.head[a]
            if nxt == snk:
                break
            arcs.append(net.tag[a])
            verts.append(nxt // 2)
            node = nxt
        paths.append(make_path(g, verts, arcs))
    paths.sort(key=lambda p: p.vertices)

    reach = net.reachable(src)
    cut = frozenset(v for v in bits(allowed) if 2 * v in reach and 2 * v + 1 not in reach)
    return LinkageResult(count, paths, cut)


@dataclass
class UnbreakabilityVerdict:
    unbreakable: bool
    witness: Separation | None = None


def components(g: STGraph, allowed: int) -> list:
    """Connected components (as bitmasks) of the subgraph on ``allowed``, by least vertex."""
    out = []
    rest = allowed
    nbr = g.nbr_mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= nbr[v]
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def _split(sizes, need_each, total):
    """Indices of a sub-collection with sum in [need_each, total - need_each], or None."""
    lo = max(need_each, 0)
    hi = total - lo
    if lo > hi:
        return None
    reach = {0: None}
    for i, s in enumerate(sizes):
        for acc in sorted(reach):
            if acc + s not in reach:
                reach[acc + s] = (acc, i)
    for target in sorted(reach):
        if lo <= target <= hi:
            chosen = []
            cur = target
            while reach[cur] is not None:
                prev, i = reach[cur]
                chosen.append(i)
                cur = prev
            return sorted(chosen)
    return None


def unbreakability(g: STGraph, q: int, k: int, work: int = 10**6) -> UnbreakabilityVerdict:
    """Decide (q, k)-unbreakability exactly.

    Any separation (A, B) has ``X = A & B`` and splits the components of
    ``G - X`` between the two sides, so it suffices to try every ``X`` with
    ``|X| < k`` and ask whether the component sizes can be divided so each
    side reaches ``q``.  Separators are tried by size, then lexicographically.
    """
    if k < 1:
        raise ContractError("k must be >= 1")
    n = g.n
    tried = 0
    for size in range(0, min(k - 1, n) + 1):
        for X in itertools.combinations(range(n), size):
            tried += 1
            if tried > work:
                raise BudgetExceeded("unbreakability separators", work)
            xm = mask_of(X)
            comps = components(g, g.all_mask & ~xm)
            sizes = [bin(c).count("1") for c in comps]
            pick = _split(sizes, q - size, n - size)
            if pick is None:
                continue
            side = 0
            for i in pick:
                side |= comps[i]
            A = frozenset(bits(side | xm))
            B = frozenset(bits((g.all_mask & ~side) | xm))
            return UnbreakabilityVerdict(False, Separation(A, B))
    return UnbreakabilityVerdict(True, None)
