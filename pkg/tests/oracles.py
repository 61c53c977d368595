"""Slow, independent reference implementations used to cross-check the solvers.

Nothing here imports the package's search code: paths come from networkx,
packing from an integer program, everything else from plain enumeration.
"""
import itertools

import networkx as nx
import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def to_nx(g):
    """MultiGraph keyed by edge index; the stored orientation is kept as an attribute."""
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.n))
    for e, (u, v, lab) in enumerate(g.edges):
        G.add_edge(u, v, key=e, tail=u, label=lab)
    return G


def walk_value(g, vertices, edge_ids):
    """Ordered label product, using only the raw table and the stored edge orientation."""
    table = g.group.table
    inv = g.group.inverse
    val = g.group.identity_index
    for a, e in zip(vertices, edge_ids):
        u, v, lab = g.edges[e]
        val = table[val][lab if a == u else inv[lab]]
    return val


def simple_paths(g, frm, to, allowed=None):
    """Every simple frm-to path once per direction as (vertices, edge ids, value)."""
    G = to_nx(g)
    if allowed is not None:
        G = G.subgraph(allowed).copy()
    out = []
    for s in frm:
        if s not in G:
            continue
        for t in to:
            if t not in G:
                continue
            if s == t:
                out.append(((s,), (), g.group.identity_index))
                continue
            for epath in nx.all_simple_edge_paths(G, s, t):
                verts = [s] + [y for _, y, _ in epath]
                # all_simple_edge_paths reports (u, v, key) in travel order
                eids = [k for _, _, k in epath]
                out.append((tuple(verts), tuple(eids), walk_value(g, verts, eids)))
    return out


def undirected_key(vertices, edge_ids):
    a = (tuple(vertices), tuple(edge_ids))
    b = (tuple(reversed(vertices)), tuple(reversed(edge_ids)))
    return min(a, b)


def nonnull_vertex_sets(g, frm=None, to=None, allowed=None):
    frm = g.S if frm is None else frm
    to = g.T if to is None else to
    ident = g.group.identity_index
    return {frozenset(v) for v, _, val in simple_paths(g, frm, to, allowed) if val != ident}


def packing_ilp(vertex_sets, n, congestion=2, multiplicity=2):
    """Largest multiset of the given sets with every vertex covered at most ``congestion`` times."""
    sets = sorted({frozenset(s) for s in vertex_sets}, key=sorted)
    if not sets:
        return 0
    A = np.zeros((n, len(sets)))
    for j, s in enumerate(sets):
        for v in s:
            A[v, j] = 1
    res = milp(c=-np.ones(len(sets)), integrality=np.ones(len(sets)),
               bounds=Bounds(0, multiplicity),
               constraints=LinearConstraint(A, -np.inf, congestion))
    return int(round(-res.fun))


def hitting_brute(g, frm=None, to=None):
    """Smallest vertex set meeting every non-null frm-to path, by subset size."""
    sets = nonnull_vertex_sets(g, frm, to)
    for size in range(g.n + 1):
        for X in itertools.combinations(range(g.n), size):
            Xs = set(X)
            if all(s & Xs for s in sets):
                return size, frozenset(X)
    raise AssertionError("unreachable")


def max_disjoint_paths_ilp(g, frm, to):
    """Maximum number of vertex-disjoint non-null frm-to paths."""
    return packing_ilp(nonnull_vertex_sets(g, frm, to), g.n, congestion=1, multiplicity=1)


def min_vertex_cut_brute(g, X, Y):
    """Fewest vertices (possibly in X or Y) whose removal leaves no X-Y path."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((u, v) for u, v, _ in g.edges)
    X, Y = set(X), set(Y)
    for size in range(g.n + 1):
        for Z in itertools.combinations(range(g.n), size):
            H = G.subgraph(set(range(g.n)) - set(Z))
            alive_x = X - set(Z)
            alive_y = Y - set(Z)
            if not any(nx.has_path(H, x, y) for x in alive_x for y in alive_y):
                return size
    raise AssertionError("unreachable")


def breakable_brute(g, q, k):
    """Is there a separation of order < k with both sides of size >= q?  Tries all 3^n splits."""
    edges = [(u, v) for u, v, _ in g.edges]
    for assign in itertools.product((0, 1, 2), repeat=g.n):  # 0 = A only, 1 = B only, 2 = both
        if sum(1 for a in assign if a == 2) >= k:
            continue
        if any({assign[u], assign[v]} == {0, 1} for u, v in edges):
            continue
        a_size = sum(1 for a in assign if a != 1)
        b_size = sum(1 for a in assign if a != 0)
        if a_size >= q and b_size >= q:
            return True
    return False


def compose_perms(p, q):
    """(p * q)(x) = p(q(x)) on image tuples."""
    return tuple(p[q[x]] for x in range(len(q)))


def count_constraints(order, r):
    """Constraints for interface size r, counted by formula: pick a non-empty via-set V,
    each endpoint is ANY-S, ANY-T or one of V's members, and a value."""
    total = 0
    for size in range(1, r + 1):
        ways_via = len(list(itertools.combinations(range(r), size)))
        total += ways_via * (size + 2) ** 2 * order
    return total
