"""Instance generators: the grid-with-triangles family and random labelled graphs."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .duality import DEFAULT_WORK_BUDGET, disjoint_nonnull_packing, hitting, packing
from .graph import STGraph, mask_of
from .groups import FiniteGroup, make_cyclic
from .paths import DEFAULT_PATH_BUDGET, exists_nonnull_path


def figure1_names(n: int) -> dict:
    """Vertex-name groups of the n-th grid-with-triangles instance."""
    side = 2 * n + 1
    rows = range(0, side, 2)
    return {
        "grid": [f"g{r}_{c}" for r in range(side) for c in range(side)],
        "sources": [f"s{r}" for r in rows],
        "targets": [f"t{r}" for r in rows],
        "apexes": [f"w{c}" for c in range(side - 1)],
        "top_row": [f"g0_{c}" for c in range(side)],
    }


def figure1_counts(n: int) -> tuple:
    """Closed-form (vertex count, edge count) of ``build_figure1(n)``."""
    side = 2 * n + 1
    grid_edges = 2 * side * (side - 1)
    return side * side + 2 * (n + 1) + (side - 1), grid_edges + 2 * (n + 1) + 2 * (side - 1)


def build_figure1(n: int) -> STGraph:
    """(2n+1)x(2n+1) grid over Z/2Z, every arc labelled 1.

    Row 0 is the top side.  Source pendants hang off the left column and
    target pendants off the right column at rows 0, 2, ..., 2n; each top edge
    gets a triangle apex.  An S-T path through the bipartite grid has even
    length, so odd paths must detour through an apex.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    group = make_cyclic(2)
    one = group.index("1")
    side = 2 * n + 1
    names = figure1_names(n)
    order = names["grid"] + names["sources"] + names["targets"] + names["apexes"]
    idx = {name: i for i, name in enumerate(order)}

    def g(r, c):
        return idx[f"g{r}_{c}"]

    edges = []
    for r in range(side):
        for c in range(side):
            if c + 1 < side:
                edges.append((g(r, c), g(r, c + 1), one))
            if r + 1 < side:
                edges.append((g(r, c), g(r + 1, c), one))
    for r in range(0, side, 2):
        edges.append((idx[f"s{r}"], g(r, 0), one))
        edges.append((g(r, side - 1), idx[f"t{r}"], one))
    for c in range(side - 1):
        w = idx[f"w{c}"]
        edges.append((g(0, c), w, one))
        edges.append((w, g(0, c + 1), one))
    S = [idx[x] for x in names["sources"]]
    T = [idx[x] for x in names["targets"]]
    return STGraph(group, order, edges, S, T)


def figure1_n(g: STGraph) -> int:
    """Recover ``n`` from a graph built by :func:`build_figure1`."""
    grid = sum(1 for x in g.names if x.startswith("g"))
    side = int(round(grid ** 0.5))
    if side * side != grid or side % 2 == 0 or side < 3:
        raise ValueError("graph is not a grid-with-triangles instance")
    n = (side - 1) // 2
    if g != build_figure1(n):
        raise ValueError("graph is not a grid-with-triangles instance")
    return n


def random_instance(group: FiniteGroup, n_vertices: int, edge_prob: float,
                    s_frac: float, t_frac: float, seed: int, parallel_prob: float = 0.0) -> STGraph:
    """Seeded random labelled graph.

    Each pair ``u < v`` gets an edge with probability ``edge_prob`` and then
    a further parallel edge with probability ``parallel_prob``; the ``u -> v``
    label is uniform over the group.
    """
    rng = random.Random(seed)
    edges = []
    for u in range(n_vertices):
        for v in range(u + 1, n_vertices):
            if rng.random() < edge_prob:
                edges.append((u, v, rng.randrange(group.order)))
                if rng.random() < parallel_prob:
                    edges.append((u, v, rng.randrange(group.order)))
    S = [v for v in range(n_vertices) if rng.random() < s_frac]
    T = [v for v in range(n_vertices) if rng.random() < t_frac]
    return STGraph(group, [f"v{i}" for i in range(n_vertices)], edges, S, T)


def default_group_zoo() -> list:
    from .groups import klein_four
    return [make_cyclic(2), make_cyclic(3), klein_four()]


@dataclass
class Figure1Report:
    n: int
    vertices: int
    edges: int
    two_disjoint_odd: bool
    hitting: int
    hitset: list
    packing: int | None
    top_row_blocks: bool

    @property
    def passed(self) -> bool:
        return not self.two_disjoint_odd and self.hitting >= self.n and self.top_row_blocks

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def verify_figure1(n: int, limit: int = DEFAULT_PATH_BUDGET, work: int = DEFAULT_WORK_BUDGET,
                   with_packing: bool = True, g: STGraph | None = None) -> Figure1Report:
    """Check the grid-with-triangles claims exactly.

    No two vertex-disjoint odd S-T paths, yet no fewer than ``n`` vertices
    meet every odd S-T path; removing the top row (grid and apexes) leaves
    none at all.  The congestion-2 packing value is reported alongside.
    """
    if g is None:
        g = build_figure1(n)
    fam = disjoint_nonnull_packing(g, g.S, g.T, 2, limit=limit)
    size, cert = hitting(g, work=work)
    pk = packing(g, limit=limit, work=work)[0] if with_packing else None
    names = figure1_names(n)
    top = g.vset(names["top_row"] + names["apexes"])
    survivor = exists_nonnull_path(g, g.S, g.T, allowed=g.all_mask & ~mask_of(top))
    return Figure1Report(n, g.n, len(g.edges), fam is not None, size,
                         sorted(g.names[v] for v in cert.hitset), pk, survivor is None)
