"""Safe graphs, gadget search and splicing, and the full packing-or-hitting recursion."""
from __future__ import annotations

import itertools
import json
import logging
from importlib import resources
from dataclasses import dataclass, field

from .connectivity import unbreakability
from .duality import (DEFAULT_WORK_BUDGET, DualityCertificate, hitting, packing, verify_hitting,
                      verify_packing)
from .errors import ContractError, InvariantViolation, ScaleError
from .graph import STGraph, Separation, graph_from_doc, graph_to_doc, induced_subgraph, mask_of
from .groups import FiniteGroup, group_from_spec
from .paths import DEFAULT_PATH_BUDGET, GPath, concat, exists_nonnull_path, make_path, subpath
from .type_system import (ANY_S, ANY_T, DEFAULT_R_MAX, PathConstraint, TypeFingerprint, compute_type,
                          solvable_sets, solve_path_system, universe_for, PathSystemProblem)
from .unbreakable import proposition4

log = logging.getLogger(__name__)


def is_safe(g: STGraph, iface=None) -> bool:
    """No non-null S-T path survives deleting the interface."""
    iface = tuple(g.interface if iface is None else iface)
    allowed = g.all_mask & ~mask_of(iface)
    return exists_nonnull_path(g, g.S, g.T, allowed=allowed) is None


def pin_of(g: STGraph, iface) -> tuple:
    """What a replacement must share with the original on the interface:
    source/target status of each interface vertex and the edges among them."""
    pos = {v: i for i, v in enumerate(iface)}
    st = tuple((v in g.S, v in g.T) for v in iface)
    inv = g.group.inverse
    es = []
    for u, v, lab in g.edges:
        if u in pos and v in pos:
            a, b = pos[u], pos[v]
            es.append((a, b, lab) if a < b else (b, a, inv[lab]))
    return st, tuple(sorted(es))


def pin_str(pin) -> str:
    st, es = pin
    flags = "".join(("S" if s else "-") + ("T" if t else "-") for s, t in st)
    return flags + "".join(f"|{a}{b}:{lab}" for a, b, lab in es)


def _label_sets(order):
    out = [()]
    for size in range(1, order + 1):
        out.extend(itertools.combinations(range(order), size))
    return out


def _attached(n, r, edges) -> bool:
    """Every non-interface vertex shares a component with some interface vertex."""
    if n == r:
        return True
    seen = set(range(r))
    nbr = {v: set() for v in range(n)}
    for u, v, _ in edges:
        nbr[u].add(v)
        nbr[v].add(u)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for w in nbr[u] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n


def candidate_graphs(group: FiniteGroup, r: int, pin, n_max: int):
    """Graphs on interface ``u1..ur`` plus extra vertices ``x1..``, in size order.

    The interface's S/T flags and internal edges are fixed by ``pin``.  Every
    extra vertex must be attached to the interface: a component avoiding the
    interface is invisible to every path constraint, so dropping it never
    changes the type.  Isomorphic copies (permuting extra vertices) are skipped.
    """
    st_pin, iface_edges = pin
    inv = group.inverse
    label_sets = _label_sets(group.order)
    for m in range(0, n_max - r + 1):
        if r == 0 and m > 0:
            return
        n = r + m
        names = [f"u{i + 1}" for i in range(r)] + [f"x{j + 1}" for j in range(m)]
        pairs = [(a, b) for b in range(r, n) for a in range(b)]
        seen = set()
        perms = list(itertools.permutations(range(r, n)))
        for flags in itertools.product(range(4), repeat=m):
            for choice in itertools.product(range(len(label_sets)), repeat=len(pairs)):
                chosen = {p: label_sets[c] for p, c in zip(pairs, choice) if c}
                edges = [(a, b, lab) for (a, b), labs in chosen.items() for lab in labs]
                if not _attached(n, r, edges):
                    continue
                key = None
                for perm in perms:
                    mp = list(range(r)) + list(perm)
                    fl = [0] * m
                    for j in range(m):
                        fl[mp[r + j] - r] = flags[j]
                    es = []
                    for a, b, lab in edges:
                        x, y = mp[a], mp[b]
                        es.append((x, y, lab) if x < y else (y, x, inv[lab]))
                    k = (tuple(fl), tuple(sorted(es)))
                    if key is None or k < key:
                        key = k
                if key in seen:
                    continue
                seen.add(key)
                S = [i for i in range(r) if st_pin[i][0]] + [r + j for j in range(m) if flags[j] & 1]
                T = [i for i in range(r) if st_pin[i][1]] + [r + j for j in range(m) if flags[j] & 2]
                yield STGraph(group, names, list(iface_edges) + edges, S, T, tuple(range(r)))


def find_gadget(g: STGraph, iface=None, n_max: int = 4, r_max: int = DEFAULT_R_MAX) -> STGraph | None:
    """Smallest enumerated safe graph with the same type and interface pin as ``g``."""
    iface = tuple(g.interface if iface is None else iface)
    if not is_safe(g, iface):
        raise ContractError("find_gadget needs a safe graph")
    r = len(iface)
    if r > r_max:
        raise ScaleError(f"interface size {r} above r_max={r_max}")
    target = compute_type(g, iface, r_max)
    for cand in candidate_graphs(g.group, r, pin_of(g, iface), n_max):
        if is_safe(cand) and compute_type(cand, cand.interface, r_max) == target:
            return cand
    return None


@dataclass
class GadgetCatalog:
    group: FiniteGroup
    r: int
    n_max: int
    entries: dict = field(default_factory=dict)  # (pin, digest) -> (STGraph, TypeFingerprint)
    candidates_seen: int = 0

    @classmethod
    def build(cls, group: FiniteGroup, r: int, n_max: int, r_max: int = DEFAULT_R_MAX,
              pins=None, progress=None) -> "GadgetCatalog":
        if r > r_max:
            raise ScaleError(f"interface size {r} above r_max={r_max}")
        if pins is None:
            if r > 1:
                raise ScaleError("catalogs for r > 1 need explicit interface pins")
            pins = [(st, ()) for st in itertools.product(itertools.product((False, True), repeat=2),
                                                        repeat=r)]
        cat = cls(group, r, n_max)
        for pin in pins:
            for cand in candidate_graphs(group, r, pin, n_max):
                cat.candidates_seen += 1
                if not is_safe(cand):
                    continue
                fp = compute_type(cand, cand.interface, r_max)
                key = (pin, fp.digest())
                if key not in cat.entries:
                    cat.entries[key] = (cand, fp)
                    if progress:
                        progress(cat)
        return cat

    def h(self) -> int:
        """Largest entry: the empirical gadget-size bound for this interface size."""
        return max((g.n for g, _ in self.entries.values()), default=0)

    def lookup(self, g: STGraph, iface, r_max: int = DEFAULT_R_MAX) -> STGraph:
        fp = compute_type(g, iface, r_max)
        key = (pin_of(g, iface), fp.digest())
        if key not in self.entries:
            raise ScaleError(f"type of a {g.n}-vertex safe side is not in the catalog "
                             f"(r={len(iface)}, n_max={self.n_max})")
        return self.entries[key][0]

    def size_table(self) -> list:
        """Rows (pin, size, count) sorted for a stable summary."""
        counts = {}
        for (pin, _), (g, _) in self.entries.items():
            key = (pin_str(pin), g.n)
            counts[key] = counts.get(key, 0) + 1
        return [(p, n, c) for (p, n), c in sorted(counts.items())]

    def to_json(self) -> dict:
        uni = universe_for(self.group, self.r)
        entries = {}
        for (pin, digest), (g, fp) in self.entries.items():
            entries[f"{pin_str(pin)}:{digest}"] = {
                "pin": {"st": [list(x) for x in pin[0]], "edges": [list(e) for e in pin[1]]},
                "graph": graph_to_doc(g), "fingerprint": fp.to_json()}
        return {"group": self.group.spec, "r": self.r, "n_max": self.n_max,
                "universe_id": uni.universe_id, "h": self.h(), "entries": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, doc) -> "GadgetCatalog":
        group = group_from_spec(doc["group"])
        cat = cls(group, doc["r"], doc["n_max"])
        uni = universe_for(group, cat.r)
        if doc["universe_id"] != uni.universe_id:
            raise ContractError("catalog was built over a different problem universe")
        for e in doc["entries"].values():
            pin = (tuple(tuple(x) for x in e["pin"]["st"]), tuple(tuple(x) for x in e["pin"]["edges"]))
            g = graph_from_doc(e["graph"])
            fp = TypeFingerprint.from_json(e["fingerprint"])
            cat.entries[(pin, fp.digest())] = (g, fp)
        return cat


class CatalogSet:
    """Catalogs for interface sizes ``0..r``; size 0 is the empty graph."""

    def __init__(self, catalogs):
        self.by_r = {c.r: c for c in catalogs}

    @classmethod
    def build(cls, group: FiniteGroup, r_top: int = 1, n_max: int = 3, **kw) -> "CatalogSet":
        return cls([GadgetCatalog.build(group, r, n_max, **kw) for r in range(r_top + 1)])

    def lookup(self, g: STGraph, iface) -> STGraph:
        r = len(iface)
        if r not in self.by_r:
            raise ScaleError(f"no catalog for interface size {r}")
        return self.by_r[r].lookup(g, iface)

    def h_for_k(self, k: int) -> int:
        """Gadget-size bound usable at parameter ``k`` (interfaces below ``k``)."""
        rs = [r for r in self.by_r if r <= k - 1]
        if k - 1 > max(self.by_r, default=-1):
            raise ScaleError(f"catalogs only cover interfaces up to {max(self.by_r)}")
        return max(self.by_r[r].h() for r in rs) if rs else 0

    def ftable(self, k_max: int, sharp: bool = False) -> "FTable":
        return f_recurrence({k: self.h_for_k(k) for k in range(1, k_max + 1)}, k_max, sharp)


BUNDLED_CATALOG = "z2_r1_n4.json"


def bundled_catalogs() -> CatalogSet:
    """The shipped Z2 catalogs: interface size 0 plus size 1 searched up to 4 vertices."""
    doc = json.loads(resources.files(__package__).joinpath("data", BUNDLED_CATALOG).read_text())
    r1 = GadgetCatalog.from_json(doc)
    return CatalogSet([GadgetCatalog.build(r1.group, 0, 0), r1])


@dataclass
class FTable:
    h_of_k: dict
    f_of_k: dict


def f_recurrence(h_of_k: dict, k_max: int, sharp: bool = False) -> FTable:
    """Hitting-set bounds; ``sharp`` splits into ``k - 2`` per side instead of ``k - 1``."""
    f = {0: 0}
    for k in range(1, k_max + 1):
        if k not in h_of_k:
            raise ContractError(f"h({k}) missing")
        f[k] = max(4 * h_of_k[k] + 2 * k - 2, k - 1 + 2 * f[_split_k(k, sharp)])
    return FTable(dict(h_of_k), f)


def _split_k(k: int, sharp: bool) -> int:
    return max(k - 2, 0) if sharp else k - 1


# -- splicing -------------------------------------------------------------------------

@dataclass
class Splice:
    graph: STGraph
    iface: tuple          # interface positions in ``graph``
    extras: dict          # graph vertex -> gadget vertex, for non-interface gadget vertices


def _splice(g: STGraph, sep: Separation, gadget: STGraph, iface=None) -> Splice:
    A, B = frozenset(sep.A), frozenset(sep.B)
    iface = tuple(sorted(A & B)) if iface is None else tuple(iface)
    if set(iface) != A & B:
        raise ContractError("interface must be exactly A & B")
    if len(gadget.interface) != len(iface):
        raise ContractError(f"gadget interface has {len(gadget.interface)} vertices, separator has {len(iface)}")
    a_list = sorted(A)
    names = [g.names[v] for v in a_list]
    idx = {v: i for i, v in enumerate(a_list)}
    taken = set(names)
    gad_to_new = {u: idx[iface[i]] for i, u in enumerate(gadget.interface)}
    extras = {}
    for u in range(gadget.n):
        if u in gad_to_new:
            continue
        name = "~" + gadget.names[u]
        while name in taken:
            name = "~" + name
        taken.add(name)
        gad_to_new[u] = len(names)
        extras[len(names)] = u
        names.append(name)
    if len(set(names)) != len(names):
        raise InvariantViolation("name collision while splicing")
    iface_set = set(iface)
    edges = [(idx[u], idx[v], lab) for u, v, lab in g.edges
             if u in A and v in A and not (u in iface_set and v in iface_set)]
    edges += [(gad_to_new[u], gad_to_new[v], lab) for u, v, lab in gadget.edges]
    S = {idx[v] for v in g.S if v in A} | {gad_to_new[v] for v in gadget.S}
    T = {idx[v] for v in g.T if v in A} | {gad_to_new[v] for v in gadget.T}
    new_iface = tuple(idx[v] for v in iface)
    return Splice(STGraph(g.group, names, edges, S, T, new_iface), new_iface, extras)


def splice(g: STGraph, sep: Separation, gadget: STGraph, iface=None) -> STGraph:
    """``G[A]`` glued to ``gadget`` along the interface ``A & B``.

    Edges among interface vertices come from the gadget only, so a gadget
    pinned to ``G[B]`` reproduces them exactly.
    """
    return _splice(g, sep, gadget, iface).graph


@dataclass
class Lemma6Verdict:
    passed: bool
    preconditions_ok: bool
    reason: str = ""
    before: tuple = ()
    after: tuple = ()
    dump: str | None = None


def verify_lemma6(g: STGraph, sep: Separation, gadget: STGraph, iface=None,
                  r_max: int = DEFAULT_R_MAX) -> Lemma6Verdict:
    """Check that replacing ``G[B]`` by a same-type safe gadget keeps packing and hitting."""
    A, B = frozenset(sep.A), frozenset(sep.B)
    iface = tuple(sorted(A & B)) if iface is None else tuple(iface)
    gb = induced_subgraph(g, B)
    gb = gb.with_st(interface=[gb.index[g.names[v]] for v in iface])
    if not is_safe(gb):
        return Lemma6Verdict(False, False, "the B side minus the interface has a non-null S-T path")
    if not is_safe(gadget):
        return Lemma6Verdict(False, False, "the gadget minus its interface has a non-null S-T path")
    if pin_of(gb, gb.interface) != pin_of(gadget, gadget.interface):
        return Lemma6Verdict(False, False, "gadget disagrees with G[B] on the interface")
    if compute_type(gb, gb.interface, r_max) != compute_type(gadget, gadget.interface, r_max):
        return Lemma6Verdict(False, False, "gadget type differs from type(G[B])")
    g2 = splice(g, sep, gadget, iface)
    before = (packing(g)[0], hitting(g)[0])
    after = (packing(g2)[0], hitting(g2)[0])
    if before == after:
        return Lemma6Verdict(True, True, before=before, after=after)
    dump = json.dumps({"g": graph_to_doc(g), "spliced": graph_to_doc(g2)}, sort_keys=True)
    log.error("splice changed (packing, hitting) from %s to %s:\n%s", before, after, dump)
    return Lemma6Verdict(False, True, "values differ", before, after, dump)


# -- lifting certificates back through a splice -----------------------------------------

def _transfer(src: STGraph, p: GPath, dst: STGraph) -> GPath:
    """The same path in ``dst``, matching vertices by name and arcs by label."""
    verts = [dst.index[src.names[v]] for v in p.vertices]
    arcs = []
    for (a, b), arc in zip(zip(verts, verts[1:]), p.arcs):
        lab = src.arc_label(arc)
        for w, l2, e, fwd in dst.adj[a]:
            if w == b and l2 == lab:
                arcs.append((e, fwd))
                break
        else:
            raise InvariantViolation(f"no matching edge {dst.names[a]}-{dst.names[b]} after transfer")
    return make_path(dst, verts, arcs)


def _lift_hitting(g, sp: Splice, gb: STGraph, gadget: STGraph, Xp) -> frozenset:
    G2 = sp.graph
    xb = [v for v in Xp if v in sp.extras]
    xa = [g.index[G2.names[v]] for v in Xp if v not in sp.extras]
    r = len(sp.iface)
    if len(xb) >= r:
        return frozenset(xa) | frozenset(g.index[G2.names[v]] for v in sp.iface)
    gad_sets = solvable_sets(gadget, gadget.interface)
    target = gad_sets[frozenset(sp.extras[v] for v in xb)]
    for X, m in sorted(solvable_sets(gb, gb.interface).items(), key=lambda t: (len(t[0]), sorted(t[0]))):
        if len(X) <= len(xb) and m & ~target == 0:
            return frozenset(xa) | frozenset(g.index[gb.names[v]] for v in X)
    raise InvariantViolation("no deletion set in G[B] matches the gadget's")


def _lift_packing(g, sp: Splice, gb: STGraph, paths) -> list:
    G2 = sp.graph
    bside = set(sp.iface) | set(sp.extras)
    pos = {v: i for i, v in enumerate(sp.iface)}
    constraints, pairs, layout = [], [], []
    for pi, p in enumerate(paths):
        pieces = []
        i = 0
        vs = p.vertices
        while i < len(vs):
            if vs[i] in bside:
                j = i
                while j + 1 < len(vs) and vs[j + 1] in bside:
                    j += 1
                if any(v in sp.extras for v in vs[i:j + 1]):
                    pieces.append((i, j))
                i = j + 1
            else:
                i += 1
        first = len(constraints)
        for i, j in pieces:
            piece = subpath(G2, p, i, j)
            via = tuple(sorted(pos[v] for v in piece.vertices if v in pos))
            a = pos[vs[i]] if vs[i] in pos else ANY_S
            b = pos[vs[j]] if vs[j] in pos else ANY_T
            constraints.append(PathConstraint(via, a, b, piece.value))
        pairs += [(x, y) for x in range(first, len(constraints)) for y in range(x + 1, len(constraints))]
        layout.append(pieces)
    sol = solve_path_system(gb, gb.interface, PathSystemProblem(tuple(constraints), frozenset(pairs)))
    if sol is None:
        raise InvariantViolation("the B-side pieces cannot be realised in G[B]")
    out = []
    c = 0
    for p, pieces in zip(paths, layout):
        segs = []
        prev = 0
        for i, j in pieces:
            if i > prev or (i == prev and prev == 0 and i > 0):
                segs.append(_transfer(G2, subpath(G2, p, prev, i), g))
            segs.append(_transfer(gb, sol[c], g))
            c += 1
            prev = j
        if not pieces:
            segs.append(_transfer(G2, p, g))
        elif prev < len(p.vertices) - 1:
            segs.append(_transfer(G2, subpath(G2, p, prev, len(p.vertices) - 1), g))
        q = segs[0]
        for s in segs[1:]:
            q = concat(g, q, s)
        out.append(q)
    return out


# -- the recursion ----------------------------------------------------------------------

@dataclass
class TraceStep:
    depth: int
    k: int
    n: int
    branch: str


def theorem1_procedure(g: STGraph, k: int, catalogs: CatalogSet, limit: int = DEFAULT_PATH_BUDGET,
                       work: int = DEFAULT_WORK_BUDGET, trace: list | None = None,
                       sharp: bool = False) -> DualityCertificate:
    """``k`` non-null S-T paths with congestion 2, or a hitting set of size at most ``f(k)``.

    Induction on ``k`` and then on ``|V|``: an unbreakable graph goes to the
    tripod argument; otherwise a small separation either splits off non-null
    paths on both sides (recurse with ``k - 1``) or has a safe side, which is
    swapped for a smaller catalog gadget of the same type (recurse on fewer
    vertices) and the answer lifted back.

    With ``sharp`` the two-sided split recurses with ``k - 2`` and uses the
    other side's path twice, which congestion 2 permits.
    """
    if k < 0:
        raise ContractError("k must be >= 0")
    ft = catalogs.ftable(max(k, 1), sharp)
    trace = [] if trace is None else trace
    cert = _theorem1(g, k, catalogs, ft, trace, 0, limit, work, sharp)
    if cert.kind == "packing":
        ok = len(cert.paths) == k and verify_packing(g, cert.paths)
    else:
        ok = len(cert.hitset) <= ft.f_of_k[k] and verify_hitting(g, cert.hitset)
    if not ok:
        raise InvariantViolation("recursion returned an invalid certificate")
    cert.info = dict(cert.info, f_bound=ft.f_of_k[k], trace=trace)
    return cert


def _theorem1(g, k, catalogs, ft, trace, depth, limit, work, sharp=False) -> DualityCertificate:
    def step(branch):
        trace.append(TraceStep(depth, k, g.n, branch))

    if k == 0:
        step("base-0")
        return DualityCertificate("packing", paths=[])
    if k == 1:
        step("base-1")
        p = exists_nonnull_path(g, g.S, g.T)
        return DualityCertificate("packing", paths=[p]) if p else DualityCertificate("hitting")
    q = ft.h_of_k[k] + 1
    verdict = unbreakability(g, q, k)
    if verdict.unbreakable:
        step("unbreakable")
        return proposition4(g, q, k, limit=limit, check_unbreakable=False)
    A, B = verdict.witness.A, verdict.witness.B
    X = A & B
    ga = induced_subgraph(g, A - B)
    gb_only = induced_subgraph(g, B - A)
    pa = exists_nonnull_path(ga, ga.S, ga.T)
    pb = exists_nonnull_path(gb_only, gb_only.S, gb_only.T)
    if pa and pb:
        step("both-sides")
        sub = {}
        k2 = _split_k(k, sharp)
        for side, h, other_path in (("A", ga, pb), ("B", gb_only, pa)):
            _check_descent(g.n, k, h.n, k2)
            c = _theorem1(h, k2, catalogs, ft, trace, depth + 1, limit, work, sharp)
            if c.kind == "packing":
                other = gb_only if side == "A" else ga
                paths = [_transfer(h, p, g) for p in c.paths] + [_transfer(other, other_path, g)] * (k - k2)
                return DualityCertificate("packing", paths=paths)
            sub[side] = frozenset(g.index[h.names[v]] for v in c.hitset)
        return DualityCertificate("hitting", hitset=frozenset(X) | sub["A"] | sub["B"])
    if pb:
        A, B = B, A
    step("gadget")
    iface = tuple(sorted(X))
    gb = induced_subgraph(g, B)
    gb = gb.with_st(interface=[gb.index[g.names[v]] for v in iface])
    gadget = catalogs.lookup(gb, gb.interface)
    sp = _splice(g, Separation(A, B), gadget, iface)
    _check_descent(g.n, k, sp.graph.n, k)
    c = _theorem1(sp.graph, k, catalogs, ft, trace, depth + 1, limit, work, sharp)
    if c.kind == "packing":
        return DualityCertificate("packing", paths=_lift_packing(g, sp, gb, c.paths))
    return DualityCertificate("hitting", hitset=_lift_hitting(g, sp, gb, gadget, c.hitset))


def _check_descent(n, k, n2, k2):
    if not (k2 < k or (k2 == k and n2 < n)):
        raise InvariantViolation(f"recursion did not descend: ({k}, {n}) -> ({k2}, {n2})")


# -- randomized compositionality audit ------------------------------------------------

def type_pool(group: FiniteGroup, r: int, n_max: int, r_max: int = DEFAULT_R_MAX) -> dict:
    """Every enumerated safe graph, grouped by (interface pin, type digest)."""
    pool = {}
    pins = [(st, ()) for st in itertools.product(itertools.product((False, True), repeat=2), repeat=r)]
    for pin in pins:
        for cand in candidate_graphs(group, r, pin, n_max):
            if is_safe(cand):
                key = (pin, compute_type(cand, cand.interface, r_max).digest())
                pool.setdefault(key, []).append(cand)
    return pool


def random_lemma6_triple(rng, group: FiniteGroup, pools: dict, n_a=(4, 6), n_b=(2, 4),
                         p_edge=0.45, tries: int = 200):
    """A graph glued from a random A side and a random safe B side, a separation,
    and a same-type gadget drawn from the pool; ``None`` if sampling fails."""
    for _ in range(tries):
        r = rng.choice(sorted(pools))
        na = rng.randint(*n_a)
        nb = rng.randint(*n_b)
        n = na + nb - r
        # vertices 0..na-1 form A; the last r of them are the interface; B = interface + the rest
        iface = list(range(na - r, na))
        A = set(range(na))
        B = set(iface) | set(range(na, n))
        edges = []
        for side, skip_iface in ((sorted(A), False), (sorted(B), True)):
            for i, u in enumerate(side):
                for v in side[i + 1:]:
                    if skip_iface and u in iface and v in iface:
                        continue  # interface edges were drawn with A
                    if rng.random() < p_edge:
                        edges.append((u, v, rng.randrange(group.order)))
        S = [v for v in range(n) if rng.random() < 0.35]
        T = [v for v in range(n) if rng.random() < 0.35]
        g = STGraph(group, [f"v{i}" for i in range(n)], edges, S, T)
        gb = induced_subgraph(g, B)
        gb = gb.with_st(interface=[gb.index[g.names[v]] for v in iface])
        if not is_safe(gb):
            continue
        key = (pin_of(gb, gb.interface), compute_type(gb, gb.interface).digest())
        if key not in pools[r]:
            continue
        gadget = rng.choice(pools[r][key])
        return g, Separation(frozenset(A), frozenset(B)), gadget
    return None
