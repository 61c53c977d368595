"""Exact packing and hitting numbers for non-null paths, plus certificate checks.

``packing`` is the maximum size of a multiset of non-null S-T paths in which
every vertex lies on at most two members; ``hitting`` is the minimum number of
vertices meeting every non-null S-T path.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, InvariantViolation
from .graph import STGraph, bits, mask_of, save_graph
from .paths import DEFAULT_PATH_BUDGET, GPath, check_path, exists_nonnull_path, iter_paths

log = logging.getLogger(__name__)

DEFAULT_WORK_BUDGET = 5 * 10**7


@dataclass
class DualityCertificate:
    kind: str  # "packing" | "hitting"
    paths: list = field(default_factory=list)
    hitset: frozenset = frozenset()
    info: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.paths) if self.kind == "packing" else len(self.hitset)

    def to_json(self, g: STGraph) -> dict:
        if self.kind == "packing":
            return {"kind": "packing", "paths": [p.names(g) for p in self.paths]}
        return {"kind": "hitting", "hitset": sorted(g.names[v] for v in self.hitset)}


def verify_packing(g: STGraph, paths, frm=None, to=None, congestion: int = 2) -> bool:
    """Every member is a non-null frm-to path and no vertex is overused."""
    frm = g.S if frm is None else frozenset(frm)
    to = g.T if to is None else frozenset(to)
    load = [0] * g.n
    for p in paths:
        try:
            check_path(g, p)
        except Exception:
            return False
        if p.value == g.group.identity:
            return False
        a, b = p.start, p.end
        if not ((a in frm and b in to) or (b in frm and a in to)):
            return False
        for v in p.vertices:
            load[v] += 1
            if load[v] > congestion:
                return False
    return True


def verify_hitting(g: STGraph, hitset, frm=None, to=None) -> bool:
    frm = g.S if frm is None else frm
    to = g.T if to is None else to
    return exists_nonnull_path(g, frm, to, allowed=g.all_mask & ~mask_of(hitset)) is None


def verify_certificate(g: STGraph, cert: DualityCertificate, frm=None, to=None) -> bool:
    if cert.kind == "packing":
        return verify_packing(g, cert.paths, frm, to)
    if cert.kind == "hitting":
        return verify_hitting(g, cert.hitset, frm, to)
    return False


def minimal_paths(paths) -> list:
    """Keep one path per inclusion-minimal vertex set.

    Swapping a path for one on a subset of its vertices never breaks a
    congestion bound, and meeting the smaller path meets the larger one, so
    both optimisation problems may be solved on this reduced list.
    """
    by_mask = {}
    for p in paths:
        m = p.mask
        if m not in by_mask:
            by_mask[m] = p
    masks = sorted(by_mask, key=lambda m: (bin(m).count("1"), m))
    if not masks:
        return []
    big = max(masks).bit_length() > 62
    kept = []
    kept_arr = np.zeros(len(masks), dtype=np.int64)
    nk = 0
    for m in masks:
        if big:
            dominated = any(k & m == k for k in kept)
        else:
            arr = kept_arr[:nk]
            dominated = nk > 0 and bool(np.any((arr & m) == arr))
        if not dominated:
            kept.append(m)
            if not big:
                kept_arr[nk] = m
                nk += 1
    return [by_mask[m] for m in kept]


def nonnull_paths(g: STGraph, frm=None, to=None, limit=DEFAULT_PATH_BUDGET, allowed=None) -> list:
    frm = g.S if frm is None else frm
    to = g.T if to is None else to
    ident = g.group.identity
    return list(iter_paths(g, frm, to, lambda x: x != ident, limit, allowed))


def _canonical_key(p: GPath):
    return (p.vertices, tuple(e for e, _ in p.arcs))


def packing(g: STGraph, limit: int = DEFAULT_PATH_BUDGET, work: int = DEFAULT_WORK_BUDGET,
            reduce: bool = True, hitting_bound: bool = True):
    """Exact congestion-2 packing number with a witness multiset.

    Branch-and-bound over the non-null S-T path list, longest paths first.
    A node's bound is the residual capacity left on the sources (and on the
    targets) reachable by the remaining candidates: every path spends at
    least one unit of each.  With ``hitting_bound`` the search also stops
    once it reaches twice the hitting number, since each path of a packing
    holds a hitting vertex and each vertex serves at most two paths.
    """
    paths = nonnull_paths(g, limit=limit)
    if reduce:
        paths = minimal_paths(paths)
    paths.sort(key=lambda p: (-len(p.vertices), _canonical_key(p)))
    masks = [p.mask for p in paths]
    m = len(masks)
    S_mask, T_mask = g.S_mask, g.T_mask

    def cap(mask, full1, full2):
        return 2 * bin(mask).count("1") - bin(mask & full1).count("1") - 2 * bin(mask & full2).count("1")

    best = [0, []]
    chosen = []
    state = [0, 0]  # vertices used once, used twice
    nodes = [0]
    union = 0
    for mk in masks:
        union |= mk
    root_ub = min(cap(S_mask & union, 0, 0), cap(T_mask & union, 0, 0))
    if hitting_bound and masks:
        root_ub = min(root_ub, 2 * hitting(g, work=work)[0])

    def rec(start, count):
        nodes[0] += 1
        if nodes[0] > work:
            raise BudgetExceeded("packing branch-and-bound", work)
        full1, full2 = state
        if count > best[0]:
            best[0] = count
            best[1] = list(chosen)
        cands = [j for j in range(start, m) if not masks[j] & full2]
        if not cands:
            return
        suffix = [0] * (len(cands) + 1)
        for i in range(len(cands) - 1, -1, -1):
            suffix[i] = suffix[i + 1] | masks[cands[i]]
        for i, j in enumerate(cands):
            U = suffix[i]
            ub = min(cap(S_mask & U, full1, full2), cap(T_mask & U, full1, full2))
            if count + ub <= best[0]:
                return
            mj = masks[j]
            state[1] = full2 | (mj & full1)
            state[0] = (full1 & ~mj) | (mj & ~full1)
            chosen.append(j)
            rec(j, count + 1)
            chosen.pop()
            state[0], state[1] = full1, full2
            if best[0] >= root_ub:
                return

    rec(0, 0)
    witness = [paths[j] for j in best[1]]
    return best[0], DualityCertificate("packing", paths=witness)


def find_packing(g: STGraph, k: int, limit: int = DEFAULT_PATH_BUDGET, work: int = DEFAULT_WORK_BUDGET):
    """A congestion-2 family of ``k`` non-null S-T paths, or ``None``."""
    if k <= 0:
        return []
    paths = minimal_paths(nonnull_paths(g, limit=limit))
    paths.sort(key=lambda p: (len(p.vertices), _canonical_key(p)))
    masks = [p.mask for p in paths]
    m = len(masks)
    chosen = []
    nodes = [0]

    def rec(start, full1, full2):
        if len(chosen) == k:
            return True
        nodes[0] += 1
        if nodes[0] > work:
            raise BudgetExceeded("packing search", work)
        for j in range(start, m):
            mj = masks[j]
            if mj & full2:
                continue
            chosen.append(j)
            if rec(j, (full1 & ~mj) | (mj & ~full1), full2 | (mj & full1)):
                return True
            chosen.pop()
        return False

    if rec(0, 0, 0):
        return [paths[j] for j in chosen]
    return None


def hitting(g: STGraph, frm=None, to=None, allowed: int | None = None,
            max_size: int | None = None, work: int = DEFAULT_WORK_BUDGET):
    """Exact minimum vertex set meeting every non-null frm-to path.

    Iterative deepening on the size; each level branches on the vertices of
    a surviving path.  Vertices already rejected in a sibling branch are
    never re-tried.  Returns ``(size, certificate)``; with ``max_size`` set
    and no solution that small, returns ``(None, None)``.
    """
    frm = g.S if frm is None else frozenset(frm)
    to = g.T if to is None else frozenset(to)
    if allowed is None:
        allowed = g.all_mask
    upper = min(bin(mask_of(frm) & allowed).count("1"), bin(mask_of(to) & allowed).count("1"))
    top = upper if max_size is None else min(upper, max_size)
    nodes = [0]

    def search(X, forbidden, budget):
        nodes[0] += 1
        if nodes[0] > work:
            raise BudgetExceeded("hitting search", work)
        p = exists_nonnull_path(g, frm, to, allowed=allowed & ~X)
        if p is None:
            return X
        if budget == 0:
            return None
        local_forbidden = forbidden
        for v in p.vertices:
            if (local_forbidden >> v) & 1:
                continue
            found = search(X | (1 << v), local_forbidden, budget - 1)
            if found is not None:
                return found
            local_forbidden |= 1 << v
        return None

    for size in range(top + 1):
        X = search(0, 0, size)
        if X is not None:
            hs = frozenset(bits(X))
            return len(hs), DualityCertificate("hitting", hitset=hs)
    if max_size is not None and max_size < upper:
        return None, None
    raise InvariantViolation("no hitting set found up to the trivial bound")


def disjoint_nonnull_packing(g: STGraph, frm, to, k: int, limit: int = DEFAULT_PATH_BUDGET,
                             allowed: int | None = None):
    """``k`` pairwise vertex-disjoint non-null frm-to paths, or ``None``.

    Backtracking in canonical path order; later paths must start at a larger
    vertex than earlier ones (disjoint paths have distinct starts).
    """
    if allowed is None:
        allowed = g.all_mask
    frm_mask = mask_of(frm)
    to_list = list(to)
    ident = g.group.identity
    failed = set()

    def rec(allowed, from_mask, k):
        if k == 0:
            return []
        if bin(allowed).count("1") < 2 * k or not from_mask & allowed:
            return None
        if k == 1:
            p = exists_nonnull_path(g, bits(from_mask), to_list, allowed=allowed)
            return None if p is None else [p]
        key = (allowed, from_mask, k)
        if key in failed:
            return None
        for p in iter_paths(g, bits(from_mask), to_list, lambda x: x != ident, limit, allowed):
            later = from_mask & ~((1 << (p.start + 1)) - 1)
            rest = rec(allowed & ~p.mask, later, k - 1)
            if rest is not None:
                return [p] + rest
        failed.add(key)
        return None

    if k <= 0:
        return []
    return rec(allowed, frm_mask & allowed, k)


@dataclass
class Theorem3Verdict:
    passed: bool
    branch: str  # "packing" | "hitting" | "fail"
    k: int
    paths: list = field(default_factory=list)
    hitset: frozenset = frozenset()
    hitting_value: int | None = None
    dump: str | None = None


def check_theorem3(g: STGraph, R, k: int, limit: int = DEFAULT_PATH_BUDGET) -> Theorem3Verdict:
    """Either ``k`` disjoint non-null R-R paths or a hitting set of size <= 2k-2."""
    R = frozenset(R)
    fam = disjoint_nonnull_packing(g, R, R, k, limit=limit)
    if fam is not None:
        ok = len(fam) == k and verify_packing(g, fam, R, R, congestion=1)
        return Theorem3Verdict(ok, "packing" if ok else "fail", k, paths=fam)
    bound = max(2 * k - 2, 0)
    size, cert = hitting(g, R, R)
    if size <= bound and verify_hitting(g, cert.hitset, R, R):
        return Theorem3Verdict(True, "hitting", k, hitset=cert.hitset, hitting_value=size)
    dump = save_graph(g).decode()
    log.error("disjoint-paths-or-hitting check failed (k=%d, hitting=%d); instance:\n%s", k, size, dump)
    return Theorem3Verdict(False, "fail", k, hitset=cert.hitset, hitting_value=size, dump=dump)


@dataclass
class Theorem1Verdict:
    passed: bool
    packing_at_least_k: bool
    hitting_value: int | None
    witness: DualityCertificate | None


def check_theorem1(g: STGraph, k: int, f_bound: int, limit: int = DEFAULT_PATH_BUDGET,
                   work: int = DEFAULT_WORK_BUDGET) -> Theorem1Verdict:
    """True iff packing(g) >= k or hitting(g) <= f_bound."""
    fam = find_packing(g, k, limit=limit, work=work)
    if fam is not None:
        return Theorem1Verdict(True, True, None, DualityCertificate("packing", paths=fam))
    size, cert = hitting(g, work=work)
    return Theorem1Verdict(size <= f_bound, False, size, cert)


def min_f_bound(g: STGraph, k: int, **kw) -> int:
    """Smallest ``f_bound`` for which :func:`check_theorem1` passes."""
    v = check_theorem1(g, k, 0, **kw)
    return 0 if v.packing_at_least_k else v.hitting_value
