"""Packing-or-hitting for (q, k)-unbreakable graphs via tripods."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .connectivity import max_disjoint_linkage, unbreakability
from .duality import (DualityCertificate, disjoint_nonnull_packing, hitting, verify_hitting,
                      verify_packing)
from .errors import ContractError, InvariantViolation
from .graph import STGraph
from .paths import DEFAULT_PATH_BUDGET, GPath, concat, reverse_path, subpath


@dataclass(frozen=True)
class Tripod:
    """Non-null path ``P`` between two sources, plus a path ``Q`` from a vertex
    ``c`` of ``P`` to a target, meeting ``P`` only in ``c``.

    ``A_leg``/``B_leg`` run from the two ends of ``P`` to ``c``.
    """
    P: GPath
    Q: GPath
    c: int
    A_leg: GPath
    B_leg: GPath


def make_tripod(g: STGraph, P: GPath, Q: GPath) -> Tripod:
    c = Q.start
    if c not in P.vertices:
        raise ContractError("Q must start on P")
    if set(P.vertices) & set(Q.vertices) != {c}:
        raise ContractError("P and Q may only share the center")
    i = P.vertices.index(c)
    return Tripod(P, Q, c, subpath(g, P, 0, i), subpath(g, P, len(P.vertices) - 1, i))


def claim1_extract(g: STGraph, t: Tripod) -> GPath:
    """A non-null path from an end of ``P`` through ``c`` and down ``Q``.

    ``value(A+Q) = value(A)value(Q)`` and ``value(B+Q) = value(B)value(Q)``
    differ because ``value(P) = value(A)value(B)^-1`` is not the identity, so
    at most one of them is null.
    """
    ident = g.group.identity
    for leg in (t.A_leg, t.B_leg):
        p = concat(g, leg, t.Q)
        if p.value != ident:
            return p
    raise InvariantViolation("both tripod paths are null; P was not non-null")


def tripod_congestion_check(ts) -> bool:
    load = Counter()
    for t in ts:
        for v in set(t.P.vertices) | set(t.Q.vertices):
            load[v] += 1
    return all(c <= 2 for c in load.values())


def _is_between(p: GPath, A, B) -> bool:
    return (p.start in A and p.end in B) or (p.start in B and p.end in A)


def proposition4(g: STGraph, q: int, k: int, limit: int = DEFAULT_PATH_BUDGET,
                 check_unbreakable: bool = True) -> DualityCertificate:
    """Either ``k`` non-null S-T paths with congestion 2, or a hitting set of
    size at most ``4q + 2k - 6``, for a (q, k)-unbreakable graph.

    Exact search stands in for the disjoint-paths-or-small-hitting-set
    dichotomy on R = S | T.  The returned certificate's ``info`` records
    which branch produced it.
    """
    if q < 1 or k < 1:
        raise ContractError("q and k must be >= 1")
    if check_unbreakable and not unbreakability(g, q, k).unbreakable:
        raise ContractError(f"graph is not ({q}, {k})-unbreakable")
    bound = 4 * q + 2 * k - 6
    R = g.S | g.T
    need = 2 * q + k - 2

    fam = disjoint_nonnull_packing(g, R, R, need, limit=limit)
    if fam is None:
        size, cert = hitting(g, R, R)
        if size > 2 * need - 2:
            raise InvariantViolation(f"{size} vertices needed to hit R-R paths, "
                                     f"expected at most {2 * need - 2}")
        cert.info = {"branch": "rr-hitting", "bound": bound}
        return cert

    st = [p for p in fam if _is_between(p, g.S, g.T)]
    if len(st) >= k:
        paths = [p if (p.start in g.S and p.end in g.T) else reverse_path(g, p) for p in st[:k]]
        return DualityCertificate("packing", paths=paths, info={"branch": "direct", "bound": bound})

    ss = [p for p in fam if not _is_between(p, g.S, g.T) and p.start in g.S and p.end in g.S]
    tt = [p for p in fam if not _is_between(p, g.S, g.T) and p.start in g.T and p.end in g.T]
    swapped = len(ss) < q
    src, dst = (g.T, g.S) if swapped else (g.S, g.T)
    same_side = tt if swapped else ss
    if len(same_side) < q:
        raise InvariantViolation("fewer than q same-side paths among the disjoint family")
    if len(dst) < q:
        return DualityCertificate("hitting", hitset=frozenset(dst),
                                  info={"branch": "small-side", "bound": bound, "swapped": swapped})

    Ps = same_side[:q]
    centers = {min(P.vertices): P for P in Ps}
    link = max_disjoint_linkage(g, centers, dst)
    if link.count < k:
        raise ContractError(f"only {link.count} disjoint center-target paths; graph is not "
                            f"({q}, {k})-unbreakable")
    tripods = []
    for Q in link.paths[:k]:
        # start Q at its last center so it belongs to a single P
        last = max(i for i, v in enumerate(Q.vertices) if v in centers)
        Q = subpath(g, Q, last, len(Q.vertices) - 1)
        P = centers[Q.start]
        on_p = set(P.vertices)
        first_hit = max(i for i, v in enumerate(Q.vertices) if v in on_p)
        Q = subpath(g, Q, first_hit, len(Q.vertices) - 1)
        tripods.append(make_tripod(g, P, Q))
    if not tripod_congestion_check(tripods):
        raise InvariantViolation("a vertex lies in three tripods")
    paths = [claim1_extract(g, t) for t in tripods]
    if swapped:
        paths = [reverse_path(g, p) for p in paths]
    if not verify_packing(g, paths):
        raise InvariantViolation("tripod paths do not form a congestion-2 packing")
    return DualityCertificate("packing", paths=paths,
                              info={"branch": "tripods", "bound": bound, "swapped": swapped,
                                    "tripods": tripods})


def proposition4_valid(g: STGraph, q: int, k: int, cert: DualityCertificate) -> bool:
    if cert.kind == "packing":
        return len(cert.paths) == k and verify_packing(g, cert.paths)
    return len(cert.hitset) <= 4 * q + 2 * k - 6 and verify_hitting(g, cert.hitset)
