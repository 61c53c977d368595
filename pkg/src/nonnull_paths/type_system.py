"""Types of interfaced ST-graphs: path constraints, path-system problems,
hitting-set problems, and a finite fingerprint deciding them all.

Semantics fixed here (and baked into the universe id):

* a constraint names the *exact* set of interface vertices its path visits;
* ANY-S / ANY-T endpoints match any vertex of S / T, interface included;
* zero-arc paths count: ``(u_i)`` satisfies ``u_i -> u_i`` with value 1,
  and ``ANY-S -> u_i`` when ``u_i`` is a source, and so on.

The type itself is never materialised.  For every deletion set ``X`` with
``|X| <= r`` we record which problems of the enumerated universe remain
solvable in ``G - X``; a hitting-set problem ``(l, P)`` is solvable iff some
``X`` with ``|X| <= l`` leaves none of ``P`` solvable.  Keeping only the
inclusion-minimal solvable-sets per level loses nothing and makes the
fingerprint canonical: equal fingerprints iff equal types.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from math import comb

from .errors import ContractError, ScaleError
from .graph import STGraph, bits, mask_of
from .groups import FiniteGroup
from .paths import DEFAULT_PATH_BUDGET, iter_paths, reverse_path

ANY_S = "S"
ANY_T = "T"
SEMANTICS = "via=exact;zero-arc=allowed;ends=S/T-include-interface"
DEFAULT_R_MAX = 1
UNIVERSE_CAP = 200_000


def _end_key(e):
    return (0, e) if isinstance(e, int) else (1, 0 if e == ANY_S else 1)


@dataclass(frozen=True)
class PathConstraint:
    via: tuple          # sorted interface positions, non-empty
    end_a: object       # interface position (int), ANY_S or ANY_T
    end_b: object
    value: int

    def __post_init__(self):
        if not self.via:
            raise ContractError("a path constraint must visit the interface")
        for end in (self.end_a, self.end_b):
            if isinstance(end, int) and end not in self.via:
                raise ContractError("an interface endpoint must be in the via-set")
            if not isinstance(end, int) and end not in (ANY_S, ANY_T):
                raise ContractError(f"bad endpoint spec {end!r}")

    def key(self):
        return (self.via, _end_key(self.end_a), _end_key(self.end_b), self.value)

    def __lt__(self, other):
        return self.key() < other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def to_json(self, group: FiniteGroup) -> dict:
        def end(e):
            return f"u{e + 1}" if isinstance(e, int) else e
        return {"value": group.name(self.value), "from": end(self.end_a), "to": end(self.end_b),
                "via": [f"u{i + 1}" for i in self.via]}


@dataclass(frozen=True)
class PathSystemProblem:
    constraints: tuple                      # of PathConstraint
    disjoint_pairs: frozenset = frozenset()  # pairs (i, j), i < j

    @property
    def k(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class HittingSetProblem:
    budget: int
    problems: tuple  # of PathSystemProblem


def _end_specs(r):
    return list(range(r)) + [ANY_S, ANY_T]


def enumerate_constraints(group: FiniteGroup, r: int) -> list:
    """Every valid constraint for interface size ``r``, in canonical order."""
    out = []
    for size in range(1, r + 1):
        for via in itertools.combinations(range(r), size):
            for a in _end_specs(r):
                if isinstance(a, int) and a not in via:
                    continue
                for b in _end_specs(r):
                    if isinstance(b, int) and b not in via:
                        continue
                    for val in range(group.order):
                        out.append(PathConstraint(via, a, b, val))
    return out


def lemma5_counts(group: FiniteGroup, r: int) -> dict:
    """The finiteness bounds: constraints, path-system problems, hitting-set problems."""
    alpha = group.order * (r + 2) ** 2 * 2 ** r
    beta = sum(alpha ** k * 2 ** comb(k, 2) for k in range(0, 2 * r + 1))
    # (2r)^2 * 2^beta is far too large to print; report its decimal length
    log10 = (2 * (2 * r).bit_length() if r else 0) * 0.30103 + beta * 0.30103
    return {"alpha": alpha, "beta": beta,
            "hp_bound": f"(2r)^2 * 2^beta with beta = {beta}: about {int(log10) + 1} decimal digits"}


def canonical_problem(constraints, disjoint_pairs=()) -> PathSystemProblem:
    """Order-independent form of a path-system problem."""
    cs = list(constraints)
    order = sorted(range(len(cs)), key=lambda i: cs[i].key())
    key_cs = tuple(cs[o] for o in order)
    pairs = [tuple(sorted(p)) for p in disjoint_pairs]
    if not pairs:
        return PathSystemProblem(key_cs, frozenset())
    # only reorderings inside runs of equal constraints keep the list sorted
    runs = [list(grp) for _, grp in itertools.groupby(range(len(cs)), key=lambda i: key_cs[i])]
    best = None
    for choice in itertools.product(*(itertools.permutations(run) for run in runs)):
        perm = [order[o] for run in choice for o in run]
        pos = {o: i for i, o in enumerate(perm)}
        cand = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in pairs))
        if best is None or cand < best:
            best = cand
    return PathSystemProblem(key_cs, frozenset(best))


class ProblemUniverse:
    """The enumerated set of canonical path-system problems for (group, r)."""

    def __init__(self, group: FiniteGroup, r: int, constraints=None, cap: int = UNIVERSE_CAP):
        self.group = group
        self.r = r
        self.constraints = enumerate_constraints(group, r) if constraints is None else list(constraints)
        self.filtered = constraints is not None
        problems = []
        seen = set()
        for k in range(0, 2 * r + 1):
            pair_list = list(itertools.combinations(range(k), 2))
            for combo in itertools.combinations_with_replacement(self.constraints, k):
                for npairs in range(len(pair_list) + 1):
                    for pairs in itertools.combinations(pair_list, npairs):
                        p = canonical_problem(combo, pairs)
                        if p not in seen:
                            seen.add(p)
                            problems.append(p)
                            if len(problems) > cap:
                                raise ScaleError(f"problem universe for r={r} exceeds {cap}")
        self.problems = problems
        self.index = {p: i for i, p in enumerate(problems)}
        spec = json.dumps({"group": group.spec, "r": r, "semantics": SEMANTICS,
                           "constraints": [repr(c) for c in self.constraints] if self.filtered else "all"},
                          sort_keys=True)
        self.universe_id = hashlib.sha256(spec.encode()).hexdigest()[:16]

    def __len__(self):
        return len(self.problems)

    def problem_mask(self, problems) -> int:
        """Bitmask of universe indices; problems with unknown constraints are dropped
        (they are unsolvable everywhere, so they never matter)."""
        m = 0
        for p in problems:
            c = canonical_problem(p.constraints, p.disjoint_pairs)
            if c in self.index:
                m |= 1 << self.index[c]
            elif any(x not in self.constraints for x in c.constraints) and self.filtered:
                continue
            elif c.k > 2 * self.r:
                raise ContractError("path-system problems are limited to k <= 2r")
        return m


_UNIVERSES = {}


def universe_for(group: FiniteGroup, r: int) -> ProblemUniverse:
    key = (group, r)
    if key not in _UNIVERSES:
        _UNIVERSES[key] = ProblemUniverse(group, r)
    return _UNIVERSES[key]


class PathIndex:
    """Paths of ``g`` (inside ``allowed``) grouped by the constraints they satisfy."""

    def __init__(self, g: STGraph, iface, allowed: int | None = None, limit: int = DEFAULT_PATH_BUDGET):
        if allowed is None:
            allowed = g.all_mask
        self.g = g
        pos = {v: i for i, v in enumerate(iface)}
        iface_mask = mask_of(iface)
        ends = (mask_of(iface) | g.S_mask | g.T_mask) & allowed
        by_constraint = {}

        def specs(v):
            out = []
            if v in pos:
                out.append(pos[v])
            if (g.S_mask >> v) & 1:
                out.append(ANY_S)
            if (g.T_mask >> v) & 1:
                out.append(ANY_T)
            return out

        for p in iter_paths(g, bits(ends), bits(ends), None, limit, allowed):
            pm = p.mask
            if not pm & iface_mask:
                continue
            via = tuple(sorted(pos[v] for v in p.vertices if v in pos))
            orientations = [p] if len(p.vertices) == 1 else [p, reverse_path(g, p)]
            for q in orientations:
                for a in specs(q.start):
                    for b in specs(q.end):
                        c = PathConstraint(via, a, b, q.value)
                        by_constraint.setdefault(c, []).append((pm, q))
        self.by_constraint = by_constraint

    def candidates(self, c: PathConstraint) -> list:
        return self.by_constraint.get(c, [])


def _solve_with_index(index: PathIndex, prob: PathSystemProblem):
    k = prob.k
    if k == 0:
        return []
    cands = [index.candidates(c) for c in prob.constraints]
    if any(not c for c in cands):
        return None
    order = sorted(range(k), key=lambda i: len(cands[i]))
    partners = {i: set() for i in range(k)}
    for a, b in prob.disjoint_pairs:
        partners[a].add(b)
        partners[b].add(a)
    chosen = [None] * k

    def rec(t, full1, full2):
        if t == k:
            return True
        i = order[t]
        for pm, p in cands[i]:
            if pm & full2:
                continue
            if any(chosen[j] is not None and chosen[j][0] & pm for j in partners[i]):
                continue
            chosen[i] = (pm, p)
            if rec(t + 1, (full1 & ~pm) | (pm & ~full1), full2 | (pm & full1)):
                return True
            chosen[i] = None
        return False

    if rec(0, 0, 0):
        return [c[1] for c in chosen]
    return None


def solve_path_system(g: STGraph, iface, prob: PathSystemProblem, allowed: int | None = None):
    """Paths ``P_1..P_k`` satisfying the constraints, with the required
    disjointness and every vertex on at most two of them; ``None`` if none."""
    r = len(iface)
    if prob.k > 2 * r:
        raise ContractError("path-system problems are limited to k <= 2r")
    return _solve_with_index(PathIndex(g, iface, allowed), prob)


def path_satisfies(g: STGraph, iface, p, c: PathConstraint) -> bool:
    """Independent re-check of one path against one constraint."""
    pos = {v: i for i, v in enumerate(iface)}
    via = tuple(sorted(pos[v] for v in p.vertices if v in pos))
    if via != c.via or p.value != c.value:
        return False

    def ok(v, spec):
        if isinstance(spec, int):
            return iface[spec] == v
        return v in (g.S if spec == ANY_S else g.T)

    return ok(p.start, c.end_a) and ok(p.end, c.end_b)


def solve_hitting_problem(g: STGraph, iface, hp: HittingSetProblem):
    """Some ``X`` with ``|X| <= budget`` leaving every member problem unsolvable."""
    for size in range(0, min(hp.budget, g.n) + 1):
        for X in itertools.combinations(range(g.n), size):
            allowed = g.all_mask & ~mask_of(X)
            index = PathIndex(g, iface, allowed)
            if all(_solve_with_index(index, p) is None for p in hp.problems):
                return frozenset(X)
    return None


def solvable_mask(g: STGraph, iface, universe: ProblemUniverse, allowed: int) -> int:
    index = PathIndex(g, iface, allowed)
    m = 0
    # cheap pre-check: a problem with a constraint nobody satisfies is unsolvable
    live = set(index.by_constraint)
    for i, p in enumerate(universe.problems):
        if all(c in live for c in p.constraints) and _solve_with_index(index, p) is not None:
            m |= 1 << i
    return m


def minimal_antichain(masks) -> tuple:
    out = []
    for m in sorted(set(masks), key=lambda x: (bin(x).count("1"), x)):
        if not any(o & m == o for o in out):
            out.append(m)
    return tuple(sorted(out))


@dataclass(frozen=True)
class TypeFingerprint:
    r: int
    universe_id: str
    levels: tuple  # levels[l] = sorted tuple of minimal solvable-set masks

    def solvable(self, budget: int, problem_mask: int) -> bool:
        """Whether the hitting-set problem (budget, problems) has a solution."""
        level = self.levels[min(budget, self.r)]
        return any(M & problem_mask == 0 for M in level)

    def to_json(self) -> dict:
        return {"r": self.r, "universe_id": self.universe_id,
                "levels": [[bits(M) for M in level] for level in self.levels]}

    @classmethod
    def from_json(cls, doc) -> "TypeFingerprint":
        return cls(doc["r"], doc["universe_id"],
                   tuple(tuple(sorted(mask_of(ix) for ix in level)) for level in doc["levels"]))

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]


def solvable_sets(g: STGraph, iface, universe: ProblemUniverse | None = None) -> dict:
    """``X -> solvable(G - X)`` for every ``X`` with ``|X| <= r``."""
    r = len(iface)
    if universe is None:
        universe = universe_for(g.group, r)
    out = {}
    for size in range(0, min(r, g.n) + 1):
        for X in itertools.combinations(range(g.n), size):
            out[frozenset(X)] = solvable_mask(g, iface, universe, g.all_mask & ~mask_of(X))
    return out


def compute_type(g: STGraph, iface=None, r_max: int = DEFAULT_R_MAX,
                 universe: ProblemUniverse | None = None) -> TypeFingerprint:
    iface = tuple(g.interface if iface is None else iface)
    r = len(iface)
    if r > r_max:
        raise ScaleError(f"interface size {r} above r_max={r_max}")
    if universe is None:
        universe = universe_for(g.group, r)
    sets = solvable_sets(g, iface, universe)
    levels = []
    for l in range(r + 1):
        levels.append(minimal_antichain(m for X, m in sets.items() if len(X) <= l))
    return TypeFingerprint(r, universe.universe_id, tuple(levels))


def realizable_constraints(graphs_with_ifaces, group: FiniteGroup, r: int) -> list:
    """Constraints met by some path in at least one of the given graphs.

    A problem using any other constraint is unsolvable in all of them, so
    comparing the graphs on the reduced universe is exact.
    """
    live = set()
    for g, iface in graphs_with_ifaces:
        live |= set(PathIndex(g, iface).by_constraint)
    return [c for c in enumerate_constraints(group, r) if c in live]


def types_equal(g1: STGraph, iface1, g2: STGraph, iface2, r_max: int = DEFAULT_R_MAX) -> bool:
    r = len(iface1)
    if len(iface2) != r:
        return False
    if r > r_max:
        raise ScaleError(f"interface size {r} above r_max={r_max}")
    if r <= 1:
        return compute_type(g1, iface1, r_max) == compute_type(g2, iface2, r_max)
    cons = realizable_constraints([(g1, iface1), (g2, iface2)], g1.group, r)
    uni = ProblemUniverse(g1.group, r, cons)
    return compute_type(g1, iface1, r_max, uni) == compute_type(g2, iface2, r_max, uni)


def distinguishing_problem(fp1: TypeFingerprint, fp2: TypeFingerprint, universe_size: int):
    """A (budget, problem mask) solvable for exactly one of two unequal fingerprints."""
    full = (1 << universe_size) - 1
    for l in range(fp1.r + 1):
        for a, b in ((fp1, fp2), (fp2, fp1)):
            for M in a.levels[l]:
                if not any(M2 & M == M2 for M2 in b.levels[l]):
                    return l, full & ~M
    return None
