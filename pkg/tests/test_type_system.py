import itertools
import random

import pytest

from nonnull_paths.constructions import random_instance
from nonnull_paths.errors import ContractError, ScaleError
from nonnull_paths.graph import STGraph, mask_of
from nonnull_paths.groups import make_cyclic
from nonnull_paths.type_system import (ANY_S, ANY_T, HittingSetProblem, PathConstraint,
                                       PathSystemProblem, canonical_problem, compute_type,
                                       distinguishing_problem, enumerate_constraints, lemma5_counts,
                                       minimal_antichain, path_satisfies, realizable_constraints,
                                       solvable_mask, solvable_sets, solve_hitting_problem,
                                       solve_path_system, types_equal, universe_for)

import oracles
from corpus import Z2, Z3


def pendant(label=1):
    # s - u1 with u1 the interface
    return STGraph(Z2, ["u1", "s"], [(0, 1, label)], [1], [], interface=(0,))


def random_hp(rng, universe, live):
    size = rng.randint(1, 4)
    pool = live if live and rng.random() < 0.8 else list(range(len(universe)))
    chosen = {rng.choice(pool) for _ in range(size)}
    return HittingSetProblem(rng.randint(0, universe.r), tuple(universe.problems[i] for i in sorted(chosen)))


def test_constraint_counts():
    cons = enumerate_constraints(Z2, 1)
    assert len(cons) == 18 == oracles.count_constraints(2, 1)
    assert all(c.via for c in cons)
    for order, r in ((3, 1), (2, 2), (4, 2), (2, 3)):
        assert len(enumerate_constraints(make_cyclic(order), r)) == oracles.count_constraints(order, r)
    assert len(cons) <= lemma5_counts(Z2, 1)["alpha"]


def test_lemma5_counts():
    c = lemma5_counts(Z2, 1)
    assert c["alpha"] == 36
    assert c["beta"] == 1 + 36 + 36 ** 2 * 2 == 2629
    assert lemma5_counts(Z2, 2)["beta"] > c["beta"]
    assert "2629" in c["hp_bound"]


def test_bad_constraints():
    with pytest.raises(ContractError):
        PathConstraint((), ANY_S, ANY_T, 0)
    with pytest.raises(ContractError):
        PathConstraint((0,), 1, ANY_T, 0)


def test_universe_size_r1():
    uni = universe_for(Z2, 1)
    # empty problem, 18 singletons, unordered pairs with or without a disjointness demand
    assert len(uni) == 1 + 18 + (18 * 19 // 2) * 2


def test_canonical_problem_ignores_order():
    a, b = enumerate_constraints(Z2, 1)[:2]
    assert canonical_problem([a, b], [(0, 1)]) == canonical_problem([b, a], [(1, 0)])
    assert canonical_problem([a, b]) != canonical_problem([a, b], [(0, 1)])


def test_empty_problem_is_solved_by_nothing():
    assert solve_path_system(pendant(), (0,), PathSystemProblem(())) == []


def test_single_edge_constraint():
    g = pendant()
    c = PathConstraint((0,), ANY_S, 0, 1)
    sol = solve_path_system(g, (0,), PathSystemProblem((c,)))
    assert sol is not None and sol[0].vertices == (1, 0)
    assert path_satisfies(g, (0,), sol[0], c)
    assert solve_path_system(g, (0,), PathSystemProblem((PathConstraint((0,), ANY_S, 0, 0),))) is None


def test_disjointness_versus_congestion():
    g = pendant()
    c = PathConstraint((0,), ANY_S, 0, 1)
    assert solve_path_system(g, (0,), PathSystemProblem((c, c))) is not None
    assert solve_path_system(g, (0,), PathSystemProblem((c, c), frozenset({(0, 1)}))) is None
    # the same answer by trying every assignment of satisfying paths
    from nonnull_paths.paths import enumerate_paths
    cands = [p for p in enumerate_paths(g, range(g.n), range(g.n)) if path_satisfies(g, (0,), p, c)]
    assert not [1 for p, q in itertools.product(cands, repeat=2) if not set(p.vertices) & set(q.vertices)]


def test_too_many_paths_rejected():
    c = PathConstraint((0,), ANY_S, 0, 1)
    with pytest.raises(ContractError):
        solve_path_system(pendant(), (0,), PathSystemProblem((c, c, c)))


def test_returned_paths_recheck():
    rng = random.Random(1)
    uni = universe_for(Z2, 1)
    for seed in range(15):
        g = random_instance(Z2, 6, 0.5, 0.3, 0.3, seed).with_st(interface=(0,))
        for i in rng.sample(range(len(uni)), 60):
            prob = uni.problems[i]
            sol = solve_path_system(g, g.interface, prob)
            if sol is None:
                continue
            assert len(sol) == prob.k
            for p, c in zip(sol, prob.constraints):
                assert path_satisfies(g, g.interface, p, c)
            for a, b in prob.disjoint_pairs:
                assert not set(sol[a].vertices) & set(sol[b].vertices)
            load = {}
            for p in sol:
                for v in p.vertices:
                    load[v] = load.get(v, 0) + 1
            assert max(load.values(), default=0) <= 2


def test_hitting_problem_examples():
    g = pendant()
    c = PathConstraint((0,), ANY_S, 0, 1)
    assert solve_hitting_problem(g, (0,), HittingSetProblem(1, ())) == frozenset()
    X = solve_hitting_problem(g, (0,), HittingSetProblem(1, (PathSystemProblem((c,)),)))
    assert X is not None and len(X) == 1
    # with budget r nothing is ever out of reach: the interface itself works
    zero = PathConstraint((0,), 0, 0, 0)
    hp = HittingSetProblem(1, (PathSystemProblem((zero,)), PathSystemProblem((c,))))
    assert solve_hitting_problem(g, (0,), hp) == frozenset({0})
    assert solve_hitting_problem(g, (0,), HittingSetProblem(0, hp.problems)) is None


def test_hitting_problem_exhaustive_cross_check():
    g = STGraph(Z2, ["u1", "a", "s"], [(0, 1, 1), (1, 2, 0)], [2], [], interface=(0,))
    c = PathConstraint((0,), ANY_S, 0, 1)
    hp = HittingSetProblem(1, (PathSystemProblem((c,)),))
    X = solve_hitting_problem(g, (0,), hp)
    good = [frozenset(Y) for size in (0, 1) for Y in itertools.combinations(range(3), size)
            if solve_path_system(g, (0,), PathSystemProblem((c,)),
                                 allowed=g.all_mask & ~mask_of(Y)) is None]
    assert X in good and set(good) == {frozenset({0}), frozenset({1}), frozenset({2})}


def test_edgeless_graph_type():
    g = STGraph(Z2, ["u1", "x"], [], [1], [1], interface=(0,))
    fp = compute_type(g)
    uni = universe_for(Z2, 1)
    # only the zero-arc path at u1 is available, and deleting u1 kills it
    zero = PathConstraint((0,), 0, 0, 0)
    # the empty problem (index 0) is solvable after any deletion
    assert fp.levels[1] == (1,)
    # with nothing deleted: nothing, the zero-arc path once, or twice at congestion 2
    expect = 1 | 1 << uni.index[PathSystemProblem((zero,))] | 1 << uni.index[PathSystemProblem((zero, zero))]
    assert fp.levels[0] == (expect,)


def test_empty_problem_always_solvable_before_deletion():
    g = pendant()
    assert solvable_mask(g, (0,), universe_for(Z2, 1), g.all_mask) & 1


def test_renaming_invariance():
    rng = random.Random(5)
    for seed in range(6):
        g = random_instance(Z2, 6, 0.5, 0.3, 0.3, seed).with_st(interface=(2,))
        order = list(range(g.n))
        rng.shuffle(order)
        pos = {old: new for new, old in enumerate(order)}
        names = [None] * g.n
        for old in range(g.n):
            names[pos[old]] = g.names[old] if old == 2 else f"r{old}"
        h = STGraph(g.group, names, [(pos[u], pos[v], lab) for u, v, lab in g.edges],
                    [pos[v] for v in g.S], [pos[v] for v in g.T], (pos[2],))
        assert compute_type(g) == compute_type(h)


def test_deletion_monotone():
    uni = universe_for(Z2, 1)
    for seed in range(8):
        g = random_instance(Z2, 6, 0.5, 0.3, 0.3, seed).with_st(interface=(0,))
        sets = solvable_sets(g, g.interface, uni)
        for v in range(g.n):
            assert sets[frozenset({v})] & ~sets[frozenset()] == 0


def test_minimal_antichain():
    assert minimal_antichain([0b110, 0b010, 0b011, 0b100]) == (0b010, 0b100)
    assert minimal_antichain([]) == ()


def test_scale_guard():
    g = random_instance(Z2, 4, 0.5, 0.3, 0.3, 1).with_st(interface=(0, 1))
    with pytest.raises(ScaleError):
        compute_type(g)


def test_fingerprint_json_round_trip():
    from nonnull_paths.type_system import TypeFingerprint
    fp = compute_type(random_instance(Z3, 5, 0.6, 0.3, 0.3, 2).with_st(interface=(1,)))
    assert TypeFingerprint.from_json(fp.to_json()) == fp


def test_soundness_small_audit():
    rng = random.Random(11)
    uni = universe_for(Z2, 1)
    for seed in range(3):
        g = random_instance(Z2, 5, 0.55, 0.35, 0.35, 100 + seed).with_st(interface=(0,))
        fp = compute_type(g)
        live = [i for i in range(len(uni)) if solvable_mask(g, (0,), uni, g.all_mask) >> i & 1]
        for _ in range(40):
            hp = random_hp(rng, uni, live)
            predicted = fp.solvable(hp.budget, uni.problem_mask(hp.problems))
            assert predicted == (solve_hitting_problem(g, (0,), hp) is not None)


def test_distinguishing_problem_separates_types():
    uni = universe_for(Z2, 1)
    a = pendant(1)
    b = pendant(0)
    fa, fb = compute_type(a), compute_type(b)
    assert fa != fb and not types_equal(a, (0,), b, (0,))
    l, mask = distinguishing_problem(fa, fb, len(uni))
    problems = tuple(uni.problems[i] for i in range(len(uni)) if mask >> i & 1)
    hp = HittingSetProblem(l, problems)
    assert (solve_hitting_problem(a, (0,), hp) is None) != (solve_hitting_problem(b, (0,), hp) is None)


def test_r2_comparison_uses_realizable_constraints():
    g = STGraph(Z2, ["u1", "u2"], [(0, 1, 1)], [0], [], interface=(0, 1))
    h = STGraph(Z2, ["u1", "u2"], [(0, 1, 0)], [0], [], interface=(0, 1))
    cons = realizable_constraints([(g, (0, 1)), (h, (0, 1))], Z2, 2)
    assert 0 < len(cons) < len(enumerate_constraints(Z2, 2))
    assert types_equal(g, (0, 1), g, (0, 1), r_max=2)
    # an odd u1-u2 edge against an even one
    assert not types_equal(g, (0, 1), h, (0, 1), r_max=2)
