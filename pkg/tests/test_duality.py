import json

import pytest
from hypothesis import given, settings, strategies as st

from nonnull_paths.constructions import build_figure1, random_instance
from nonnull_paths.duality import (DualityCertificate, check_theorem1, check_theorem3,
                                   disjoint_nonnull_packing, find_packing, hitting, min_f_bound,
                                   minimal_paths, nonnull_paths, packing, verify_certificate,
                                   verify_hitting, verify_packing)
from nonnull_paths.errors import BudgetExceeded
from nonnull_paths.graph import STGraph
from nonnull_paths.paths import make_path

import oracles
from corpus import K4, Z2, Z3, corpus, single_edge


def test_single_edge_values():
    g = single_edge()
    pv, pc = packing(g)
    hv, hc = hitting(g)
    assert (pv, hv) == (2, 1)
    assert pc.paths[0] == pc.paths[1]  # one path used twice
    assert verify_certificate(g, pc) and verify_certificate(g, hc)


def test_identity_labels_give_zero():
    g = STGraph(Z3, "abcd", [(0, 1, 0), (1, 2, 0), (2, 3, 0), (0, 2, 0)], [0, 1], [2, 3])
    assert packing(g)[0] == 0 and hitting(g)[0] == 0


def test_figure1_n1_values():
    g = build_figure1(1)
    assert packing(g)[0] == 2
    assert oracles.packing_ilp(oracles.nonnull_vertex_sets(g), g.n) == 2
    size, cert = hitting(g)
    assert size == 1 == oracles.hitting_brute(g)[0]
    assert {g.names[v] for v in cert.hitset} == {"g0_1"}


def test_packing_and_hitting_match_oracles():
    for name, g in corpus(7):
        pv, pc = packing(g)
        hv, hc = hitting(g)
        assert pv == oracles.packing_ilp(oracles.nonnull_vertex_sets(g), g.n), name
        assert hv == oracles.hitting_brute(g)[0], name
        assert verify_certificate(g, pc) and verify_certificate(g, hc)
        assert pv <= 2 * hv


def test_minimal_paths_preserve_values():
    for name, g in corpus(7)[:40]:
        ps = nonnull_paths(g)
        red = minimal_paths(ps)
        masks = [p.mask for p in red]
        assert len(set(masks)) == len(masks)
        for p in ps:
            assert any(m & p.mask == m for m in masks)


def test_verifiers_reject_bad_certificates():
    g = STGraph(Z2, ["s", "a", "t"], [(0, 1, 1), (1, 2, 0), (0, 2, 0)], [0], [2])
    good = make_path(g, [0, 1, 2])
    null = make_path(g, [0, 2])
    assert verify_packing(g, [good, good])
    assert not verify_packing(g, [good, good, good])  # congestion 3 at s
    assert not verify_packing(g, [null])
    assert not verify_hitting(g, frozenset())
    assert verify_hitting(g, frozenset({1}))
    assert not verify_certificate(g, DualityCertificate("packing", paths=[null]))


def test_disjoint_packing_examples():
    g = STGraph(Z2, ["s1", "t1", "s2", "t2"], [(0, 1, 1), (2, 3, 1)], [0, 2], [1, 3])
    fam = disjoint_nonnull_packing(g, g.S, g.T, 2)
    assert fam is not None and len(fam) == 2
    assert disjoint_nonnull_packing(g, g.S, g.T, 0) == []
    assert disjoint_nonnull_packing(build_figure1(1), build_figure1(1).S, build_figure1(1).T, 2) is None


def test_disjoint_packing_matches_ilp():
    for name, g in corpus(8):
        R = g.S | g.T
        best = oracles.max_disjoint_paths_ilp(g, R, R)
        for k in (best, best + 1):
            fam = disjoint_nonnull_packing(g, R, R, k)
            assert (fam is not None) == (k <= best), (name, k)
            if fam:
                assert verify_packing(g, fam, R, R, congestion=1)


def test_theorem3_star():
    # centre c, leaves in R, distinct non-identity labels
    g = STGraph(Z3, ["c", "a", "b", "d"], [(0, 1, 1), (0, 2, 2), (0, 3, 1)])
    v = check_theorem3(g, {1, 2, 3}, 2)
    assert v.passed and v.branch == "hitting"
    assert v.hitset == frozenset({0}) and v.hitting_value == 1


def test_theorem3_k1_tautology():
    for _, g in corpus(7)[:30]:
        v = check_theorem3(g, g.S | g.T, 1)
        assert v.passed
        assert v.branch == ("packing" if v.paths else "hitting")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3), st.sampled_from([Z2, Z3, K4]))
def test_theorem3_random(seed, k, group):
    g = random_instance(group, 8, 0.4, 0.3, 0.3, seed)
    v = check_theorem3(g, g.S | g.T, k)
    assert v.passed


def test_theorem1_checks():
    g = single_edge()
    assert check_theorem1(g, 0, 0).passed
    assert check_theorem1(g, 2, 0).passed
    assert not check_theorem1(build_figure1(1), 3, 0).passed
    assert min_f_bound(build_figure1(1), 3) == 1


def test_figure1_min_f_table():
    g = build_figure1(1)
    table = {k: min_f_bound(g, k) for k in range(1, 5)}
    assert table == {1: 0, 2: 0, 3: 1, 4: 1}


def test_find_packing_agrees_with_value():
    for name, g in corpus(7)[:50]:
        pv = packing(g)[0]
        assert find_packing(g, pv) is not None
        assert find_packing(g, pv + 1) is None


def test_work_budget_is_distinct_from_no_solution():
    g = build_figure1(1)
    with pytest.raises(BudgetExceeded):
        hitting(g, work=1)
    with pytest.raises(BudgetExceeded):
        packing(g, limit=5)


def test_certificate_json():
    g = single_edge()
    doc = packing(g)[1].to_json(g)
    assert json.loads(json.dumps(doc)) == {"kind": "packing", "paths": [["s", "t"], ["s", "t"]]}
