import random

import pytest

from nonnull_paths.connectivity import unbreakability
from nonnull_paths.constructions import random_instance
from nonnull_paths.duality import hitting, packing
from nonnull_paths.errors import ContractError, InvariantViolation
from nonnull_paths.graph import STGraph
from nonnull_paths.paths import is_nonnull, make_path, path_value
from nonnull_paths.unbreakable import (claim1_extract, make_tripod, proposition4,
                                       proposition4_valid, tripod_congestion_check)

from corpus import S3, Z2


def k9_mixed():
    rng = random.Random(9)
    edges = [(u, v, rng.randrange(2)) for u in range(9) for v in range(u + 1, 9)]
    return STGraph(Z2, [f"v{i}" for i in range(9)], edges, [0, 1, 2], [6, 7, 8])


def test_no_targets_gives_empty_hitting_set():
    g = STGraph(Z2, "abc", [(0, 1, 1), (1, 2, 1), (0, 2, 1)], [0, 1], [])
    cert = proposition4(g, 1, 1)
    assert cert.kind == "hitting" and cert.size == 0
    assert proposition4_valid(g, 1, 1, cert)


def test_identity_labels_rr_hitting_empty():
    g = STGraph(Z2, "abcd", [(u, v, 0) for u in range(4) for v in range(u + 1, 4)], [0, 1], [2, 3])
    cert = proposition4(g, 2, 2)
    assert cert.kind == "hitting" and cert.size == 0 and cert.info["branch"] == "rr-hitting"


def test_dense_k9():
    g = k9_mixed()
    assert unbreakability(g, 2, 2).unbreakable
    cert = proposition4(g, 2, 2)
    assert proposition4_valid(g, 2, 2, cert)
    if cert.kind == "packing":
        assert packing(g)[0] >= 2
    else:
        assert hitting(g)[0] <= 4 * 2 + 2 * 2 - 6


def test_rejects_breakable_input():
    g = STGraph(Z2, "abcde", [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 4, 1), (4, 2, 1)], [0], [4])
    with pytest.raises(ContractError):
        proposition4(g, 3, 2)


def test_claim1_center_in_target():
    # P = s1 - c - s2 with c also a target; Q is the zero-arc path at c
    g = STGraph(Z2, ["s1", "c", "s2"], [(0, 1, 1), (1, 2, 0)], [0, 2], [1])
    P = make_path(g, [0, 1, 2])
    t = make_tripod(g, P, make_path(g, [1]))
    p = claim1_extract(g, t)
    assert is_nonnull(g, p) and p.vertices == (0, 1)


def test_claim1_parity():
    g = STGraph(Z2, ["s1", "a", "c", "s2", "t"], [(0, 1, 1), (1, 2, 1), (2, 3, 1), (2, 4, 0)], [0, 3], [4])
    t = make_tripod(g, make_path(g, [0, 1, 2, 3]), make_path(g, [2, 4]))
    p = claim1_extract(g, t)
    assert p.vertices == (3, 2, 4) and p.value == 1


def test_claim1_non_abelian():
    s3 = S3
    lab = [s3.index(x) for x in ("102", "021", "210", "120")]
    g = STGraph(s3, ["s1", "c", "s2", "t"], [(0, 1, lab[0]), (1, 2, lab[1]), (1, 3, lab[2])], [0, 2], [3])
    P = make_path(g, [0, 1, 2])
    assert is_nonnull(g, P)
    p = claim1_extract(g, make_tripod(g, P, make_path(g, [1, 3])))
    assert path_value(g, p) != s3.identity and p.start in g.S and p.end in g.T


def test_claim1_null_p_is_an_invariant_violation():
    g = STGraph(Z2, ["s1", "c", "s2", "t"], [(0, 1, 0), (1, 2, 0), (1, 3, 0)], [0, 2], [3])
    with pytest.raises(InvariantViolation):
        claim1_extract(g, make_tripod(g, make_path(g, [0, 1, 2]), make_path(g, [1, 3])))


def test_make_tripod_rejects_overlap():
    g = STGraph(Z2, ["a", "b", "c"], [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(ContractError):
        make_tripod(g, make_path(g, [0, 1, 2]), make_path(g, [1, 2]))


def test_tripod_congestion():
    g = STGraph(Z2, "abcdefg", [(0, 1, 1), (1, 2, 1), (1, 3, 0), (3, 4, 1), (4, 5, 1), (4, 6, 0)])
    t1 = make_tripod(g, make_path(g, [0, 1, 2]), make_path(g, [1, 3]))
    t2 = make_tripod(g, make_path(g, [3, 4, 5]), make_path(g, [4, 6]))
    assert tripod_congestion_check([t1])
    assert tripod_congestion_check([t1, t2])  # share vertex 3
    assert not tripod_congestion_check([t1, t1, t1])


def test_random_certificates_and_branches():
    branches = set()
    for seed in range(60):
        g = random_instance(Z2, 9, 0.7, 0.35, 0.35, seed)
        for q in (1, 2, 3):
            for k in (1, 2):
                if not unbreakability(g, q, k).unbreakable:
                    continue
                cert = proposition4(g, q, k, check_unbreakable=False)
                assert proposition4_valid(g, q, k, cert), (seed, q, k)
                branches.add(cert.info["branch"])
                if cert.info["branch"] == "tripods":
                    assert tripod_congestion_check(cert.info["tripods"])
    assert branches == {"direct", "tripods", "rr-hitting", "small-side"}
