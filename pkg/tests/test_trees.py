import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from pcgkit.graphs import graph_from_edges
from pcgkit.trees import (
    PCGWitness,
    TreeError,
    is_caterpillar,
    leaf_distance_matrix,
    mlpg_eval,
    normalize_tree,
    pcg_eval,
    weighted_tree,
)


def unit_star(leaf_names, weight=1):
    nodes = ["c"] + [f"l{v}" for v in leaf_names]
    edges = [("c", f"l{v}", weight) for v in leaf_names]
    leaves = [(f"l{v}", v) for v in leaf_names]
    return weighted_tree(nodes, edges, leaves)


def random_tree(rng, n_leaves, max_internal_degree=3, max_den=6):
    """Random weighted tree grown by attaching nodes to random spots."""
    nodes = ["v0"]
    edges = []
    degree = {"v0": 0}
    for i in range(1, n_leaves + rng.randrange(1, 4)):
        name = f"v{i}"
        candidates = [v for v in nodes if degree[v] < max_internal_degree]
        parent = rng.choice(candidates)
        w = F(rng.randrange(0, 12), rng.randrange(1, max_den + 1))
        nodes.append(name)
        edges.append((parent, name, w))
        degree[parent] += 1
        degree[name] = 1
    leaf_nodes = [v for v in nodes if degree[v] <= 1]
    leaves = [(v, f"g{i}") for i, v in enumerate(leaf_nodes)]
    return weighted_tree(nodes, edges, leaves)


# ---------------------------------------------------------------------------
# construction invariants
# ---------------------------------------------------------------------------


def test_rejects_cycle():
    with pytest.raises(TreeError):
        weighted_tree(
            ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)], []
        )


def test_rejects_disconnected():
    with pytest.raises(TreeError):
        weighted_tree(["a", "b", "c", "d"], [("a", "b", 1), ("c", "d", 1)], [])


def test_rejects_negative_weight():
    with pytest.raises(TreeError):
        weighted_tree(["a", "b"], [("a", "b", -1)], [])


def test_rejects_internal_flagged_leaf():
    with pytest.raises(TreeError):
        weighted_tree(
            ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1)], [("b", "x")]
        )


def test_rejects_duplicate_graph_names():
    with pytest.raises(TreeError):
        weighted_tree(
            ["a", "b", "c"],
            [("b", "a", 1), ("b", "c", 1)],
            [("a", "x"), ("c", "x")],
        )


def test_witness_rejects_negative_bounds():
    t = unit_star(["a", "b"])
    with pytest.raises(TreeError):
        PCGWitness(t, F(-1), F(2))


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_star_distances():
    m = leaf_distance_matrix(unit_star(["a", "b", "c"]))
    for u in "abc":
        assert m[u][u] == 0
        for v in "abc":
            if u != v:
                assert m[u][v] == 2


def test_two_edge_path_distance():
    t = weighted_tree(
        ["a", "x", "b"],
        [("a", "x", F(1, 2)), ("x", "b", F(1, 3))],
        [("a", "a"), ("b", "b")],
    )
    m = leaf_distance_matrix(t)
    assert m["a"]["b"] == F(5, 6)
    assert m["b"]["a"] == F(5, 6)


def test_caterpillar_example_distances():
    # Spine x1..x5, leaves a at x2 (weight 5/2), b and c at x5 (weights 1, 3):
    # the worked instance with g=(1,1,3), t=(2,5,5).
    nodes = [f"x{i}" for i in range(1, 6)] + ["la", "lb", "lc"]
    edges = [(f"x{i}", f"x{i+1}", F(1, 2)) for i in range(1, 5)]
    edges += [("x2", "la", F(5, 2)), ("x5", "lb", F(1)), ("x5", "lc", F(3))]
    t = weighted_tree(nodes, edges, [("la", "a"), ("lb", "b"), ("lc", "c")])
    m = leaf_distance_matrix(t)
    assert m["a"]["b"] == 5
    assert m["a"]["c"] == 7
    assert m["b"]["c"] == 4


def test_four_point_condition_on_random_trees():
    rng = random.Random(3)
    for _ in range(30):
        t = random_tree(rng, rng.randrange(4, 9))
        names = t.graph_names
        if len(names) < 4:
            continue
        m = leaf_distance_matrix(t)
        for a, b, c, d in combinations(names, 4):
            sums = sorted([m[a][b] + m[c][d], m[a][c] + m[b][d], m[a][d] + m[b][c]])
            assert sums[1] == sums[2]


# ---------------------------------------------------------------------------
# pcg_eval / mlpg_eval
# ---------------------------------------------------------------------------


def test_pcg_eval_star_complete():
    w = PCGWitness(unit_star(["a", "b", "c"]), F(2), F(2))
    assert pcg_eval(w) == graph_from_edges(
        "abc", [("a", "b"), ("b", "c"), ("a", "c")]
    )


def test_pcg_eval_empty_interval():
    w = PCGWitness(unit_star(["a", "b", "c"]), F(3), F(2))
    assert pcg_eval(w) == graph_from_edges("abc", [])


def test_pcg_eval_path_from_weighted_star():
    # star weights a:1 b:3 c:1 with band [3,4]: distances 4, 4, 2.
    t = weighted_tree(
        ["c0", "la", "lb", "lc"],
        [("c0", "la", 1), ("c0", "lb", 3), ("c0", "lc", 1)],
        [("la", "a"), ("lb", "b"), ("lc", "c")],
    )
    g = pcg_eval(PCGWitness(t, F(3), F(4)))
    assert g == graph_from_edges("abc", [("a", "b"), ("b", "c")])


def test_mlpg_eval_extremes():
    star = unit_star(["a", "b", "c"])
    assert mlpg_eval(star, 0).edge_count == 3
    assert mlpg_eval(star, 3).edge_count == 0


def test_mlpg_matches_pcg_with_big_dmax():
    rng = random.Random(5)
    for _ in range(20):
        t = random_tree(rng, rng.randrange(3, 7))
        if len(t.graph_names) < 2:
            continue
        m = leaf_distance_matrix(t)
        dmax = max(
            m[u][v] for u in t.graph_names for v in t.graph_names
        )
        dmin = F(rng.randrange(0, 8), rng.randrange(1, 5))
        assert mlpg_eval(t, dmin) == pcg_eval(PCGWitness(t, dmin, dmax))


def test_pcg_eval_scale_invariance():
    rng = random.Random(9)
    for lam in (F(1, 3), F(7)):
        for _ in range(15):
            t = random_tree(rng, rng.randrange(3, 7))
            if len(t.graph_names) < 2:
                continue
            dmin = F(rng.randrange(0, 6), rng.randrange(1, 4))
            dmax = dmin + F(rng.randrange(0, 6), rng.randrange(1, 4))
            scaled = weighted_tree(
                t.nodes,
                [(u, v, w * lam) for u, v, w in t.edges],
                t.leaves,
            )
            assert pcg_eval(PCGWitness(t, dmin, dmax)) == pcg_eval(
                PCGWitness(scaled, dmin * lam, dmax * lam)
            )


# ---------------------------------------------------------------------------
# caterpillar predicate
# ---------------------------------------------------------------------------


def test_star_is_caterpillar():
    assert is_caterpillar(unit_star(["a", "b", "c", "d"]))


def test_complete_binary_tree_is_not_caterpillar():
    # 3 levels of internal nodes, 8 leaves; removing leaves keeps a
    # 7-node tree whose root has two degree-3 children.
    nodes = ["r", "u0", "u1", "w0", "w1", "w2", "w3"] + [f"l{i}" for i in range(8)]
    edges = [("r", "u0", 1), ("r", "u1", 1)]
    edges += [("u0", "w0", 1), ("u0", "w1", 1), ("u1", "w2", 1), ("u1", "w3", 1)]
    for i in range(8):
        edges.append((f"w{i // 2}", f"l{i}", 1))
    t = weighted_tree(nodes, edges, [(f"l{i}", str(i)) for i in range(8)])
    assert not is_caterpillar(t)


def test_two_node_tree_is_caterpillar():
    t = weighted_tree(["a", "b"], [("a", "b", 1)], [("a", "a"), ("b", "b")])
    assert is_caterpillar(t)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def test_normalize_contracts_path():
    t = weighted_tree(
        ["a", "x", "y", "b"],
        [("a", "x", 1), ("x", "y", 2), ("y", "b", 3)],
        [("a", "a"), ("b", "b")],
    )
    nt = normalize_tree(t)
    assert leaf_distance_matrix(nt)["a"]["b"] == 6
    assert all(nt.degree(v) != 2 for v in nt.nodes)


def test_normalize_splits_star():
    t = unit_star(["a", "b", "c", "d"])
    nt = normalize_tree(t)
    assert leaf_distance_matrix(nt) == leaf_distance_matrix(t)
    internal = [v for v in nt.nodes if nt.degree(v) > 1]
    assert all(nt.degree(v) == 3 for v in internal)


def test_normalize_prunes_unflagged_leaves():
    t = weighted_tree(
        ["a", "c", "b", "stub"],
        [("a", "c", 1), ("c", "b", 2), ("c", "stub", 5)],
        [("a", "a"), ("b", "b")],
    )
    nt = normalize_tree(t)
    assert "stub" not in nt.nodes
    assert leaf_distance_matrix(nt)["a"]["b"] == 3


def test_normalize_preserves_matrix_on_random_trees():
    rng = random.Random(17)
    for _ in range(40):
        t = random_tree(rng, rng.randrange(3, 9), max_internal_degree=6)
        if len(t.graph_names) < 2:
            continue
        nt = normalize_tree(t)
        assert leaf_distance_matrix(nt) == leaf_distance_matrix(t)
        internal = [v for v in nt.nodes if nt.degree(v) > 1]
        assert all(nt.degree(v) == 3 for v in internal)


def test_normalize_idempotent_on_matrices():
    rng = random.Random(23)
    t = random_tree(rng, 6, max_internal_degree=6)
    once = normalize_tree(t)
    twice = normalize_tree(once)
    assert leaf_distance_matrix(once) == leaf_distance_matrix(twice)


def test_normalize_requires_two_leaves():
    t = weighted_tree(["a", "b"], [("a", "b", 1)], [("a", "a")])
    with pytest.raises(TreeError):
        normalize_tree(t)


def test_normalized_witness_realizes_same_graph():
    # high-degree witnesses lose nothing by normalization, which is what
    # makes the binary-topology search exhaustive
    rng = random.Random(29)
    for _ in range(25):
        t = random_tree(rng, rng.randrange(4, 9), max_internal_degree=6)
        if len(t.graph_names) < 2:
            continue
        dmin = F(rng.randrange(0, 8), rng.randrange(1, 5))
        dmax = dmin + F(rng.randrange(0, 8), rng.randrange(1, 5))
        before = pcg_eval(PCGWitness(t, dmin, dmax))
        after = pcg_eval(PCGWitness(normalize_tree(t), dmin, dmax))
        assert before == after
