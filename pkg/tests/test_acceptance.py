"""Acceptance gate: one test per criterion, one printed pass/fail line each.

Run as part of the normal suite; the exhaustive search criteria carry the
``slow`` marker so day-to-day iteration can deselect them with
``-m 'not slow'`` (the default run includes everything).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import combinations

import pytest

from pcgkit.geometry import PAPER_MODEL_NAMES, model_graph, paper_model
from pcgkit.graphs import enumerate_graphs, graph_h
from pcgkit.recognizer import recognize_pcg
from pcgkit.threshold import integerize, tt_instance, tt_realize, tt_witness
from pcgkit.trees import (
    PCGWitness,
    is_caterpillar,
    leaf_distance_matrix,
    mlpg_eval,
    normalize_tree,
    pcg_eval,
    weighted_tree,
)


@contextmanager
def criterion(number: int, label: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] criterion {number} ({label}): FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"[acceptance] criterion {number} ({label}): PASS in {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 1. bundled geometric models
# ---------------------------------------------------------------------------


def test_criterion_1_figure_models():
    with criterion(1, "all five bundled models realize H"):
        start = time.perf_counter()
        h = graph_h()
        for name in PAPER_MODEL_NAMES:
            assert model_graph(paper_model(name)) == h, name
        assert time.perf_counter() - start < 1.0


# ---------------------------------------------------------------------------
# 2 and 3. tolerance witness round trip + integerization property
# ---------------------------------------------------------------------------


def _integer_instances(rng, count):
    for _ in range(count):
        n = rng.randrange(3, 13)
        nodes = [f"n{i}" for i in range(n)]
        yield tt_instance(
            nodes,
            {v: F(rng.randrange(1, 21)) for v in nodes},
            {v: F(rng.randrange(1, 21)) for v in nodes},
        )


def _rational_instances(rng, count, max_spine=20000):
    made = 0
    while made < count:
        n = rng.randrange(3, 13)
        nodes = [f"n{i}" for i in range(n)]
        inst = tt_instance(
            nodes,
            {v: F(rng.randrange(1, 21), rng.randrange(1, 13)) for v in nodes},
            {v: F(rng.randrange(1, 21), rng.randrange(1, 13)) for v in nodes},
        )
        # keep the integerized spine length bounded so the 10 s budget
        # holds; denominators stay anywhere in 1..12
        if max(integerize(inst).t.values()) > max_spine:
            continue
        made += 1
        yield inst


def _check_round_trip(inst):
    witness = tt_witness(inst)
    assert pcg_eval(witness) == tt_realize(inst)
    assert is_caterpillar(witness.tree)
    scaled = integerize(inst)
    k = max(scaled.t.values())
    matrix = leaf_distance_matrix(witness.tree)
    for u, v in combinations(scaled.nodes, 2):
        expected = scaled.g[u] + scaled.g[v] + k - min(scaled.t[u], scaled.t[v])
        assert matrix[u][v] == expected
        assert matrix[u][v] >= 2


def test_criterion_2_witness_round_trip():
    with criterion(2, "caterpillar witness round trip, 300 randomized instances"):
        start = time.perf_counter()
        rng = random.Random(220)
        for inst in _integer_instances(rng, 200):
            _check_round_trip(inst)
        for inst in _rational_instances(rng, 100):
            _check_round_trip(inst)
        assert time.perf_counter() - start < 10.0


def test_criterion_3_integerize_preserves_realization():
    with criterion(3, "integer scaling preserves the realized graph"):
        rng = random.Random(330)
        for inst in _rational_instances(rng, 100):
            assert tt_realize(integerize(inst)) == tt_realize(inst)


# ---------------------------------------------------------------------------
# 4. the negative result: H is not a PCG
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_4_h_is_not_pcg():
    with criterion(4, "exhaustive search: H is not a PCG"):
        start = time.perf_counter()
        h = graph_h()
        result = recognize_pcg(h)
        assert not result.is_pcg
        cert = result.certificate
        assert cert.nodes == 8
        assert cert.topologies == 10395
        assert cert.labelings == 10395 * 256  # every LOW/HIGH assignment examined
        pruned = recognize_pcg(h, symmetry=True)
        assert not pruned.is_pcg
        assert pruned.certificate.topologies < cert.topologies
        assert pruned.certificate.labelings < cert.labelings
        assert time.perf_counter() - start < 7200


# ---------------------------------------------------------------------------
# 5. the positive results: everything on 3..5 nodes has a witness
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_5_small_graphs_all_pcg():
    with criterion(5, "every class on 3, 4, 5 nodes receives a witness"):
        start = time.perf_counter()
        per_size = {}
        for n in (3, 4, 5):
            count = 0
            for g in enumerate_graphs(n):
                result = recognize_pcg(g)
                assert result.is_pcg, f"no witness for a {n}-node graph"
                assert pcg_eval(result.witness) == g
                count += 1
            per_size[n] = count
        assert per_size == {3: 4, 4: 11, 5: 34}
        assert time.perf_counter() - start < 15 * 60


# ---------------------------------------------------------------------------
# 6. standalone property suites
# ---------------------------------------------------------------------------


def _random_tree(rng, max_internal_degree):
    nodes = ["v0"]
    edges = []
    degree = {"v0": 0}
    for i in range(1, rng.randrange(6, 14)):
        name = f"v{i}"
        parent = rng.choice([v for v in nodes if degree[v] < max_internal_degree])
        edges.append((parent, name, F(rng.randrange(0, 10), rng.randrange(1, 7))))
        degree[parent] += 1
        degree[name] = 1
        nodes.append(name)
    leaves = [(v, f"g{i}") for i, v in enumerate(n for n in nodes if degree[n] <= 1)]
    return weighted_tree(nodes, edges, leaves)


def test_criterion_6_property_suites():
    with criterion(6, "tree-metric, scaling, normalization and floor-band properties"):
        rng = random.Random(660)

        # four-point condition on random trees
        for _ in range(25):
            tree = _random_tree(rng, 3)
            names = tree.graph_names
            matrix = leaf_distance_matrix(tree)
            for a, b, c, d in combinations(names, 4):
                sums = sorted(
                    [
                        matrix[a][b] + matrix[c][d],
                        matrix[a][c] + matrix[b][d],
                        matrix[a][d] + matrix[b][c],
                    ]
                )
                assert sums[1] == sums[2]

        # scale invariance of the band semantics
        for lam in (F(1, 3), F(7)):
            for _ in range(15):
                tree = _random_tree(rng, 3)
                dmin = F(rng.randrange(0, 8), rng.randrange(1, 5))
                dmax = dmin + F(rng.randrange(0, 8), rng.randrange(1, 5))
                scaled = weighted_tree(
                    tree.nodes,
                    [(u, v, w * lam) for u, v, w in tree.edges],
                    tree.leaves,
                )
                assert pcg_eval(PCGWitness(tree, dmin, dmax)) == pcg_eval(
                    PCGWitness(scaled, dmin * lam, dmax * lam)
                )

        # normalization preserves the distance matrix exactly
        for _ in range(25):
            tree = _random_tree(rng, 6)
            if len(tree.leaves) < 2:
                continue
            normalized = normalize_tree(tree)
            assert leaf_distance_matrix(normalized) == leaf_distance_matrix(tree)
            internal = [v for v in normalized.nodes if normalized.degree(v) > 1]
            assert all(normalized.degree(v) == 3 for v in internal)

        # floor semantics agree with the band on the caterpillar witnesses
        for _ in range(25):
            n = rng.randrange(2, 9)
            nodes = [f"n{i}" for i in range(n)]
            inst = tt_instance(
                nodes,
                {v: F(rng.randrange(1, 15)) for v in nodes},
                {v: F(rng.randrange(1, 15)) for v in nodes},
            )
            witness = tt_witness(inst)
            assert mlpg_eval(witness.tree, witness.dmin) == pcg_eval(witness)
