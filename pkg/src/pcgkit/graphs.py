"""Simple undirected graphs over named nodes, plus the small-graph machinery
(isomorphism, complement, enumeration) the rest of the toolkit relies on.

Node names are opaque strings.  Edges are stored canonically with the
lexicographically smaller endpoint first, so files round-trip bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph construction input."""


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``nodes`` keeps construction order for stable output; equality and
    hashing ignore that order (two graphs are equal iff they have the same
    node set and the same edge set).
    """

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    _adj: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        node_set = set(self.nodes)
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop on node {u!r}")
            if u not in node_set or v not in node_set:
                raise GraphError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
            if (u, v) != edge_key(u, v):
                raise GraphError(f"edge ({u!r}, {v!r}) not stored canonically")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", {v: frozenset(ns) for v, ns in adj.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.nodes), self.edges))

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def neighbors(self, v: str) -> frozenset[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(ns) for ns in self._adj.values()))

    def is_complete(self) -> bool:
        n = self.node_count
        return self.edge_count == n * (n - 1) // 2

    def is_empty(self) -> bool:
        return self.edge_count == 0


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical storage order for an undirected edge."""
    return (u, v) if u <= v else (v, u)


def graph_from_edges(names: Sequence, edges: Iterable[tuple]) -> Graph:
    """Build a Graph from a node-name sequence and an edge list.

    Names are coerced to ``str``.  Rejects duplicate names, self-loops and
    edges with endpoints outside ``names``; duplicate edges are merged.
    """
    node_names = tuple(str(n) for n in names)
    if len(set(node_names)) != len(node_names):
        raise GraphError("duplicate node name")
    known = set(node_names)
    edge_set = set()
    for u, v in edges:
        u, v = str(u), str(v)
        if u == v:
            raise GraphError(f"self-loop on node {u!r}")
        if u not in known or v not in known:
            raise GraphError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
        edge_set.add(edge_key(u, v))
    return Graph(node_names, frozenset(edge_set))


def graph_h() -> Graph:
    """The 8-node, 20-edge graph H used throughout as the non-PCG witness.

    Nodes 1..8; edge set: the matchings {1,2}, {3,4}, {5,6}, {7,8} plus the
    complete bipartite join between {1,2,7,8} and {3,4,5,6}.
    """
    names = [str(i) for i in range(1, 9)]
    edges = [("1", "2"), ("3", "4"), ("5", "6"), ("7", "8")]
    for i in ("1", "2", "7", "8"):
        for j in ("3", "4", "5", "6"):
            edges.append((i, j))
    return graph_from_edges(names, edges)


def complement(g: Graph) -> Graph:
    """Same nodes; an edge is present iff it is absent in ``g``."""
    missing = frozenset(
        edge_key(u, v) for u, v in combinations(g.nodes, 2) if not g.has_edge(u, v)
    )
    return Graph(g.nodes, missing)


def are_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """Find a node bijection mapping E1 exactly onto E2, or None.

    Backtracking with degree pruning; meant for graphs with at most ~16
    nodes, which is all this toolkit ever compares.
    """
    for found in _isomorphisms(g1, g2):
        return found
    return None


def automorphisms(g: Graph) -> list[dict[str, str]]:
    """All adjacency-preserving self-bijections of ``g`` (brute force)."""
    return list(_isomorphisms(g, g))


def _isomorphisms(g1: Graph, g2: Graph) -> Iterator[dict[str, str]]:
    if g1.node_count != g2.node_count or g1.edge_count != g2.edge_count:
        return
    if g1.degree_sequence() != g2.degree_sequence():
        return

    nodes1 = list(g1.nodes)
    nodes2 = list(g2.nodes)
    candidates = {
        u: [v for v in nodes2 if g2.degree(v) == g1.degree(u)] for u in nodes1
    }
    # Assign the most constrained nodes first to keep the branching shallow.
    order = sorted(nodes1, key=lambda u: len(candidates[u]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(idx: int) -> Iterator[dict[str, str]]:
        if idx == len(order):
            yield dict(mapping)
            return
        u = order[idx]
        for v in candidates[u]:
            if v in used:
                continue
            ok = True
            for w, mw in mapping.items():
                if g1.has_edge(u, w) != g2.has_edge(v, mw):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used.add(v)
            yield from extend(idx + 1)
            del mapping[u]
            used.discard(v)

    yield from extend(0)


def enumerate_graphs(n: int, max_nodes: int = 7) -> Iterator[Graph]:
    """Yield one representative per isomorphism class of graphs on n nodes.

    Generates all labeled graphs on nodes "1".."n" and deduplicates with
    are_isomorphic, bucketing by degree sequence so the quadratic check
    stays cheap.  Guarded at ``max_nodes`` since the labeled count grows as
    2^(n choose 2).
    """
    if n < 1 or n > max_nodes:
        raise GraphError(f"node count {n} outside the guard 1..{max_nodes}")
    names = tuple(str(i) for i in range(1, n + 1))
    pairs = [edge_key(u, v) for u, v in combinations(names, 2)]
    seen: dict[tuple[int, ...], list[Graph]] = {}
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        g = Graph(names, edges)
        bucket = seen.setdefault(g.degree_sequence(), [])
        if any(are_isomorphic(g, rep) is not None for rep in bucket):
            continue
        bucket.append(g)
        yield g
