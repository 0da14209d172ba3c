"""Edge-weighted trees with graph-node-bearing leaves, and the two
evaluation semantics built on their leaf distances:

* distance in a closed band  ->  edge           (pcg_eval)
* distance at least a floor  ->  edge           (mlpg_eval)

All weights are exact rationals; every distance computation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graphs import Graph, edge_key


class TreeError(ValueError):
    """Raised for malformed trees or witnesses."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeightedTree:
    """Tree with nonnegative rational edge weights.

    ``leaves`` maps the tree nodes flagged as graph-node-bearing to the
    graph node name each one carries.  Flagged nodes must have tree degree
    1 and carry distinct graph names; unflagged degree-1 nodes are allowed
    (they simply bear no graph node).
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    leaves: tuple[tuple[str, str], ...]
    _adj: dict[str, tuple[tuple[str, Fraction], ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise TreeError("duplicate tree node name")
        if len(self.edges) != len(self.nodes) - 1:
            raise TreeError("edge count is not node count minus one")
        adj: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in self.nodes}
        for u, v, w in self.edges:
            if u not in node_set or v not in node_set:
                raise TreeError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
            if u == v:
                raise TreeError(f"self-loop on tree node {u!r}")
            if w < 0:
                raise TreeError(f"negative weight on edge ({u!r}, {v!r})")
            adj[u].append((v, w))
            adj[v].append((u, w))
        # Connectivity: |E| = |V| - 1 plus one reachability sweep.
        if self.nodes:
            stack = [self.nodes[0]]
            reached = {self.nodes[0]}
            while stack:
                for nxt, _ in adj[stack.pop()]:
                    if nxt not in reached:
                        reached.add(nxt)
                        stack.append(nxt)
            if len(reached) != len(self.nodes):
                raise TreeError("edges do not form a connected tree")
        graph_names = [g for _, g in self.leaves]
        if len(set(graph_names)) != len(graph_names):
            raise TreeError("duplicate graph node name on leaves")
        for tnode, _ in self.leaves:
            if tnode not in node_set:
                raise TreeError(f"flagged leaf {tnode!r} is not a tree node")
            if len(adj[tnode]) != 1:
                raise TreeError(f"flagged leaf {tnode!r} does not have degree 1")
        object.__setattr__(
            self, "_adj", {v: tuple(ns) for v, ns in adj.items()}
        )

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def neighbors(self, v: str) -> tuple[tuple[str, Fraction], ...]:
        return self._adj[v]

    @property
    def leaf_map(self) -> dict[str, str]:
        """tree node -> graph name for the flagged leaves."""
        return dict(self.leaves)

    @property
    def graph_names(self) -> tuple[str, ...]:
        return tuple(g for _, g in self.leaves)


def weighted_tree(
    nodes: Sequence[str],
    edges: Iterable[tuple],
    leaves: Iterable[tuple[str, str]],
) -> WeightedTree:
    """Convenience constructor coercing names to str and weights to Fraction."""
    return WeightedTree(
        tuple(str(n) for n in nodes),
        tuple((str(u), str(v), _frac(w)) for u, v, w in edges),
        tuple((str(t), str(g)) for t, g in leaves),
    )


def _trusted_tree(
    nodes: tuple[str, ...],
    edges: tuple[tuple[str, str, Fraction], ...],
    leaves: tuple[tuple[str, str], ...],
    adj: dict[str, tuple[tuple[str, Fraction], ...]],
) -> WeightedTree:
    """Assemble a WeightedTree skipping validation.

    Only for construction sites that build the tree and its adjacency by a
    formula that is valid by construction (large caterpillar spines would
    otherwise pay an O(nodes) validation sweep per instance).
    """
    t = object.__new__(WeightedTree)
    object.__setattr__(t, "nodes", nodes)
    object.__setattr__(t, "edges", edges)
    object.__setattr__(t, "leaves", leaves)
    object.__setattr__(t, "_adj", adj)
    return t


@dataclass(frozen=True)
class PCGWitness:
    """A weighted tree plus the closed distance band [dmin, dmax]."""

    tree: WeightedTree
    dmin: Fraction
    dmax: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "dmin", _frac(self.dmin))
        object.__setattr__(self, "dmax", _frac(self.dmax))
        if self.dmin < 0 or self.dmax < 0:
            raise TreeError("witness bounds must be nonnegative")


def _cleanup_adj(
    adj: dict[str, list[tuple[str, Fraction]]], flagged: set[str]
) -> dict[str, list[tuple[str, Fraction]]]:
    """Prune unflagged degree-1 nodes and contract unflagged degree-2 nodes
    in place.  Preserves all flagged-node distances exactly."""

    def drop_edge(a: str, b: str) -> Fraction:
        for i, (n, w) in enumerate(adj[a]):
            if n == b:
                adj[a].pop(i)
                return w
        raise AssertionError("edge not present")

    pending = [v for v in adj if len(adj[v]) <= 1 and v not in flagged]
    while pending:
        v = pending.pop()
        if v not in adj or len(adj[v]) > 1:
            continue
        if adj[v]:
            (n, _), = adj[v]
            drop_edge(n, v)
            if len(adj[n]) <= 1 and n not in flagged:
                pending.append(n)
        del adj[v]

    for v in [v for v in list(adj) if len(adj[v]) == 2 and v not in flagged]:
        (a, wa), (b, wb) = adj[v]
        drop_edge(a, v)
        drop_edge(b, v)
        del adj[v]
        adj[a].append((b, wa + wb))
        adj[b].append((a, wa + wb))
    return adj


def _pruned_contracted_adj(
    tree: WeightedTree,
) -> dict[str, list[tuple[str, Fraction]]]:
    """Adjacency of the leaf skeleton: unflagged degree-1 nodes pruned,
    degree-2 pass-through nodes contracted (weights summed).  Preserves all
    flagged-leaf distances exactly.

    Chains of pass-through nodes are walked once per end rather than
    contracted one node at a time, so long caterpillar spines compress in
    a single cheap sweep.
    """
    flagged = {t for t, _ in tree.leaves}
    src = tree._adj
    kept = {v for v in tree.nodes if v in flagged or len(src[v]) >= 3}
    out: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in kept}
    for u in kept:
        for n, w in src[u]:
            prev, cur = u, n
            # Accumulate the chain weight as a raw numerator/denominator
            # pair; one Fraction reduction at the end instead of one per
            # step keeps long spine walks cheap.
            tnum, tden = w.numerator, w.denominator
            while cur not in kept and len(src[cur]) == 2:
                (a, wa), (b, wb) = src[cur]
                step = wb if a == prev else wa
                n2, d2 = step.numerator, step.denominator
                if d2 == tden:
                    tnum += n2
                else:
                    tnum = tnum * d2 + n2 * tden
                    tden *= d2
                prev, cur = cur, (b if a == prev else a)
            if cur in kept:
                out[u].append((cur, Fraction(tnum, tden)))
            # otherwise the chain dead-ends in an unflagged leaf: pruned
    return _cleanup_adj(out, flagged)


def leaf_distance_matrix(tree: WeightedTree) -> dict[str, dict[str, Fraction]]:
    """Exact pairwise path-weight sums between flagged leaves.

    Returned as a nested dict indexed by the graph names the leaves carry;
    diagonal entries are 0.  Trees much larger than their leaf set (long
    caterpillar spines, say) are first compressed onto the leaf skeleton,
    which leaves every pairwise distance unchanged.
    """
    names = tree.graph_names
    matrix: dict[str, dict[str, Fraction]] = {g: {} for g in names}
    adj: dict[str, list[tuple[str, Fraction]]] | dict[
        str, tuple[tuple[str, Fraction], ...]
    ]
    if len(names) >= 2 and len(tree.nodes) > max(64, 4 * len(names)):
        adj = _pruned_contracted_adj(tree)
    else:
        adj = {v: tree.neighbors(v) for v in tree.nodes}
    for tnode, gname in tree.leaves:
        dist = {tnode: Fraction(0)}
        stack = [tnode]
        while stack:
            cur = stack.pop()
            for nxt, w in adj[cur]:
                if nxt not in dist:
                    dist[nxt] = dist[cur] + w
                    stack.append(nxt)
        for other_t, other_g in tree.leaves:
            matrix[gname][other_g] = dist[other_t]
    return matrix


def pcg_eval(witness: PCGWitness) -> Graph:
    """Realize the witness: edge {u,v} iff dmin <= d_T(u,v) <= dmax.

    Both bounds are inclusive; dmin > dmax legally yields the empty graph.
    """
    tree = witness.tree
    matrix = leaf_distance_matrix(tree)
    names = tuple(sorted(tree.graph_names))
    edges = frozenset(
        edge_key(u, v)
        for i, u in enumerate(names)
        for v in names[i + 1 :]
        if witness.dmin <= matrix[u][v] <= witness.dmax
    )
    return Graph(names, edges)


def mlpg_eval(tree: WeightedTree, dmin) -> Graph:
    """Floor-only semantics: edge {u,v} iff d_T(u,v) >= dmin."""
    dmin = _frac(dmin)
    if dmin < 0:
        raise TreeError("dmin must be nonnegative")
    matrix = leaf_distance_matrix(tree)
    names = tuple(sorted(tree.graph_names))
    edges = frozenset(
        edge_key(u, v)
        for i, u in enumerate(names)
        for v in names[i + 1 :]
        if matrix[u][v] >= dmin
    )
    return Graph(names, edges)


def is_caterpillar(tree: WeightedTree) -> bool:
    """True iff deleting all degree-1 nodes leaves a (possibly empty) path."""
    remaining = [v for v in tree.nodes if tree.degree(v) > 1]
    if not remaining:
        return True
    keep = set(remaining)
    degrees = {}
    for v in remaining:
        degrees[v] = sum(1 for n, _ in tree.neighbors(v) if n in keep)
        if degrees[v] > 2:
            return False
    # Within a forest, max degree <= 2 makes each component a path; a path
    # needs the remainder connected: nodes = inner edges + 1.
    inner_edges = sum(degrees.values()) // 2
    return inner_edges == len(remaining) - 1


def normalize_tree(tree: WeightedTree) -> WeightedTree:
    """Rebuild the tree so every internal node has degree exactly 3.

    Unflagged degree-1 nodes are pruned, degree-2 internal nodes are
    contracted (weights summed), and nodes of degree > 3 are split with
    zero-weight edges.  The flagged leaf set and the exact leaf distance
    matrix are preserved.
    """
    if len(tree.leaves) < 2:
        raise TreeError("normalize_tree needs at least 2 flagged leaves")
    adj = _pruned_contracted_adj(tree)

    def drop_edge(a: str, b: str) -> Fraction:
        for i, (n, w) in enumerate(adj[a]):
            if n == b:
                adj[a].pop(i)
                return w
        raise AssertionError("edge not present")

    # Split degree > 3 nodes with zero-weight edges.
    counter = 0
    existing = set(adj)

    def fresh() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"z{counter}"
            if name not in existing:
                existing.add(name)
                return name

    for v in [v for v in list(adj) if len(adj[v]) > 3]:
        while len(adj[v]) > 3:
            (a, wa) = adj[v][0]
            (b, wb) = adj[v][1]
            drop_edge(a, v)
            drop_edge(b, v)
            adj[v] = adj[v][2:]
            nv = fresh()
            adj[nv] = [(a, wa), (b, wb), (v, Fraction(0))]
            adj[a].append((nv, wa))
            adj[b].append((nv, wb))
            adj[v].append((nv, Fraction(0)))

    nodes = tuple(sorted(adj))
    edges = []
    for u in nodes:
        for v, w in adj[u]:
            if u < v:
                edges.append((u, v, w))
    return WeightedTree(nodes, tuple(edges), tree.leaves)
