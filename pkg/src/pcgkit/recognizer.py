"""Exhaustive PCG membership for small graphs.

Every witness tree can be normalized to an unrooted binary topology with
the same leaf distances (zero-weight edges allowed), so deciding
membership reduces to: for each of the (2n-5)!! leaf-labeled binary
topologies, and for each assignment of every non-edge to LOW (distance
below the band) or HIGH (above it), ask whether edge weights and bounds
exist.  Each such system is linear once the band is pinned at dmax = 1,
with the strict non-edge constraints handled by slack maximization; the
graph is a PCG iff some topology and assignment is strictly feasible.

Two exact shortcuts keep the search affordable and change no verdict:

* a four-point prefilter: two HIGH non-edges on four distinct nodes whose
  four cross pairs are all edges contradict the tree four-point condition
  inside the band, so such assignments are infeasible for every topology
  (the LP would agree; the prefilter just skips it);
* optional orbit reduction: relabeling leaves by a graph automorphism
  maps feasible systems to feasible systems, so only one topology per
  automorphism orbit needs solving.

Both are flag-controlled, and an optional conflict-core cache can prune
assignment enumeration; results are identical with every combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .graphs import Graph, automorphisms
from .lp import strict_feasibility_with_core
from .trees import PCGWitness, pcg_eval, weighted_tree


class RecognizerError(ValueError):
    """Raised for guard violations and label mismatches."""


MAX_NODES = 9


@dataclass(frozen=True)
class Topology:
    """Unrooted tree with labeled leaves and all internal degrees 3."""

    leaves: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {}
        for u, v in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def topology_count(n: int) -> int:
    return double_factorial(2 * n - 5)


def _topologies_for(names: tuple[str, ...]) -> Iterator[Topology]:
    n = len(names)
    base = [("i1", names[0]), ("i1", names[1]), ("i1", names[2])]

    def grow(edges: list[tuple[str, str]], k: int) -> Iterator[list[tuple[str, str]]]:
        if k == n:
            yield edges
            return
        newcomer = names[k]
        hub = f"i{k - 1}"
        for j in range(len(edges)):
            u, v = edges[j]
            grown = edges[:j] + [(u, hub), (hub, v), (hub, newcomer)] + edges[j + 1 :]
            yield from grow(grown, k + 1)

    for edges in grow(base, 3):
        yield Topology(names, tuple(edges))


def enumerate_topologies(n: int, max_leaves: int = MAX_NODES) -> Iterator[Topology]:
    """All unrooted binary topologies on leaves "1".."n", one each, by
    inserting each new leaf into every edge of every smaller topology."""
    if n < 3 or n > max_leaves:
        raise RecognizerError(f"leaf count {n} outside the guard 3..{max_leaves}")
    return _topologies_for(tuple(str(i) for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# per-topology feasibility
# ---------------------------------------------------------------------------


def _leaf_paths(topo: Topology) -> dict[tuple[str, str], tuple[int, ...]]:
    """Edge-index sets of the unique paths between all leaf pairs."""
    index = {frozenset(e): i for i, e in enumerate(topo.edges)}
    adj = topo.adjacency()
    paths: dict[tuple[str, str], tuple[int, ...]] = {}
    for leaf in topo.leaves:
        trail: dict[str, tuple[int, ...]] = {leaf: ()}
        stack = [leaf]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in trail:
                    trail[nxt] = trail[cur] + (index[frozenset((cur, nxt))],)
                    stack.append(nxt)
        for other in topo.leaves:
            if other != leaf and leaf < other:
                paths[(leaf, other)] = trail[other]
    return paths


def _quad_conflicts(
    graph: Graph, nonedges: list[tuple[str, str]]
) -> list[int]:
    """Bit masks of non-edge index pairs that can never both be HIGH.

    For disjoint non-edges {u,v}, {x,y} whose four cross pairs are all
    edges, the four-point condition gives d(u,v)+d(x,y) <= 2*dmax in every
    weighted tree, while HIGH+HIGH demands strictly more.
    """
    conflicts = []
    for i, j in combinations(range(len(nonedges)), 2):
        u, v = nonedges[i]
        x, y = nonedges[j]
        if len({u, v, x, y}) != 4:
            continue
        if (
            graph.has_edge(u, x)
            and graph.has_edge(u, y)
            and graph.has_edge(v, x)
            and graph.has_edge(v, y)
        ):
            conflicts.append((1 << i) | (1 << j))
    return conflicts


def topology_feasible(
    graph: Graph,
    topo: Topology,
    *,
    quad_filter: bool = True,
    labeling_pruning: bool = False,
    count_out: list | None = None,
) -> PCGWitness | None:
    """Search every LOW/HIGH assignment of this topology's non-edges.

    Returns a verified witness, or None when every assignment is
    infeasible.  ``count_out``, when given, receives the number of
    assignments examined as its first element.
    """
    if set(topo.leaves) != set(graph.nodes):
        raise RecognizerError("topology leaves do not match graph nodes")
    paths = _leaf_paths(topo)
    nedges = len(topo.edges)
    wvar = [f"w{i}" for i in range(nedges)]
    allvars = wvar + ["dmin", "dmax"]

    pairs = sorted(paths)
    edge_pairs = [p for p in pairs if graph.has_edge(*p)]
    nonedge_pairs = [p for p in pairs if not graph.has_edge(*p)]

    def path_form(pair, anchor):
        form = {wvar[i]: Fraction(1) for i in paths[pair]}
        form[anchor] = Fraction(-1)
        return form

    base: list[tuple] = []
    for p in edge_pairs:
        base.append((path_form(p, "dmin"), False, ">=", 0))  # dmin <= path
        base.append((path_form(p, "dmax"), False, "<=", 0))  # path <= dmax
    low_row = [(path_form(p, "dmin"), True, "<=", 0) for p in nonedge_pairs]
    high_row = [(path_form(p, "dmax"), True, ">=", 0) for p in nonedge_pairs]
    normalization = ({"dmax": Fraction(1)}, Fraction(1))

    k = len(nonedge_pairs)
    conflicts = _quad_conflicts(graph, nonedge_pairs) if quad_filter else []

    examined = 0
    witness = None
    cores: list[tuple[int, int]] = []  # (bit positions, required bits)

    masks: Iterable[int]
    if labeling_pruning:
        masks = (g ^ (g >> 1) for g in range(1 << k))  # Gray-code order
    else:
        masks = range(1 << k)

    for mask in masks:
        if labeling_pruning and any(
            mask & bits == want for bits, want in cores
        ):
            continue
        examined += 1
        if any(mask & c == 0 for c in conflicts):
            continue  # provably infeasible without solving
        rows = list(base)
        for i in range(k):
            rows.append(low_row[i] if mask >> i & 1 else high_row[i])
        assignment, core = strict_feasibility_with_core(
            rows,
            normalization,
            nonnegative=allvars,
            want_core=labeling_pruning,
        )
        if assignment is not None:
            weights = [(u, v, assignment[wvar[i]]) for i, (u, v) in enumerate(topo.edges)]
            tree = weighted_tree(
                sorted({x for e in topo.edges for x in e}),
                weights,
                [(l, l) for l in topo.leaves],
            )
            witness = PCGWitness(tree, assignment["dmin"], assignment["dmax"])
            if pcg_eval(witness) != graph:
                raise AssertionError("witness failed pcg_eval round trip")
            break
        if labeling_pruning and core:
            strict_ids = sorted(i - len(base) for i in core if i >= len(base))
            if strict_ids:
                bits = 0
                want = 0
                for i in strict_ids:
                    bits |= 1 << i
                    want |= mask & (1 << i)
                cores.append((bits, want))

    if count_out is not None:
        count_out.insert(0, examined)
    return witness


# ---------------------------------------------------------------------------
# whole-graph recognition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Auditable record that the exhaustion found nothing."""

    nodes: int
    topologies: int
    labelings: int

    def __str__(self) -> str:
        return (
            f"not-pcg nodes={self.nodes} topologies={self.topologies} "
            f"labelings={self.labelings}"
        )


@dataclass(frozen=True)
class RecognitionResult:
    witness: PCGWitness | None = None
    certificate: Certificate | None = None

    @property
    def is_pcg(self) -> bool:
        return self.witness is not None


def _splits_key(topo: Topology) -> tuple:
    """Canonical encoding of a leaf-labeled topology: the sorted tuple of
    its nontrivial splits, each written as the side avoiding the smallest
    leaf."""
    leaves = set(topo.leaves)
    smallest = min(leaves)
    adj = topo.adjacency()
    sides = []
    for u, v in topo.edges:
        if u in leaves or v in leaves:
            continue
        side = set()
        stack = [v]
        seen = {u, v}
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
                    if nxt in leaves:
                        side.add(nxt)
        if smallest in side:
            side = leaves - side
        sides.append(tuple(sorted(side)))
    return tuple(sorted(sides))


def _mapped_key(key: tuple, sigma: dict[str, str], leaves: frozenset[str]) -> tuple:
    smallest = min(leaves)
    sides = []
    for side in key:
        mapped = {sigma[x] for x in side}
        if smallest in mapped:
            mapped = leaves - mapped
        sides.append(tuple(sorted(mapped)))
    return tuple(sorted(sides))


def _orbit_representatives(
    topos: Iterable[Topology], autos: list[dict[str, str]]
) -> Iterator[Topology]:
    seen: set[tuple] = set()
    for topo in topos:
        key = _splits_key(topo)
        if key in seen:
            continue
        leaves = frozenset(topo.leaves)
        for sigma in autos:
            seen.add(_mapped_key(key, sigma, leaves))
        yield topo


def _star_witness(graph: Graph, complete: bool) -> PCGWitness:
    tree = weighted_tree(
        ["hub"] + [f"l_{v}" for v in graph.nodes],
        [("hub", f"l_{v}", 1) for v in graph.nodes],
        [(f"l_{v}", v) for v in graph.nodes],
    )
    if complete:
        return PCGWitness(tree, Fraction(2), Fraction(2))
    return PCGWitness(tree, Fraction(0), Fraction(1))


_WORKER_STATE: dict = {}


def _pool_init(graph, quad_filter, labeling_pruning):
    _WORKER_STATE["graph"] = graph
    _WORKER_STATE["quad_filter"] = quad_filter
    _WORKER_STATE["labeling_pruning"] = labeling_pruning


def _pool_task(topo: Topology):
    count: list = []
    witness = topology_feasible(
        _WORKER_STATE["graph"],
        topo,
        quad_filter=_WORKER_STATE["quad_filter"],
        labeling_pruning=_WORKER_STATE["labeling_pruning"],
        count_out=count,
    )
    return witness, count[0]


def recognize_pcg(
    graph: Graph,
    *,
    jobs: int = 1,
    symmetry: bool = False,
    labeling_pruning: bool = False,
    quad_filter: bool = True,
    progress: Callable[[int, int | None], None] | None = None,
    max_nodes: int = MAX_NODES,
) -> RecognitionResult:
    """Decide PCG membership by exhaustive topology search.

    Returns a verified witness, or the exhaustion certificate with the
    number of topologies and LOW/HIGH assignments examined.  Results,
    including the certificate counts for a fixed flag combination, are
    deterministic; the witness never depends on worker scheduling because
    results merge in topology order.
    """
    n = graph.node_count
    if n < 3 or n > max_nodes:
        raise RecognizerError(f"node count {n} outside the guard 3..{max_nodes}")

    if graph.is_complete() or graph.is_empty():
        witness = _star_witness(graph, graph.is_complete())
        assert pcg_eval(witness) == graph
        return RecognitionResult(witness=witness)

    names = tuple(sorted(graph.nodes))
    topos: Iterable[Topology] = _topologies_for(names)
    total: int | None = topology_count(n)
    if symmetry:
        topos = _orbit_representatives(topos, automorphisms(graph))
        total = None

    topologies_examined = 0
    labelings_examined = 0

    def record(witness, count) -> RecognitionResult | None:
        nonlocal topologies_examined, labelings_examined
        topologies_examined += 1
        labelings_examined += count
        if progress is not None:
            progress(topologies_examined, total)
        return RecognitionResult(witness=witness) if witness is not None else None

    if jobs <= 1:
        for topo in topos:
            count: list = []
            witness = topology_feasible(
                graph,
                topo,
                quad_filter=quad_filter,
                labeling_pruning=labeling_pruning,
                count_out=count,
            )
            result = record(witness, count[0])
            if result is not None:
                return result
    else:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ctx.Pool(
            jobs, initializer=_pool_init, initargs=(graph, quad_filter, labeling_pruning)
        ) as pool:
            for witness, count in pool.imap(_pool_task, topos, chunksize=16):
                result = record(witness, count)
                if result is not None:
                    pool.terminate()
                    return result

    return RecognitionResult(
        certificate=Certificate(n, topologies_examined, labelings_examined)
    )
