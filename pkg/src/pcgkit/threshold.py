"""Threshold tolerance instances: weights g and tolerances t per node, an
edge exactly when g(x) + g(y) >= min(t(x), t(y)).

The witness construction turns an instance into a caterpillar: a spine
x_1..x_K with K = max tolerance, spine edges of weight 1/2, and the leaf
for node v hung off x_{t(v)} with weight g(v) + (K - t(v))/2.  Leaf
distances then come out as g(u) + g(v) + K - min(t(u), t(v)), so the band
[K, 2*max(g) + K] realizes exactly the tolerance edges.  Everything is
integerized first (scale by the lcm of all denominators), which changes no
edge and makes all distances integers or half-integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .graphs import Graph, edge_key
from .trees import PCGWitness, _trusted_tree


class ThresholdError(ValueError):
    """Raised for malformed threshold-tolerance input."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TTInstance:
    """Node set with a positive rational weight and tolerance per node."""

    nodes: tuple[str, ...]
    g: dict[str, Fraction]
    t: dict[str, Fraction]

    def __post_init__(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise ThresholdError("duplicate node name")
        for v in self.nodes:
            if v not in self.g or v not in self.t:
                raise ThresholdError(f"missing weight or tolerance for {v!r}")
            if self.g[v] <= 0 or self.t[v] <= 0:
                raise ThresholdError(f"weight and tolerance of {v!r} must be positive")
        extra = (set(self.g) | set(self.t)) - set(self.nodes)
        if extra:
            raise ThresholdError(f"values for unknown nodes: {sorted(extra)}")

    def is_integral(self) -> bool:
        return all(
            self.g[v].denominator == 1 and self.t[v].denominator == 1
            for v in self.nodes
        )


def tt_instance(nodes, g, t) -> TTInstance:
    """Constructor coercing names to str and values to Fraction.

    ``g`` and ``t`` may be dicts keyed by node name or sequences aligned
    with ``nodes``.
    """
    names = tuple(str(v) for v in nodes)
    if not isinstance(g, dict):
        g = dict(zip(names, g))
    if not isinstance(t, dict):
        t = dict(zip(names, t))
    return TTInstance(
        names,
        {str(k): _frac(v) for k, v in g.items()},
        {str(k): _frac(v) for k, v in t.items()},
    )


def tt_realize(inst: TTInstance) -> Graph:
    """Edge {x,y} iff g(x) + g(y) >= min(t(x), t(y)), exactly."""
    edges = set()
    for i, x in enumerate(inst.nodes):
        for y in inst.nodes[i + 1 :]:
            if inst.g[x] + inst.g[y] >= min(inst.t[x], inst.t[y]):
                edges.add(edge_key(x, y))
    return Graph(inst.nodes, frozenset(edges))


def integerize(inst: TTInstance) -> TTInstance:
    """Scale g and t by the lcm of all their denominators.

    The defining inequality is homogeneous, so the realized graph is
    unchanged; the output has positive integer values throughout.  An
    already-integer instance is returned as-is.
    """
    if inst.is_integral():
        return inst
    m = lcm(
        *(inst.g[v].denominator for v in inst.nodes),
        *(inst.t[v].denominator for v in inst.nodes),
    )
    return TTInstance(
        inst.nodes,
        {v: inst.g[v] * m for v in inst.nodes},
        {v: inst.t[v] * m for v in inst.nodes},
    )


def tt_witness(inst: TTInstance) -> PCGWitness:
    """Caterpillar witness realizing tt_realize(inst) as a PCG.

    Spine nodes exist for every tolerance level 1..K even when no node has
    that tolerance; the leaf for v is attached at level t(v).  Bounds:
    dmin = K and dmax = 2*max(g) + K, an upper bound strictly above every
    leaf distance, so the band keeps exactly the pairs with distance >= K.
    """
    inst = integerize(inst)
    k = max(int(inst.t[v]) for v in inst.nodes)
    half = Fraction(1, 2)
    spine = [f"x{i}" for i in range(1, k + 1)]
    edges: list[tuple[str, str, Fraction]] = [
        (spine[i], spine[i + 1], half) for i in range(k - 1)
    ]
    hanging: dict[int, list[tuple[str, Fraction]]] = {}
    leaf_nodes = []
    leaves = []
    for v in inst.nodes:
        leaf = f"l_{v}"
        at = int(inst.t[v]) - 1
        w = inst.g[v] + Fraction(k - int(inst.t[v]), 2)
        edges.append((spine[at], leaf, w))
        hanging.setdefault(at, []).append((leaf, w))
        leaf_nodes.append(leaf)
        leaves.append((leaf, v))
    # Adjacency by formula: each spine node sees its spine neighbours plus
    # whatever leaves hang off it; the tree is valid by construction, so
    # skip the generic validation sweep (spines can run to ~10^5 nodes).
    adj: dict[str, tuple[tuple[str, Fraction], ...]] = {}
    for i, name in enumerate(spine):
        entries: list[tuple[str, Fraction]] = []
        if i > 0:
            entries.append((spine[i - 1], half))
        if i < k - 1:
            entries.append((spine[i + 1], half))
        entries.extend(hanging.get(i, ()))
        adj[name] = tuple(entries)
    for i, v in enumerate(inst.nodes):
        at = int(inst.t[v]) - 1
        adj[leaf_nodes[i]] = ((spine[at], inst.g[v] + Fraction(k - int(inst.t[v]), 2)),)
    tree = _trusted_tree(
        tuple(spine) + tuple(leaf_nodes), tuple(edges), tuple(leaves), adj
    )
    dmax = 2 * max(inst.g[v] for v in inst.nodes) + k
    return PCGWitness(tree, Fraction(k), dmax)


def threshold_realize(a, tconst) -> Graph:
    """Single-threshold semantics: edge {v,w} iff a_v + a_w >= tconst.

    ``a`` maps node names to rational weights (any sign).  Equals the
    tolerance semantics with a constant tolerance once both sides are
    shifted into positive range; see as_tt_instance.
    """
    a = {str(k): _frac(v) for k, v in a.items()}
    tconst = _frac(tconst)
    names = tuple(a)
    edges = frozenset(
        edge_key(v, w)
        for i, v in enumerate(names)
        for w in names[i + 1 :]
        if a[v] + a[w] >= tconst
    )
    return Graph(names, edges)


def as_tt_instance(a, tconst) -> TTInstance:
    """Shift a threshold instance into a constant-tolerance TTInstance.

    Adding c to every weight and 2c to the threshold preserves all the
    inequalities; c is chosen to make every value positive.
    """
    a = {str(k): _frac(v) for k, v in a.items()}
    tconst = _frac(tconst)
    if not a:
        raise ThresholdError("threshold instance needs at least one node")
    shift = max(Fraction(0), *(-w for w in a.values()), -tconst / 2) + 1
    return tt_instance(
        tuple(a),
        {v: w + shift for v, w in a.items()},
        {v: tconst + 2 * shift for v in a},
    )
