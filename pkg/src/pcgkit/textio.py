"""Line-oriented text formats for graphs, trees/witnesses, threshold
tolerance instances, geometric models and exhaustion certificates.

All numbers are exact rationals written ``p/q`` (always with an explicit
denominator on output; bare integers accepted on input).  ``#`` starts a
comment; blank lines are ignored.  Every emitter round-trips through its
parser to an equal value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .geometry import (
    Arc,
    Box,
    Disk,
    GeometricModel,
    HSeg,
    Rect,
    Shape,
    SpecialParallelepiped,
    SppSegment,
    VSeg,
    geometric_model,
)
from .graphs import Graph, graph_from_edges
from .recognizer import Certificate
from .threshold import TTInstance, as_tt_instance, tt_instance
from .trees import PCGWitness, WeightedTree, weighted_tree


class ParseError(ValueError):
    """Parse failure with a line/column diagnostic."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


Token = tuple[int, str]  # (column, text)


def _lines(text: str) -> Iterator[tuple[int, list[Token]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hash_at = raw.find("#")
        if hash_at >= 0:
            raw = raw[:hash_at]
        tokens: list[Token] = []
        col = 0
        for piece in raw.split():
            col = raw.index(piece, col)
            tokens.append((col + 1, piece))
            col += len(piece)
        if tokens:
            yield lineno, tokens


def _rational(token: Token, lineno: int) -> Fraction:
    col, text = token
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r} ({exc})", lineno, col) from None


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _expect(tokens: list[Token], count: int, lineno: int, what: str) -> None:
    if len(tokens) != count:
        raise ParseError(
            f"{what} needs {count - 1} fields, got {len(tokens) - 1}",
            lineno,
            tokens[0][0],
        )


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty graph file", 1) from None
    if header[0][1] != "graph":
        raise ParseError("expected 'graph <n>' header", lineno, header[0][0])
    _expect(header, 2, lineno, "graph header")
    try:
        declared = int(header[1][1])
    except ValueError:
        raise ParseError("node count must be an integer", lineno, header[1][0]) from None
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, tokens in lines:
        kind = tokens[0][1]
        if kind == "node":
            _expect(tokens, 2, lineno, "node line")
            nodes.append(tokens[1][1])
        elif kind == "edge":
            _expect(tokens, 3, lineno, "edge line")
            edges.append((tokens[1][1], tokens[2][1]))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, tokens[0][0])
    if len(nodes) != declared:
        raise ParseError(
            f"header declares {declared} nodes, file lists {len(nodes)}", lineno if nodes else 1
        )
    try:
        return graph_from_edges(nodes, edges)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None


def format_graph(graph: Graph) -> str:
    out = [f"graph {graph.node_count}"]
    out.extend(f"node {v}" for v in graph.nodes)
    out.extend(f"edge {u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# trees and witnesses
# ---------------------------------------------------------------------------


def parse_tree(text: str) -> tuple[WeightedTree, Fraction | None, Fraction | None]:
    """Parse a tree file; dmin/dmax lines are optional (witness files)."""
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty tree file", 1) from None
    if header[0][1] != "tree" or len(header) != 1:
        raise ParseError("expected bare 'tree' header", lineno, header[0][0])
    nodes: list[str] = []
    edges: list[tuple[str, str, Fraction]] = []
    leaves: list[tuple[str, str]] = []
    dmin = dmax = None
    for lineno, tokens in lines:
        kind = tokens[0][1]
        if kind == "tnode":
            _expect(tokens, 2, lineno, "tnode line")
            nodes.append(tokens[1][1])
        elif kind == "leaf":
            _expect(tokens, 3, lineno, "leaf line")
            leaves.append((tokens[1][1], tokens[2][1]))
        elif kind == "tedge":
            _expect(tokens, 4, lineno, "tedge line")
            edges.append(
                (tokens[1][1], tokens[2][1], _rational(tokens[3], lineno))
            )
        elif kind == "dmin":
            _expect(tokens, 2, lineno, "dmin line")
            dmin = _rational(tokens[1], lineno)
        elif kind == "dmax":
            _expect(tokens, 2, lineno, "dmax line")
            dmax = _rational(tokens[1], lineno)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, tokens[0][0])
    try:
        tree = weighted_tree(nodes, edges, leaves)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None
    return tree, dmin, dmax


def parse_witness(text: str) -> PCGWitness:
    tree, dmin, dmax = parse_tree(text)
    if dmin is None or dmax is None:
        raise ParseError("witness file needs dmin and dmax lines", 1)
    return PCGWitness(tree, dmin, dmax)


def format_tree(tree: WeightedTree) -> str:
    out = ["tree"]
    out.extend(f"tnode {v}" for v in tree.nodes)
    out.extend(f"leaf {t} {g}" for t, g in tree.leaves)
    out.extend(
        f"tedge {u} {v} {format_rational(w)}" for u, v, w in tree.edges
    )
    return "\n".join(out) + "\n"


def format_witness(witness: PCGWitness) -> str:
    return (
        format_tree(witness.tree)
        + f"dmin {format_rational(witness.dmin)}\n"
        + f"dmax {format_rational(witness.dmax)}\n"
    )


# ---------------------------------------------------------------------------
# threshold tolerance instances
# ---------------------------------------------------------------------------


def _keyed_rational(tokens: list[Token], at: int, key: str, lineno: int) -> Fraction:
    col, text = tokens[at]
    if not text.startswith(key + "="):
        raise ParseError(f"expected {key}=<value>", lineno, col)
    return _rational((col + len(key) + 1, text[len(key) + 1 :]), lineno)


def parse_tt(text: str) -> TTInstance:
    """Parse either header: 'ttgraph' (per-node g and t) or
    'threshold <t>' (per-node a, converted to constant tolerances)."""
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty instance file", 1) from None
    kind = header[0][1]
    if kind == "ttgraph":
        _expect(header, 1, lineno, "ttgraph header")
        nodes: list[str] = []
        g: dict[str, Fraction] = {}
        t: dict[str, Fraction] = {}
        for lineno, tokens in lines:
            if tokens[0][1] != "node":
                raise ParseError(
                    f"unknown directive {tokens[0][1]!r}", lineno, tokens[0][0]
                )
            _expect(tokens, 4, lineno, "node line")
            name = tokens[1][1]
            nodes.append(name)
            g[name] = _keyed_rational(tokens, 2, "g", lineno)
            t[name] = _keyed_rational(tokens, 3, "t", lineno)
        try:
            return tt_instance(nodes, g, t)
        except ValueError as exc:
            raise ParseError(str(exc), 1) from None
    if kind == "threshold":
        _expect(header, 2, lineno, "threshold header")
        tconst = _rational(header[1], lineno)
        a: dict[str, Fraction] = {}
        for lineno, tokens in lines:
            if tokens[0][1] != "node":
                raise ParseError(
                    f"unknown directive {tokens[0][1]!r}", lineno, tokens[0][0]
                )
            _expect(tokens, 3, lineno, "node line")
            a[tokens[1][1]] = _keyed_rational(tokens, 2, "a", lineno)
        if not a:
            raise ParseError("threshold file lists no nodes", lineno)
        return as_tt_instance(a, tconst)
    raise ParseError("expected 'ttgraph' or 'threshold <t>' header", lineno, header[0][0])


def format_tt(inst: TTInstance) -> str:
    out = ["ttgraph"]
    out.extend(
        f"node {v} g={format_rational(inst.g[v])} t={format_rational(inst.t[v])}"
        for v in inst.nodes
    )
    return "\n".join(out) + "\n"


def format_threshold(a: dict[str, Fraction], tconst: Fraction) -> str:
    out = [f"threshold {format_rational(Fraction(tconst))}"]
    out.extend(f"node {v} a={format_rational(Fraction(w))}" for v, w in a.items())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# geometric models
# ---------------------------------------------------------------------------

_SHAPE_FIELDS = {
    "disk": 3,
    "hseg": 3,
    "vseg": 3,
    "arc": 2,
    "rect": 4,
    "box": 6,
    "spp": 5,
    "sppseg": 3,
}


def parse_model(text: str) -> GeometricModel:
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty model file", 1) from None
    if header[0][1] != "model":
        raise ParseError("expected 'model <2d|3d>' header", lineno, header[0][0])
    _expect(header, 2, lineno, "model header")
    dim_text = header[1][1]
    if dim_text not in ("2d", "3d"):
        raise ParseError("model dimension must be 2d or 3d", lineno, header[1][0])
    declared = 2 if dim_text == "2d" else 3
    shapes: dict[str, Shape] = {}
    for lineno, tokens in lines:
        kind = tokens[0][1]
        if kind not in _SHAPE_FIELDS:
            raise ParseError(f"unknown shape kind {kind!r}", lineno, tokens[0][0])
        _expect(tokens, _SHAPE_FIELDS[kind] + 2, lineno, f"{kind} line")
        label = tokens[1][1]
        if label in shapes:
            raise ParseError(f"duplicate label {label!r}", lineno, tokens[1][0])
        nums = [_rational(tok, lineno) for tok in tokens[2:]]
        try:
            if kind == "disk":
                shape: Shape = Disk(*nums)
            elif kind == "hseg":
                shape = HSeg(*nums)
            elif kind == "vseg":
                shape = VSeg(*nums)
            elif kind == "arc":
                shape = Arc(*nums)
            elif kind == "rect":
                shape = Rect(*nums)
            elif kind == "box":
                shape = Box(*nums)
            elif kind == "spp":
                shape = SpecialParallelepiped(*nums)
            else:
                shape = SppSegment(*nums)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, tokens[0][0]) from None
        if shape.dimensions != declared:
            raise ParseError(
                f"{kind} is {shape.dimensions}d but header says {dim_text}",
                lineno,
                tokens[0][0],
            )
        shapes[label] = shape
    try:
        return geometric_model(shapes)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None


def format_model(model: GeometricModel) -> str:
    out = [f"model {model.dimensions}d"]
    fr = format_rational
    for label, s in model.shapes:
        if isinstance(s, Disk):
            out.append(f"disk {label} {fr(s.cx)} {fr(s.cy)} {fr(s.r)}")
        elif isinstance(s, HSeg):
            out.append(f"hseg {label} {fr(s.y)} {fr(s.x1)} {fr(s.x2)}")
        elif isinstance(s, VSeg):
            out.append(f"vseg {label} {fr(s.x)} {fr(s.y1)} {fr(s.y2)}")
        elif isinstance(s, Arc):
            out.append(f"arc {label} {fr(s.start)} {fr(s.end)}")
        elif isinstance(s, Rect):
            out.append(f"rect {label} {fr(s.x1)} {fr(s.y1)} {fr(s.x2)} {fr(s.y2)}")
        elif isinstance(s, Box):
            out.append(
                f"box {label} {fr(s.x1)} {fr(s.y1)} {fr(s.z1)}"
                f" {fr(s.x2)} {fr(s.y2)} {fr(s.z2)}"
            )
        elif isinstance(s, SpecialParallelepiped):
            out.append(
                f"spp {label} {fr(s.a)} {fr(s.b)} {fr(s.c)} {fr(s.d)} {fr(s.z)}"
            )
        elif isinstance(s, SppSegment):
            out.append(f"sppseg {label} {fr(s.a)} {fr(s.b)} {fr(s.z)}")
        else:
            raise ValueError(f"unknown shape type {type(s).__name__}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def format_certificate(cert: Certificate) -> str:
    return str(cert) + "\n"


def parse_certificate(text: str) -> Certificate:
    for lineno, tokens in _lines(text):
        if tokens[0][1] != "not-pcg":
            raise ParseError("expected 'not-pcg' line", lineno, tokens[0][0])
        _expect(tokens, 4, lineno, "certificate")
        fields = {}
        for col, tok in tokens[1:]:
            key, _, value = tok.partition("=")
            try:
                fields[key] = int(value)
            except ValueError:
                raise ParseError(f"bad field {tok!r}", lineno, col) from None
        missing = {"nodes", "topologies", "labelings"} - set(fields)
        if missing:
            raise ParseError(f"missing fields {sorted(missing)}", lineno)
        return Certificate(fields["nodes"], fields["topologies"], fields["labelings"])
    raise ParseError("empty certificate file", 1)
