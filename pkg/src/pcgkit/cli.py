"""Command-line front end.

Subcommands: tt-witness, eval, model, recognize, verify-paper, iso.
Exit statuses: 0 success (witness found / isomorphic / checks pass),
1 negative answer (not a PCG, non-isomorphic, failed checks),
2 usage or parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from .geometry import Disk, geometric_model, model_graph, paper_model, PAPER_MODEL_NAMES
from .graphs import are_isomorphic, graph_h
from .recognizer import recognize_pcg, RecognizerError
from .render import to_dot, to_svg
from .textio import (
    ParseError,
    format_certificate,
    format_graph,
    format_witness,
    parse_graph,
    parse_model,
    parse_tree,
    parse_tt,
)
from .threshold import integerize, tt_realize, tt_witness, tt_instance
from .trees import PCGWitness, is_caterpillar, leaf_distance_matrix, mlpg_eval, pcg_eval

OK, NEGATIVE, USAGE, IO = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _default_jobs() -> int:
    env = os.environ.get("PCG_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_tt_witness(args) -> int:
    inst = parse_tt(_read(args.input))
    witness = tt_witness(inst)
    _write(args.output, format_witness(witness))
    realized = tt_realize(inst)
    print(f"witness written to {args.output}; realized graph has {realized.edge_count} edges")
    return OK


def cmd_eval(args) -> int:
    tree, dmin, dmax = parse_tree(_read(args.input))
    if args.mode == "pcg":
        if dmin is None or dmax is None:
            raise ParseError("pcg mode needs dmin and dmax lines", 1)
        graph = pcg_eval(PCGWitness(tree, dmin, dmax))
    else:
        if dmin is None:
            raise ParseError("mlpg mode needs a dmin line", 1)
        graph = mlpg_eval(tree, dmin)
    sys.stdout.write(to_dot(graph) if args.dot else format_graph(graph))
    return OK


def cmd_model(args) -> int:
    model = parse_model(_read(args.input))
    graph = model_graph(model)
    if args.svg:
        _write(args.svg, to_svg(model))
    sys.stdout.write(to_dot(graph) if args.dot else format_graph(graph))
    return OK


def _progress_printer(done: int, total: int | None) -> None:
    if total:
        if done % 50 == 0 or done == total:
            print(f"\rtopologies {done}/{total}", end="", file=sys.stderr)
        if done == total:
            print(file=sys.stderr)
    elif done % 50 == 0:
        print(f"\rtopologies {done}/?", end="", file=sys.stderr)


def cmd_recognize(args) -> int:
    graph = parse_graph(_read(args.input))
    try:
        result = recognize_pcg(
            graph,
            jobs=args.jobs,
            symmetry=args.symmetry,
            labeling_pruning=args.labeling_pruning,
            quad_filter=not args.no_quad_filter,
            progress=_progress_printer if args.progress else None,
        )
    except RecognizerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if result.is_pcg:
        text = format_witness(result.witness)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        return OK
    text = format_certificate(result.certificate)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return NEGATIVE


def cmd_iso(args) -> int:
    g1 = parse_graph(_read(args.first))
    g2 = parse_graph(_read(args.second))
    mapping = are_isomorphic(g1, g2)
    if mapping is None:
        print("non-isomorphic")
        return NEGATIVE
    for u in g1.nodes:
        print(f"iso {u} {mapping[u]}")
    return OK


def _check(name: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail and not ok else ""
    print(f"{status} {name}{suffix}")
    return ok


def cmd_verify_paper(args) -> int:
    all_ok = True
    h = graph_h()

    for name in PAPER_MODEL_NAMES:
        got = model_graph(paper_model(name))
        all_ok &= _check(f"model {name} realizes H", got == h)

    # sensitivity canary: shrinking the radius-15 disks must break H
    tampered = geometric_model(
        {
            label: Disk(s.cx, s.cy, 14 if s.r == 15 else s.r)
            for label, s in paper_model("disks_h").shapes
        }
    )
    all_ok &= _check(
        "tampered disk model is detected", model_graph(tampered) != h
    )

    rng = random.Random(20260101)
    mismatches = 0
    for _ in range(60):
        n = rng.randrange(1, 11)
        nodes = [f"n{i}" for i in range(n)]
        if rng.random() < 0.5:
            g = {v: Fraction(rng.randrange(1, 21)) for v in nodes}
            t = {v: Fraction(rng.randrange(1, 21)) for v in nodes}
        else:
            g = {v: Fraction(rng.randrange(1, 21), rng.randrange(1, 7)) for v in nodes}
            t = {v: Fraction(rng.randrange(1, 21), rng.randrange(1, 7)) for v in nodes}
        inst = tt_instance(nodes, g, t)
        w = tt_witness(inst)
        if pcg_eval(w) != tt_realize(inst) or not is_caterpillar(w.tree):
            mismatches += 1
        if tt_realize(integerize(inst)) != tt_realize(inst):
            mismatches += 1
        scaled = integerize(inst)
        k = max(scaled.t.values())
        m = leaf_distance_matrix(w.tree)
        for i, u in enumerate(nodes):
            for v in nodes[i + 1 :]:
                want = scaled.g[u] + scaled.g[v] + k - min(scaled.t[u], scaled.t[v])
                if m[u][v] != want or m[u][v] < 2:
                    mismatches += 1
    all_ok &= _check("tolerance witness round trips (60 randomized)", mismatches == 0)

    if args.full:
        result = recognize_pcg(
            h, jobs=args.jobs, progress=_progress_printer if args.progress else None
        )
        ok = (
            not result.is_pcg
            and result.certificate.topologies == 10395
            and result.certificate.labelings == 10395 * 256
        )
        all_ok &= _check("exhaustive search: H is not a PCG", ok)
        if not result.is_pcg:
            sys.stdout.write(format_certificate(result.certificate))

    return OK if all_ok else NEGATIVE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcg",
        description="pairwise compatibility graph toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tt-witness", help="build the caterpillar witness for a tolerance instance")
    p.add_argument("input", help="ttgraph or threshold instance file")
    p.add_argument("output", help="witness file to write")
    p.set_defaults(func=cmd_tt_witness)

    p = sub.add_parser("eval", help="realize a witness file as a graph")
    p.add_argument("input", help="tree/witness file")
    p.add_argument("--mode", choices=("pcg", "mlpg"), default="pcg")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of graph text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("model", help="intersection graph of a geometric model file")
    p.add_argument("input", help="model file")
    p.add_argument("--svg", metavar="PATH", help="also render 2D models to SVG")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of graph text")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("recognize", help="exhaustive PCG membership for a small graph")
    p.add_argument("input", help="graph file")
    p.add_argument("-o", "--output", help="write the witness/certificate here instead of stdout")
    p.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (PCG_JOBS)")
    p.add_argument("--symmetry", action="store_true", help="solve one topology per automorphism orbit")
    p.add_argument("--labeling-pruning", action="store_true", help="reuse infeasibility cores across assignments")
    p.add_argument("--no-quad-filter", action="store_true", help="disable the four-point prefilter")
    p.add_argument("--progress", action="store_true", help="print progress counts to stderr")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("verify-paper", help="self-check the bundled models and constructions")
    p.add_argument("--full", action="store_true", help="include the exhaustive H search")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("iso", help="isomorphism mapping between two graph files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO


if __name__ == "__main__":
    sys.exit(main())
