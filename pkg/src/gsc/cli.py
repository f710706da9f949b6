"""Command-line entry point: ``gsc <subcommand> ...``.

Exit status: 0 on success, 1 when a verification finds counterexamples, 2 on
usage errors, unreadable files or malformed graphs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Iterator, Sequence, TextIO

from .cutsets import NotConnectedError, audit_claims, find_stable_cutset, has_3edge_matching_cut
from .dot import to_dot
from .graph import Graph, Graph6Error, from_graph6, is_connected, to_graph6
from .recognize import recognize
from .sequence import GeneratingSequence, InvalidSequenceError, build, random_gsc
from .verify import DEFAULT_CHUNK, THEOREMS, default_workers, run_verification


class UsageError(Exception):
    pass


def _open_inputs(paths: Sequence[str] | None) -> Iterator[tuple[str, TextIO]]:
    for path in paths or ["-"]:
        if path == "-":
            yield "<stdin>", sys.stdin
            continue
        try:
            fh = open(path, encoding="ascii")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
        with fh:
            yield path, fh


def _graphs(paths: Sequence[str] | None) -> Iterator[tuple[str, Graph]]:
    for name, fh in _open_inputs(paths):
        for no, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                yield text, from_graph6(text)
            except Graph6Error as exc:
                raise UsageError(f"{name}:{no}: {exc}") from exc


def _emit(obj: object) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_verify(args: argparse.Namespace) -> int:
    lines: list[str] = []
    names = []
    for name, fh in _open_inputs(args.inputs):
        names.append(name)
        lines.extend(fh)
    rep = run_verification(
        args.theorem,
        lines,
        corpus_id=",".join(names),
        workers=args.workers,
        chunk_size=args.chunk_size,
        keep_witnesses=args.witnesses,
        vertices=args.vertex,
    )
    if args.format == "json":
        _emit(rep.to_json())
    else:
        print(rep.summary())
        for c in rep.counterexamples:
            print(f"  counterexample line {c.line_no}: {c.graph6} ({c.detail})")
        for p in rep.parse_errors:
            print(f"  parse error line {p.line_no}: {p.error}", file=sys.stderr)
    if rep.parse_errors:
        return 2
    return 1 if rep.failed else 0


def cmd_cutset(args: argparse.Namespace) -> int:
    for text, g in _graphs(args.inputs):
        avoid = () if args.avoid is None else (args.avoid,)
        if args.avoid is not None and not 0 <= args.avoid < g.n:
            raise UsageError(f"vertex {args.avoid} not in graph {text}")
        cert = find_stable_cutset(g, avoid=avoid)
        if args.format == "dot":
            sys.stdout.write(to_dot(g, marked_vertices=cert.cutset if cert else ()))
        elif args.format == "text":
            print("none" if cert is None else " ".join(map(str, sorted(cert.cutset))))
        else:
            _emit(None if cert is None else cert.to_json())
    return 0


def _connected(text: str, g: Graph) -> None:
    if not is_connected(g) or g.n < 3:
        raise UsageError(f"{text}: need a connected graph on at least 3 vertices")


def cmd_recognize(args: argparse.Namespace) -> int:
    for text, g in _graphs(args.inputs):
        _connected(text, g)
        res = recognize(g)
        if args.format == "text":
            print(f"{text} {res.verdict}" + (f" pieces={len(res.certificate)}" if res.certificate else ""))
        else:
            _emit(res.to_json())
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    for text, g in _graphs(args.inputs):
        try:
            audit = audit_claims(g)
        except NotConnectedError as exc:
            raise UsageError(f"{text}: {exc}") from exc
        if args.format == "text":
            for claim, r in sorted(audit.results.items()):
                print(f"claim {claim}: {'holds' if r.holds else 'fails'}")
        else:
            _emit(audit.to_json())
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.pieces < 1:
        raise UsageError("--pieces must be at least 1")
    s = random_gsc(args.pieces, args.seed)
    if args.emit == "sequence":
        _emit(s.to_json())
        return 0
    g = build(s)
    if args.emit == "dot":
        sys.stdout.write(to_dot(g))
    else:
        print(to_graph6(g))
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    if args.source == "sequence":
        graphs = []
        for name, fh in _open_inputs(args.inputs):
            try:
                graphs.append(build(GeneratingSequence.from_json(json.load(fh))))
            except (ValueError, KeyError, TypeError, InvalidSequenceError) as exc:
                raise UsageError(f"{name}: bad generating sequence: {exc}") from exc
    else:
        graphs = [g for _, g in _graphs(args.inputs)]
    for g in graphs:
        if args.target == "graph6":
            print(to_graph6(g))
        else:
            cut = has_3edge_matching_cut(g) if args.mark_matching_cut and is_connected(g) else None
            sys.stdout.write(to_dot(g, marked_edges=cut.edges if cut else ()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsc", description="Stable cutsets and the K3/prism gluing class.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="inputs", nargs="+", metavar="FILE", help="graph6 files ('-' for stdin)")

    p = sub.add_parser("verify", help="check a theorem over a graph6 corpus")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    inputs(p)
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: $GSC_WORKERS or 1)")
    p.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK)
    p.add_argument("--vertex", type=int, action="append", help="restrict x for cor3 (repeatable)")
    p.add_argument("--witnesses", action="store_true", help="include passing witnesses in the report")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cutset", help="find a stable cutset")
    p.add_argument("--avoid", type=int, metavar="VERTEX")
    inputs(p)
    p.add_argument("--format", choices=("json", "text", "dot"), default="json")
    p.set_defaults(func=cmd_cutset)

    p = sub.add_parser("recognize", help="decide membership with a generating sequence")
    inputs(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("gen", help="random member from a random generating sequence")
    p.add_argument("--pieces", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--emit", choices=("graph6", "dot", "sequence"), default="graph6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("audit", help="evaluate the minimal-counterexample claims 6-14")
    inputs(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("convert", help="format translation")
    p.add_argument("--from", dest="source", choices=("graph6", "sequence"), default="graph6")
    p.add_argument("--to", dest="target", choices=("dot", "graph6"), default="dot")
    p.add_argument("--mark-matching-cut", action="store_true", help="highlight a 3-edge matching cut in DOT")
    inputs(p)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "workers", None) is None and args.command == "verify":
        args.workers = default_workers()
    if getattr(args, "workers", 1) < 1:
        print("gsc: --workers must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gsc: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
