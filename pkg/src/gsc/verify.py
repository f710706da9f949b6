"""Exhaustive checks of the stable-cutset theorems over graph6 corpora.

Corpora come from an external enumerator (e.g. nauty's ``geng``), one graph
per line. Lines are processed in chunks, optionally across worker processes,
and the per-chunk reports are merged; merging is associative and commutative
so the result does not depend on the reduction order.
"""

from __future__ import annotations

import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import islice
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

from .cutsets import cut_vertices, find_stable_cutset
from .graph import Graph, Graph6Error, from_graph6, is_connected
from .recognize import recognize

log = logging.getLogger(__name__)

THEOREMS = ("1", "5", "cor3")
DEFAULT_CHUNK = 1024


class Counterexample(NamedTuple):
    line_no: int
    graph6: str
    detail: str


class ParseFailure(NamedTuple):
    line_no: int
    text: str
    error: str


class Witness(NamedTuple):
    line_no: int
    graph6: str
    witness: Any


@dataclass
class VerificationReport:
    theorem: str
    corpus_id: str = "<stream>"
    processed: int = 0
    skipped: int = 0
    passed: int = 0
    failed: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    parse_errors: list[ParseFailure] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
    breakdown: Counter = field(default_factory=Counter)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and not self.parse_errors

    def merge(self, other: VerificationReport) -> VerificationReport:
        if (self.theorem, self.corpus_id) != (other.theorem, other.corpus_id):
            raise ValueError("can only merge reports of the same theorem and corpus")
        return VerificationReport(
            theorem=self.theorem,
            corpus_id=self.corpus_id,
            processed=self.processed + other.processed,
            skipped=self.skipped + other.skipped,
            passed=self.passed + other.passed,
            failed=self.failed + other.failed,
            counterexamples=sorted(self.counterexamples + other.counterexamples),
            parse_errors=sorted(self.parse_errors + other.parse_errors),
            witnesses=sorted(self.witnesses + other.witnesses, key=lambda w: w[:2]),
            breakdown=self.breakdown + other.breakdown,
            wall_time=self.wall_time + other.wall_time,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "corpus": self.corpus_id,
            "processed": self.processed,
            "skipped": self.skipped,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": [c._asdict() for c in self.counterexamples],
            "parseErrors": [p._asdict() for p in self.parse_errors],
            "witnesses": [{"line_no": w.line_no, "graph6": w.graph6, "witness": w.witness} for w in self.witnesses],
            "breakdown": dict(sorted(self.breakdown.items())),
            "wallTime": round(self.wall_time, 3),
        }

    def summary(self) -> str:
        status = "OK" if self.ok else "FAILED"
        parts = ", ".join(f"{k}={v}" for k, v in sorted(self.breakdown.items()))
        return (
            f"theorem {self.theorem} on {self.corpus_id}: {status} "
            f"processed={self.processed} passed={self.passed} failed={self.failed} "
            f"skipped={self.skipped} parse_errors={len(self.parse_errors)} [{parts}] "
            f"({self.wall_time:.2f}s)"
        )


# ---------------------------------------------------------------------------
# per-graph checks; each records into ``rep`` directly


def _check_theorem1(rep: VerificationReport, g: Graph, line_no: int, line: str, keep: bool, vertices: Any) -> None:
    if g.m > 2 * g.n - 4:
        rep.skipped += 1
        rep.breakdown["skipped:regime"] += 1
        return
    rep.processed += 1
    cert = find_stable_cutset(g)
    if cert is not None and cert.is_valid(g):
        rep.passed += 1
        if keep:
            rep.witnesses.append(Witness(line_no, line, cert.to_json()))
    else:
        rep.failed += 1
        rep.counterexamples.append(Counterexample(line_no, line, "no stable cutset with m <= 2n-4"))


def _check_cor3(rep: VerificationReport, g: Graph, line_no: int, line: str, keep: bool, vertices: Any) -> None:
    if g.m > 2 * g.n - 4:
        rep.skipped += 1
        rep.breakdown["skipped:regime"] += 1
        return
    cuts = cut_vertices(g)
    chosen = range(g.n) if vertices is None else [x for x in vertices if 0 <= x < g.n]
    for x in chosen:
        if cuts == [x]:
            rep.skipped += 1
            rep.breakdown["skipped:unique-cut-vertex"] += 1
            continue
        rep.processed += 1
        cert = find_stable_cutset(g, avoid=(x,))
        if cert is not None and x not in cert.cutset and cert.is_valid(g):
            rep.passed += 1
            if keep:
                rep.witnesses.append(Witness(line_no, line, {"x": x, **cert.to_json()}))
        else:
            rep.failed += 1
            rep.counterexamples.append(Counterexample(line_no, line, f"no stable cutset avoiding {x}"))


def _check_theorem5(rep: VerificationReport, g: Graph, line_no: int, line: str, keep: bool, vertices: Any) -> None:
    if g.m > 2 * g.n - 3 or g.n < 3:
        rep.skipped += 1
        rep.breakdown["skipped:regime"] += 1
        return
    rep.processed += 1
    cert = find_stable_cutset(g)
    has_cut = cert is not None and cert.is_valid(g)
    member = False
    if g.m == 2 * g.n - 3:
        result = recognize(g)
        member = result.member
        if member and result.certificate is None:
            member = False
    if has_cut and member:
        rep.failed += 1
        rep.counterexamples.append(Counterexample(line_no, line, "member of the class but has a stable cutset"))
    elif not has_cut and not member:
        rep.failed += 1
        rep.counterexamples.append(Counterexample(line_no, line, "neither a stable cutset nor a member"))
    else:
        rep.passed += 1
        rep.breakdown["member" if member else "cutset"] += 1
        if g.m == 2 * g.n - 3:
            rep.breakdown["exclusive-checked"] += 1
        if keep:
            rep.witnesses.append(Witness(line_no, line, result.to_json() if member else cert.to_json()))


_CHECKS = {"1": _check_theorem1, "cor3": _check_cor3, "5": _check_theorem5}


def _run_chunk(
    theorem: str, corpus_id: str, chunk: Sequence[tuple[int, str]], keep: bool, vertices: Any
) -> VerificationReport:
    start = time.perf_counter()
    rep = VerificationReport(theorem, corpus_id)
    check = _CHECKS[theorem]
    for line_no, line in chunk:
        try:
            g = from_graph6(line)
        except Graph6Error as exc:
            rep.parse_errors.append(ParseFailure(line_no, line, str(exc)))
            continue
        if g.n < 1 or not is_connected(g):
            rep.skipped += 1
            rep.breakdown["skipped:disconnected"] += 1
            continue
        check(rep, g, line_no, line, keep, vertices)
    rep.wall_time = time.perf_counter() - start
    return rep


def _chunks(corpus: Iterable[str], size: int) -> Iterator[list[tuple[int, str]]]:
    numbered = ((i, line.strip()) for i, line in enumerate(corpus, 1))
    numbered = ((i, line) for i, line in numbered if line)
    while chunk := list(islice(numbered, size)):
        yield chunk


def default_workers() -> int:
    return max(1, int(os.environ.get("GSC_WORKERS", "1")))


def run_verification(
    theorem: str,
    corpus: Iterable[str],
    *,
    corpus_id: str = "<stream>",
    workers: int | None = None,
    chunk_size: int = DEFAULT_CHUNK,
    keep_witnesses: bool = False,
    vertices: Iterable[int] | None = None,
) -> VerificationReport:
    if theorem not in _CHECKS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")
    if chunk_size < 1:
        raise ValueError("chunk size must be positive")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise ValueError("parallelism must be at least 1")
    vs = None if vertices is None else tuple(vertices)
    start = time.perf_counter()
    empty = VerificationReport(theorem, corpus_id)
    chunks = _chunks(corpus, chunk_size)
    if workers == 1:
        reports = (_run_chunk(theorem, corpus_id, c, keep_witnesses, vs) for c in chunks)
        rep = reduce(VerificationReport.merge, reports, empty)
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_run_chunk, theorem, corpus_id, c, keep_witnesses, vs) for c in chunks]
            rep = reduce(VerificationReport.merge, (f.result() for f in futures), empty)
    rep.wall_time = time.perf_counter() - start
    log.info(rep.summary())
    return rep


def verify_theorem1(corpus: Iterable[str], **options: Any) -> VerificationReport:
    """Every connected graph with at most 2n-4 edges has a stable cutset."""
    return run_verification("1", corpus, **options)


def verify_corollary3(corpus: Iterable[str], vertices: Iterable[int] | None = None, **options: Any) -> VerificationReport:
    """With at most 2n-4 edges, a stable cutset avoids any ``x`` that is not the unique cut vertex.

    ``vertices`` restricts the choices of ``x``; by default every vertex is tried.
    Work is counted per (graph, x) pair.
    """
    return run_verification("cor3", corpus, vertices=vertices, **options)


def verify_theorem5(corpus: Iterable[str], **options: Any) -> VerificationReport:
    """At most 2n-3 edges: a stable cutset or membership, exclusively at 2n-3 edges."""
    return run_verification("5", corpus, **options)
