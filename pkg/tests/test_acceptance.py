"""Exit criteria. Each test records a PASS/FAIL line shown in the terminal summary.

Tolerances are exact everywhere: zero failures, disagreements or mismatches.
Corpora are the complete ``geng -q n`` outputs stored under ``tests/data``.
"""

from __future__ import annotations

import os
import random
import time

import networkx as nx

from conftest import ACCEPTANCE, corpus_lines, corpus_upto
from gsc.cutsets import has_3edge_matching_cut, has_k4_minus, has_p3_cutset, is_3_connected
from gsc.graph import from_graph6, is_connected, to_graph6
from gsc.recognize import recognize, recognize_via_theorem
from gsc.sequence import build, extend_stable_set, random_gsc, reroot, validate
from gsc.verify import verify_corollary3, verify_theorem1, verify_theorem5
import oracles

WORKERS = min(8, os.cpu_count() or 1)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    print(ACCEPTANCE[number])
    assert ok, ACCEPTANCE[number]


def corpus_3_to_8() -> list[str]:
    return [line for n in range(3, 9) for line in corpus_lines(n)]


def count_connected(lines, keep) -> int:
    total = 0
    for line in lines:
        h = nx.from_graph6_bytes(line.encode())
        n, m = h.number_of_nodes(), h.number_of_edges()
        if nx.is_connected(h) and keep(n, m):
            total += 1
    return total


def test_criterion_1_theorem1_exhaustive():
    lines = corpus_3_to_8()
    start = time.perf_counter()
    rep = verify_theorem1(lines, workers=WORKERS, corpus_id="geng n=3..8")
    elapsed = time.perf_counter() - start
    expected = count_connected(lines, lambda n, m: m <= 2 * n - 4)
    ok = rep.failed == 0 and not rep.parse_errors and rep.processed == expected and elapsed < 300
    record(1, "Theorem 1, connected n=3..8, m<=2n-4", ok,
           f"processed={rep.processed}/{expected} failed={rep.failed} time={elapsed:.1f}s")


def test_criterion_2_theorem5_exhaustive():
    lines = corpus_3_to_8()
    rep = verify_theorem5(lines, workers=WORKERS, corpus_id="geng n=3..8")
    expected = count_connected(lines, lambda n, m: m <= 2 * n - 3)
    tight = count_connected(lines, lambda n, m: m == 2 * n - 3)
    ok = (
        rep.failed == 0
        and not rep.parse_errors
        and rep.processed == expected
        and rep.breakdown["exclusive-checked"] == tight
    )
    record(2, "Theorem 5, connected n=3..8, m<=2n-3, exclusive at 2n-3", ok,
           f"processed={rep.processed}/{expected} exclusive-checked={rep.breakdown['exclusive-checked']}/{tight} "
           f"members={rep.breakdown['member']} failed={rep.failed}")


def test_criterion_3_corollary_exhaustive():
    rep = verify_corollary3(corpus_upto(6), workers=WORKERS, corpus_id="geng n=1..6")
    ok = rep.failed == 0 and not rep.parse_errors and rep.processed > 0
    record(3, "Corollary 3, n<=6, every admissible x", ok,
           f"pairs={rep.processed} skipped={rep.skipped} failed={rep.failed}")


def test_criterion_4_recognizer_oracle_agreement():
    checked = disagreements = bad_certs = members = 0
    for line in corpus_upto(8):
        g = from_graph6(line)
        if g.n < 3 or g.m != 2 * g.n - 3 or not is_connected(g):
            continue
        checked += 1
        res = recognize(g)
        if res.member != recognize_via_theorem(g):
            disagreements += 1
        if res.member:
            members += 1
            if build(res.certificate) != g:
                bad_certs += 1
    ok = disagreements == 0 and bad_certs == 0 and checked > 0
    record(4, "recognize == recognize_via_theorem, connected n<=8, m=2n-3", ok,
           f"graphs={checked} members={members} disagreements={disagreements} bad certificates={bad_certs}")


def test_criterion_5_generator_closure():
    edge_law = cutsets = non_members = brute_checked = 0
    for seed in range(10_000):
        g = build(random_gsc(1 + seed % 8, seed))
        if g.m != 2 * g.n - 3:
            edge_law += 1
        if g.n <= 14:
            brute_checked += 1
            if oracles.has_stable_cutset(g):
                cutsets += 1
        res = recognize(g)
        if not res.member or build(res.certificate) != g:
            non_members += 1
    violations = edge_law + cutsets + non_members
    record(5, "10,000 random sequences: m=2n-3, no stable cutset (n<=14), member", violations == 0,
           f"edge-law={edge_law} cutsets={cutsets}/{brute_checked} non-members={non_members}")


def test_criterion_6_reroot():
    violations = checks = 0
    for seed in range(1000):
        s = random_gsc(1 + seed % 8, seed)
        g = build(s)
        for i in range(len(s)):
            checks += 1
            r = reroot(s, i)
            if validate(r) or r[0].vertices != s[i].vertices or r[0].kind is not s[i].kind or build(r) != g:
                violations += 1
    record(6, "reroot on 1,000 random sequences, every index", violations == 0,
           f"reroots={checks} violations={violations}")


def test_criterion_7_extend_stable_set():
    violations = 0
    for seed in range(1000):
        rng = random.Random(seed)
        s = random_gsc(1 + seed % 8, seed, apex=True, normalized=True)
        k = rng.randint(1, len(s))
        prefix = build(s.prefix(k))
        X: set[int] = set()
        for t in rng.sample(range(1, prefix.n), prefix.n - 1):
            if rng.random() < 0.5 and not any(prefix.has_edge(t, x) for x in X):
                X.add(t)
        out = extend_stable_set(s, k, X, 0)
        if not (X <= out and 0 not in out and build(s).is_stable(sum(1 << x for x in out))):
            violations += 1
    record(7, "extend_stable_set on 1,000 normalised apex sequences", violations == 0, f"violations={violations}")


def test_criterion_8_predicate_oracles():
    disagreements = {"matching-cut": 0, "p3-cutset": 0, "k4-minus": 0, "3-connected": 0}
    graphs = 0
    for line in corpus_upto(7):
        g = from_graph6(line)
        graphs += 1
        if (has_k4_minus(g) is not None) != oracles.k4_minus_exists(g):
            disagreements["k4-minus"] += 1
        if is_3_connected(g) != oracles.three_connected(g):
            disagreements["3-connected"] += 1
        if not is_connected(g):
            continue
        if (has_3edge_matching_cut(g) is not None) != oracles.matching_cut_exists(g):
            disagreements["matching-cut"] += 1
        if (has_p3_cutset(g) is not None) != oracles.p3_cutset_exists(g):
            disagreements["p3-cutset"] += 1
    ok = not any(disagreements.values())
    record(8, "predicates vs brute force, all graphs n<=7", ok,
           f"graphs={graphs} " + " ".join(f"{k}={v}" for k, v in disagreements.items()))


def test_criterion_9_graph6_round_trip():
    mismatches = 0
    lines = corpus_upto(7)
    for line in lines:
        g = from_graph6(line)
        if to_graph6(g) != line or from_graph6(to_graph6(g)) != g:
            mismatches += 1
    record(9, "graph6 round trip, all graphs n<=7", mismatches == 0, f"graphs={len(lines)} mismatches={mismatches}")
