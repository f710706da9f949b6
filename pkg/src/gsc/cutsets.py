"""Stable cutsets and the structural predicates of a minimal counterexample.

All searches walk candidates in lexicographic order of sorted vertex ids and
return the first hit, so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Iterator

from .graph import (
    Graph,
    component_masks,
    is_connected,
    iter_bits,
    to_mask,
    to_set,
    triangles,
)


class NotConnectedError(ValueError):
    pass


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnectedError("input graph must be connected")


@dataclass(frozen=True)
class Separation:
    """A vertex set whose removal leaves two non-empty, non-adjacent sides."""

    cutset: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]

    def is_valid(self, g: Graph) -> bool:
        if not self.side_a or not self.side_b:
            return False
        parts = (self.cutset, self.side_a, self.side_b)
        if sum(map(len, parts)) != g.n or frozenset().union(*parts) != frozenset(range(g.n)):
            return False
        b = to_mask(self.side_b)
        return all(not g.adj[v] & b for v in self.side_a)

    def to_json(self) -> dict[str, list[int]]:
        return {"cutset": sorted(self.cutset), "sideA": sorted(self.side_a), "sideB": sorted(self.side_b)}

    @classmethod
    def from_json(cls, data: dict[str, list[int]]) -> Separation:
        return cls(frozenset(data["cutset"]), frozenset(data["sideA"]), frozenset(data["sideB"]))


class StableCutsetCertificate(Separation):
    def is_valid(self, g: Graph) -> bool:
        return g.is_stable(to_mask(self.cutset)) and super().is_valid(g)


def _separation(g: Graph, cut: int, cls: type[Separation] = Separation) -> Separation | None:
    comps = component_masks(g, g.full_mask & ~cut)
    if len(comps) < 2:
        return None
    rest = 0
    for c in comps[1:]:
        rest |= c
    return cls(to_set(cut), to_set(comps[0]), to_set(rest))


# ---------------------------------------------------------------------------
# stable cutsets


def _shortest_path(g: Graph, a: int, b: int, alive: int) -> list[int] | None:
    parent = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            out = [b]
            while out[-1] != a:
                out.append(parent[out[-1]])
            return out[::-1]
        for w in iter_bits(g.adj[u] & alive):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def _separate(g: Graph, a: int, b: int, forbidden: int) -> int | None:
    """A stable set avoiding ``forbidden`` that separates ``a`` from ``b``.

    Any such set must hit every a-b path. Take a shortest path in what is left
    and branch on which of its undecided vertices is the first one in the
    cutset; vertices adjacent to the cutset are ruled out to keep it stable.
    """
    full = g.full_mask

    def search(cut: int, out: int) -> int | None:
        route = _shortest_path(g, a, b, full & ~cut)
        if route is None:
            return cut
        skipped = 0
        for p in route[1:-1]:
            if out >> p & 1:
                continue
            found = search(cut | 1 << p, out | skipped | g.adj[p])
            if found is not None:
                return found
            skipped |= 1 << p
        return None

    return search(0, forbidden | 1 << a | 1 << b)


def find_stable_cutset(g: Graph, avoid: Iterable[int] = ()) -> StableCutsetCertificate | None:
    """First stable cutset in search order, or ``None`` if there is none.

    A disconnected graph yields the empty cutset. Vertices in ``avoid`` are
    never put into the cutset.
    """
    if g.n < 2:
        return None
    comps = component_masks(g)
    if len(comps) > 1:
        return _separation(g, 0, StableCutsetCertificate)
    forbidden = to_mask(avoid)
    # if S separates G then S separates 0, or (when 0 is in S) its first
    # neighbour, from something; so these two sources cover every S
    sources = [0]
    first_nb = (g.adj[0] & -g.adj[0]).bit_length() - 1
    if not forbidden & 1:
        sources.append(first_nb)
    for a in sources:
        for b in range(g.n):
            if b == a or g.has_edge(a, b):
                continue
            cut = _separate(g, a, b, forbidden)
            if cut is not None:
                return _separation(g, cut, StableCutsetCertificate)
    return None


def find_stable_cutset_avoiding(g: Graph, x: int) -> StableCutsetCertificate | None:
    return find_stable_cutset(g, avoid=(x,))


def cut_vertices(g: Graph) -> list[int]:
    _require_connected(g)
    full = g.full_mask
    return [v for v in range(g.n) if g.n > 2 and not is_connected(g, full & ~(1 << v))]


# ---------------------------------------------------------------------------
# clique, path and matching cuts


def clique_cutsets(g: Graph, sizes: Iterable[int] = (2, 3)) -> Iterator[tuple[tuple[int, ...], Separation]]:
    """Every edge / triangle (per ``sizes``) whose removal disconnects ``g``."""
    _require_connected(g)
    sizes = set(sizes)
    if not sizes <= {2, 3}:
        raise ValueError("clique sizes must be drawn from {2, 3}")
    candidates: list[tuple[int, ...]] = []
    if 2 in sizes:
        candidates.extend(g.edges())
    if 3 in sizes:
        candidates.extend(triangles(g))
    for clique in sorted(candidates):
        sep = _separation(g, to_mask(clique))
        if sep is not None:
            yield clique, sep


def has_clique_cutset(g: Graph, sizes: Iterable[int] = (2, 3)) -> tuple[tuple[int, ...], Separation] | None:
    return next(clique_cutsets(g, sizes), None)


def has_p3_cutset(g: Graph) -> tuple[tuple[int, int, int], Separation] | None:
    """A cutset of three vertices inducing a path; the path is returned end-middle-end."""
    _require_connected(g)
    for triple in combinations(range(g.n), 3):
        mask = to_mask(triple)
        inner = [v for v in triple if (g.adj[v] & mask).bit_count() == 2]
        if len(inner) != 1 or sum((g.adj[v] & mask).bit_count() for v in triple) != 4:
            continue
        sep = _separation(g, mask)
        if sep is not None:
            mid = inner[0]
            ends = [v for v in triple if v != mid]
            return (ends[0], mid, ends[1]), sep
    return None


@dataclass(frozen=True)
class MatchingCutCertificate:
    side_a: frozenset[int]
    side_b: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    def is_valid(self, g: Graph) -> bool:
        if not self.side_a or not self.side_b or self.side_a & self.side_b:
            return False
        if self.side_a | self.side_b != frozenset(range(g.n)):
            return False
        crossing = sorted((min(u, v), max(u, v)) for u, v in g.edges() if (u in self.side_a) != (v in self.side_a))
        ends = [v for e in crossing for v in e]
        return crossing == sorted(self.edges) and len(crossing) == 3 and len(set(ends)) == 6

    def to_json(self) -> dict[str, Any]:
        return {"sideA": sorted(self.side_a), "sideB": sorted(self.side_b), "edges": [list(e) for e in self.edges]}


def _two_colour(g: Graph, cut: tuple[tuple[int, int], ...]) -> int | None:
    """Side containing vertex 0 if removing ``cut`` leaves exactly it as E(A, B)."""
    rows = list(g.adj)
    for u, v in cut:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    rest = Graph(g.n, tuple(rows))
    comps = component_masks(rest)
    if len(comps) < 2:
        return None
    owner = {}
    for i, c in enumerate(comps):
        for v in iter_bits(c):
            owner[v] = i
    links: dict[int, list[int]] = {i: [] for i in range(len(comps))}
    for u, v in cut:
        if owner[u] == owner[v]:
            return None
        links[owner[u]].append(owner[v])
        links[owner[v]].append(owner[u])
    colour = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for d in links[c]:
            if d not in colour:
                colour[d] = 1 - colour[c]
                queue.append(d)
            elif colour[d] == colour[c]:
                return None
    side = 0
    for i, c in enumerate(comps):
        if colour[i] == 0:
            side |= c
    return side


def has_3edge_matching_cut(g: Graph) -> MatchingCutCertificate | None:
    """A bipartition whose crossing edges are exactly three disjoint edges."""
    _require_connected(g)
    edges = g.edges()
    for triple in combinations(edges, 3):
        if len({v for e in triple for v in e}) != 6:
            continue
        side = _two_colour(g, triple)
        if side is not None:
            return MatchingCutCertificate(to_set(side), to_set(g.full_mask & ~side), triple)
    return None


def has_k4_minus(g: Graph) -> tuple[int, int, int, int] | None:
    """Two triangles sharing an edge, as (shared, shared, tip, tip)."""
    for u, v in g.edges():
        common = list(iter_bits(g.adj[u] & g.adj[v]))
        if len(common) >= 2:
            return u, v, common[0], common[1]
    return None


def small_separator(g: Graph) -> frozenset[int] | None:
    """A vertex set of size at most two whose removal disconnects ``g``."""
    full = g.full_mask
    if not is_connected(g):
        return frozenset()
    for size in (1, 2):
        for s in combinations(range(g.n), size):
            left = full & ~to_mask(s)
            if left and not is_connected(g, left):
                return frozenset(s)
    return None


def is_3_connected(g: Graph) -> bool:
    return g.n >= 4 and small_separator(g) is None


# ---------------------------------------------------------------------------
# claim audit


CLAIMS = {
    6: "exactly 2n-3 edges",
    7: "every vertex lies in a triangle",
    8: "no K2-cutset or K3-cutset",
    9: "3-connected",
    10: "no 3-edge matching cut",
    11: "no K4 minus an edge",
    12: "non-adjacent pairs share at most two neighbours",
    13: "no P3-cutset",
    14: "every triangle has two vertices lying in other triangles",
}


@dataclass(frozen=True)
class ClaimResult:
    holds: bool
    witness: Any = None


@dataclass(frozen=True)
class ClaimAudit:
    results: dict[int, ClaimResult] = field(default_factory=dict)

    def __getitem__(self, claim: int) -> ClaimResult:
        return self.results[claim]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results.values())

    def to_json(self) -> dict[str, Any]:
        return {
            str(k): {"claim": CLAIMS[k], "holds": r.holds, "witness": _jsonable(r.witness)}
            for k, r in sorted(self.results.items())
        }


def _jsonable(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def audit_claims(g: Graph) -> ClaimAudit:
    _require_connected(g)
    res: dict[int, ClaimResult] = {}
    n, m = g.n, g.m
    res[6] = ClaimResult(m == 2 * n - 3, None if m == 2 * n - 3 else {"n": n, "m": m})

    tris = triangles(g)
    covered = to_mask(v for t in tris for v in t)
    bare = [v for v in range(n) if not covered >> v & 1]
    res[7] = ClaimResult(not bare, bare[0] if bare else None)

    hit = has_clique_cutset(g)
    res[8] = ClaimResult(hit is None, hit and {"clique": hit[0], "separation": hit[1]})

    sep = small_separator(g)
    three = n >= 4 and sep is None
    res[9] = ClaimResult(three, None if three else {"n": n, "separator": sep})

    cut = has_3edge_matching_cut(g)
    res[10] = ClaimResult(cut is None, cut)

    k4m = has_k4_minus(g)
    res[11] = ClaimResult(k4m is None, k4m)

    crowded = None
    for x, y in combinations(range(n), 2):
        if not g.has_edge(x, y) and (g.adj[x] & g.adj[y]).bit_count() > 2:
            crowded = {"pair": (x, y), "common": to_set(g.adj[x] & g.adj[y])}
            break
    res[12] = ClaimResult(crowded is None, crowded)

    p3 = has_p3_cutset(g)
    res[13] = ClaimResult(p3 is None, p3 and {"path": p3[0], "separation": p3[1]})

    count = [0] * n
    for t in tris:
        for v in t:
            count[v] += 1
    lonely = [t for t in tris if sum(count[v] > 1 for v in t) < 2]
    res[14] = ClaimResult(not lonely, lonely or None)
    return ClaimAudit(res)
