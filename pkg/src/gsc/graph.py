"""Simple undirected graphs on dense integer vertex ids, stored as bitmask rows.

Every vertex set handed around internally is an ``int`` bitmask; the public
helpers return ``frozenset`` values so callers never have to decode bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

MAX_VERTICES = 62


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class AdjacencyError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency rows must match the vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside [0, {self.n})")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside [0, {n})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_stable(self, mask: int) -> bool:
        return all(not self.adj[v] & mask for v in iter_bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled densely; also returns new-id -> old-id."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            rows.append(to_mask(index[u] for u in iter_bits(self.adj[v]) if u in index))
        return Graph(len(order), tuple(rows)), order

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with old vertex ``perm[i]`` renamed to ``i``."""
        index = {old: new for new, old in enumerate(perm)}
        rows = [to_mask(index[u] for u in iter_bits(self.adj[old])) for old in perm]
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# graph6


def from_graph6(line: str) -> Graph:
    """Parse a header-free, short-form graph6 line (``n <= 62``)."""
    text = line.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty graph6 line", 0)
    for i, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range 63..126", i)
    n = ord(text[0]) - 63
    if n == 63:
        raise Graph6Error("long-form graph6 (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = text[1:]
    if len(body) < nchars:
        raise Graph6Error(f"expected {nchars} edge characters, got {len(body)}", len(text))
    if len(body) > nchars:
        raise Graph6Error("trailing characters after the edge data", 1 + nchars)

    rows = [0] * n
    k = 0
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            value = ord(body[k // 6]) - 63
            if value >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nchars and (ord(body[-1]) - 63) & ((1 << (6 * nchars - nbits)) - 1):
        raise Graph6Error("non-zero padding bits", len(text) - 1)
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    if g.n > MAX_VERTICES:
        raise ValueError(f"graph6 short form supports at most {MAX_VERTICES} vertices, got {g.n}")
    bits = [(g.adj[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    chars = [chr(g.n + 63)]
    for start in range(0, len(bits), 6):
        value = 0
        for b in bits[start:start + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)


# ---------------------------------------------------------------------------
# elementary queries


def grow_component(g: Graph, start: int, alive: int) -> int:
    """Bitmask of the component of ``start`` inside the vertex set ``alive``."""
    comp = frontier = 1 << start
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g.adj[v]
        frontier = reach & alive & ~comp
        comp |= frontier
    return comp


def component_masks(g: Graph, alive: int | None = None) -> list[int]:
    """Components of ``g[alive]`` as bitmasks, ordered by smallest vertex."""
    rest = g.full_mask if alive is None else alive
    out = []
    while rest:
        comp = grow_component(g, (rest & -rest).bit_length() - 1, rest)
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph) -> list[frozenset[int]]:
    return [to_set(c) for c in component_masks(g)]


def is_connected(g: Graph, alive: int | None = None) -> bool:
    return len(component_masks(g, alive)) <= 1


def common_neighbors(g: Graph, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise ValueError("common_neighbors needs two distinct vertices")
    return to_set(g.adj[x] & g.adj[y])


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Every triangle once, as a sorted triple, in lexicographic order."""
    out = []
    for u in range(g.n):
        later = g.adj[u] >> (u + 1) << (u + 1)
        for v in iter_bits(later):
            for w in iter_bits(later & g.adj[v] >> (v + 1) << (v + 1)):
                out.append((u, v, w))
    return out


class Identification(NamedTuple):
    graph: Graph
    relabel: dict[int, int]


def identify_set(g: Graph, s: Iterable[int]) -> Identification:
    """Merge the vertices of ``s`` into one vertex.

    The merged vertex takes the smallest id in ``s``; the remaining ids are
    renumbered densely in their old order. ``relabel`` maps every old id
    (including all members of ``s``) to its new id.
    """
    merged = sorted(set(s))
    if not merged:
        raise ValueError("cannot identify an empty vertex set")
    for v in merged:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    smask = to_mask(merged)
    keep = merged[0]
    relabel: dict[int, int] = {}
    new_id = 0
    for v in range(g.n):
        if smask >> v & 1 and v != keep:
            continue
        relabel[v] = new_id
        new_id += 1
    for v in merged:
        relabel[v] = relabel[keep]

    union = 0
    for v in merged:
        union |= g.adj[v]
    union &= ~smask
    edges = {(relabel[u], relabel[v]) for u, v in g.edges() if not (smask >> u & 1 and smask >> v & 1)}
    edges |= {(relabel[keep], relabel[u]) for u in iter_bits(union)}
    edges = {(min(e), max(e)) for e in edges}
    return Identification(Graph.from_edges(new_id, edges), relabel)


def identify_vertices(g: Graph, x: int, y: int) -> Identification:
    if x == y:
        raise ValueError("cannot identify a vertex with itself")
    if g.has_edge(x, y):
        raise AdjacencyError(f"vertices {x} and {y} are adjacent")
    return identify_set(g, (x, y))


# ---------------------------------------------------------------------------
# named graphs used throughout the tests and the CLI


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def prism() -> Graph:
    """Complement of the 6-cycle: triangles 0-1-2 and 3-4-5, matching i -- i+3."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
