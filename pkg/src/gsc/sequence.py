"""Generating sequences: K3 and prism pieces glued along edges and triangles.

A piece is stored the way it is written down: its kind, the existing vertices
it is glued onto (``targets``) and the ids of the vertices it creates
(``fresh``). From these the piece's *roles* follow, i.e. its vertices in a
fixed slot order:

* K3: ``(p, q, r)``.
* Prism: ``(u, v, w, a, b, c)`` with triangles ``uvw`` and ``abc`` and the
  matching ``au, bv, cw``.

Slot conventions per attachment:

====================  ===========  ================
attachment            targets      fresh
====================  ===========  ================
K3 root               --           p, q, r
K3 on edge            p, q         r
K3 on triangle        p, q, r      --
Prism root            --           u, v, w, a, b, c
Prism on triangle     u, v, w      a, b, c
Prism on matching     v, b         u, w, a, c
Prism on triangle     a, b         c, u, v, w
edge (``via``)
====================  ===========  ================

Indices into a sequence are 0-based throughout.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Any, Iterable, Iterator, Sequence

from .graph import Graph, to_mask


class PieceKind(str, Enum):
    K3 = "K3"
    PRISM = "Prism"

    @property
    def size(self) -> int:
        return 3 if self is PieceKind.K3 else 6


K3_EDGES = ((0, 1), (1, 2), (0, 2))
PRISM_EDGES = ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5))
PRISM_MATCHING = ((0, 3), (1, 4), (2, 5))


def _automorphisms(size: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    edge_set = {frozenset(e) for e in edges}
    return [
        perm
        for perm in permutations(range(size))
        if {frozenset((perm[u], perm[v])) for u, v in edges} == edge_set
    ]


_PRISM_AUTOS = _automorphisms(6, PRISM_EDGES)

# slots that must already exist for each prism attachment
_PRISM_PATTERNS = {
    "root": frozenset(),
    "triangle": frozenset({0, 1, 2}),
    "matching": frozenset({1, 4}),
    "side": frozenset({3, 4}),
}


class SequenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SequenceIssue:
    index: int | None
    reason: str

    def __str__(self) -> str:
        where = "sequence" if self.index is None else f"piece {self.index}"
        return f"{where}: {self.reason}"


class InvalidSequenceError(ValueError):
    def __init__(self, issues: list[SequenceIssue]) -> None:
        super().__init__("; ".join(map(str, issues)))
        self.issues = issues


@dataclass(frozen=True)
class Piece:
    kind: PieceKind
    targets: tuple[int, ...] = ()
    fresh: tuple[int, ...] = ()
    via: str | None = None  # prism edge attachments only: "matching" or "triangle"

    @property
    def attach(self) -> str:
        return {0: "root", 2: "edge", 3: "triangle"}.get(len(self.targets), "invalid")

    @property
    def roles(self) -> tuple[int, ...]:
        t, f = self.targets, self.fresh
        if self.kind is PieceKind.K3 or self.attach in ("root", "triangle"):
            return t + f
        if self.via == "triangle":
            return (f[1], f[2], f[3], t[0], t[1], f[0])
        return (f[0], t[0], f[1], f[2], t[1], f[3])

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.targets + self.fresh)

    def edges(self) -> list[tuple[int, int]]:
        r = self.roles
        pattern = K3_EDGES if self.kind is PieceKind.K3 else PRISM_EDGES
        return [(r[i], r[j]) for i, j in pattern]

    @classmethod
    def place(cls, kind: PieceKind, roles: Sequence[int], existing: Iterable[int]) -> Piece:
        """Describe a piece with the given roles glued onto ``existing`` vertices."""
        existing = set(existing)
        if kind is PieceKind.K3:
            old = tuple(v for v in roles if v in existing)
            if len(old) == 1:
                raise ValueError(f"K3 {tuple(roles)} meets the graph in a single vertex")
            return cls(kind, old, tuple(v for v in roles if v not in existing))
        for perm in _PRISM_AUTOS:
            r = [roles[perm[i]] for i in range(6)]
            have = frozenset(i for i in range(6) if r[i] in existing)
            if have == _PRISM_PATTERNS["root"]:
                return cls(kind, (), tuple(r))
            if have == _PRISM_PATTERNS["triangle"]:
                return cls(kind, tuple(r[:3]), tuple(r[3:]))
            if have == _PRISM_PATTERNS["matching"]:
                return cls(kind, (r[1], r[4]), (r[0], r[2], r[3], r[5]), "matching")
            if have == _PRISM_PATTERNS["side"]:
                return cls(kind, (r[3], r[4]), (r[5], r[0], r[1], r[2]), "triangle")
        raise ValueError(f"prism {tuple(roles)} does not meet the graph in an edge or triangle")

    def to_json(self) -> dict[str, Any]:
        if self.attach == "root":
            attach: Any = "root"
        else:
            attach = {self.attach: list(self.targets)}
            if self.via is not None:
                attach["via"] = self.via
        return {"kind": self.kind.value, "attach": attach, "fresh": list(self.fresh)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Piece:
        kind = PieceKind(data["kind"])
        attach = data["attach"]
        if attach == "root":
            targets: tuple[int, ...] = ()
            via = None
        elif isinstance(attach, dict) and ("edge" in attach) != ("triangle" in attach):
            targets = tuple(attach.get("edge", attach.get("triangle")))
            via = attach.get("via")
            if kind is PieceKind.PRISM and "edge" in attach and via is None:
                via = "matching"
        else:
            raise ValueError(f"bad attachment {attach!r}")
        return cls(kind, targets, tuple(data["fresh"]), via)


@dataclass(frozen=True)
class GeneratingSequence:
    pieces: tuple[Piece, ...]

    def __init__(self, pieces: Iterable[Piece]) -> None:
        object.__setattr__(self, "pieces", tuple(pieces))

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __getitem__(self, i: int) -> Piece:
        return self.pieces[i]

    def prefix(self, k: int) -> GeneratingSequence:
        return GeneratingSequence(self.pieces[:k])

    def to_json(self) -> list[dict[str, Any]]:
        return [p.to_json() for p in self.pieces]

    @classmethod
    def from_json(cls, data: list[dict[str, Any]]) -> GeneratingSequence:
        return cls(Piece.from_json(d) for d in data)


def _expected_counts(p: Piece) -> tuple[int, int] | None:
    if p.kind is PieceKind.K3:
        return {"root": (0, 3), "edge": (2, 1), "triangle": (3, 0)}.get(p.attach)
    return {"root": (0, 6), "edge": (2, 4), "triangle": (3, 3)}.get(p.attach)


def validate(s: GeneratingSequence) -> list[SequenceIssue]:
    """Check every invariant; an empty list means the sequence is valid.

    Gluing a K3 onto an existing triangle is legal but adds nothing, so it
    only raises a ``SequenceWarning``.
    """
    issues: list[SequenceIssue] = []
    if not len(s):
        return [SequenceIssue(None, "empty sequence")]
    seen: set[int] = set()
    adj: dict[int, set[int]] = {}
    for i, p in enumerate(s):
        if not isinstance(p.kind, PieceKind):
            issues.append(SequenceIssue(i, f"unknown piece kind {p.kind!r}"))
            continue
        if (i == 0) != (p.attach == "root"):
            issues.append(SequenceIssue(i, "only the first piece may be (and must be) a root"))
            continue
        counts = _expected_counts(p)
        if counts != (len(p.targets), len(p.fresh)):
            issues.append(SequenceIssue(i, f"{p.kind.value} {p.attach} attachment needs {counts} targets/fresh"))
            continue
        wants_via = p.kind is PieceKind.PRISM and p.attach == "edge"
        if wants_via and p.via not in ("matching", "triangle"):
            issues.append(SequenceIssue(i, f"prism edge attachment needs via matching|triangle, got {p.via!r}"))
            continue
        if not wants_via and p.via is not None:
            issues.append(SequenceIssue(i, "via is only meaningful for prism edge attachments"))
            continue
        if any(not isinstance(v, int) or v < 0 for v in p.targets + p.fresh):
            issues.append(SequenceIssue(i, "vertex ids must be non-negative integers"))
            continue
        if len(set(p.targets + p.fresh)) != len(p.targets) + len(p.fresh):
            issues.append(SequenceIssue(i, "repeated vertex id within the piece"))
            continue
        missing = [v for v in p.targets if v not in seen]
        if missing:
            issues.append(SequenceIssue(i, f"attachment references unknown vertices {missing}"))
            continue
        reused = [v for v in p.fresh if v in seen]
        if reused:
            issues.append(SequenceIssue(i, f"fresh vertices {reused} already exist"))
            continue
        t = p.targets
        non_edges = [(a, b) for j, a in enumerate(t) for b in t[j + 1:] if b not in adj[a]]
        if non_edges:
            issues.append(SequenceIssue(i, f"attachment targets {non_edges} are not adjacent"))
            continue
        if p.kind is PieceKind.K3 and p.attach == "triangle":
            warnings.warn(f"piece {i}: K3 glued onto an existing triangle adds nothing", SequenceWarning, stacklevel=2)
        for v in p.fresh:
            seen.add(v)
            adj[v] = set()
        for a, b in p.edges():
            adj[a].add(b)
            adj[b].add(a)
    if not issues and seen != set(range(len(seen))):
        issues.append(SequenceIssue(None, "vertex ids are not dense in [0, n)"))
    return issues


def build(s: GeneratingSequence) -> Graph:
    issues = validate(s)
    if issues:
        raise InvalidSequenceError(issues)
    n = sum(len(p.fresh) for p in s)
    return Graph.from_edges(n, {(min(e), max(e)) for p in s for e in p.edges()})


# ---------------------------------------------------------------------------
# re-rooting and normalisation

Shape = tuple[PieceKind, tuple[int, ...]]


def place_all(shapes: Iterable[Shape]) -> GeneratingSequence:
    """Turn pieces given by their roles into a sequence, in the given order."""
    existing: set[int] = set()
    out = []
    for kind, roles in shapes:
        out.append(Piece.place(kind, roles, existing))
        existing.update(roles)
    return GeneratingSequence(out)


def reroot_shapes(shapes: Sequence[Shape], i: int) -> list[Shape]:
    """Reorder pieces so that piece ``i`` comes first, keeping a valid gluing order.

    Peel the last piece off. If it is not the requested one it stays last;
    otherwise it goes first and the remainder is re-rooted at a piece holding
    the clique the last piece was glued on.
    """
    front: list[Shape] = []
    back: list[Shape] = []
    for t in range(len(shapes) - 1, 0, -1):
        if i < t:
            back.append(shapes[t])
            continue
        roles = set(shapes[t][1])
        earlier = set().union(*(shapes[j][1] for j in range(t)))
        clique = roles & earlier
        front.append(shapes[t])
        i = next((j for j in range(t) if clique <= set(shapes[j][1])), -1)
        if i < 0:
            raise ValueError(f"no earlier piece contains the gluing clique {sorted(clique)}")
    front.append(shapes[0])
    return front + back[::-1]


def reroot(s: GeneratingSequence, i: int) -> GeneratingSequence:
    if not 0 <= i < len(s):
        raise IndexError(f"piece index {i} out of range for a sequence of {len(s)} pieces")
    shapes = [(p.kind, p.roles) for p in s]
    return place_all(reroot_shapes(shapes, i))


def normalize_sequence(s: GeneratingSequence) -> GeneratingSequence:
    """Glue every prism that hangs on one of its triangle edges via a K3 first.

    A prism attached along its triangle edge ``ab`` becomes a K3 ``abc`` on
    that edge followed by the prism glued on the triangle ``abc``.
    """
    out: list[Piece] = []
    for p in s:
        if p.kind is PieceKind.PRISM and p.attach == "edge" and p.via == "triangle":
            (a, b), (c, u, v, w) = p.targets, p.fresh
            out.append(Piece(PieceKind.K3, (a, b), (c,)))
            out.append(Piece(PieceKind.PRISM, (a, b, c), (u, v, w)))
        else:
            out.append(p)
    return GeneratingSequence(out)


def is_normalized(s: GeneratingSequence) -> bool:
    return not any(p.kind is PieceKind.PRISM and p.via == "triangle" for p in s)


# ---------------------------------------------------------------------------
# random members


def random_gsc(k: int, seed: int, *, apex: bool = False, normalized: bool = False) -> GeneratingSequence:
    """A random valid sequence of ``k`` pieces, reproducible from ``seed``.

    Each step picks the piece kind, then the attachment mode, then the
    attachment clique and its orientation uniformly. K3-on-triangle is never
    drawn since it adds nothing. ``apex`` keeps vertex 0 in every piece;
    ``normalized`` restricts prism edge attachments to matching edges.
    """
    if k < 1:
        raise ValueError("a generating sequence needs at least one piece")
    rng = random.Random(seed)
    kinds = (PieceKind.K3, PieceKind.PRISM)
    kind = rng.choice(kinds)
    pieces = [Piece(kind, (), tuple(range(kind.size)))]
    adj: dict[int, set[int]] = {v: set() for v in range(kind.size)}
    for a, b in pieces[0].edges():
        adj[a].add(b)
        adj[b].add(a)
    nxt = kind.size

    for _ in range(k - 1):
        kind = rng.choice(kinds)
        if kind is PieceKind.K3:
            mode = "matching"
        else:
            mode = rng.choice(("matching", "triangle") if normalized else ("matching", "side", "triangle"))
        if mode == "triangle":
            cliques = sorted((a, b, c) for a in adj for b in adj[a] if a < b for c in adj[a] & adj[b] if b < c)
        else:
            cliques = sorted((a, b) for a in adj for b in adj[a] if a < b)
        if apex:
            cliques = [c for c in cliques if 0 in c]
        targets = list(rng.choice(cliques))
        rng.shuffle(targets)
        if kind is PieceKind.K3:
            piece = Piece(kind, tuple(targets), (nxt,))
        elif mode == "triangle":
            piece = Piece(kind, tuple(targets), (nxt, nxt + 1, nxt + 2))
        else:
            via = "triangle" if mode == "side" else "matching"
            piece = Piece(kind, tuple(targets), tuple(range(nxt, nxt + 4)), via)
        for v in piece.fresh:
            adj[v] = set()
        for a, b in piece.edges():
            adj[a].add(b)
            adj[b].add(a)
        nxt += len(piece.fresh)
        pieces.append(piece)
    return GeneratingSequence(pieces)


# ---------------------------------------------------------------------------
# stable-set extension


class ExtensionError(ValueError):
    def __init__(self, condition: str, index: int | None = None) -> None:
        where = "" if index is None else f" (piece {index})"
        super().__init__(f"{condition}{where}")
        self.condition = condition
        self.index = index


def extend_stable_set(s: GeneratingSequence, prefix_len: int, X: Iterable[int], v: int) -> frozenset[int]:
    """Extend a stable set of the first ``prefix_len`` pieces piece by piece.

    ``s`` must be normalised and ``v`` must lie in every piece. For each later
    piece:

    * K3 ``vab`` glued on ``vb``: add ``a`` unless ``b`` is already in.
    * prism glued on the matching edge ``vb`` (triangles ``uvw``/``abc``,
      matching ``au, bv, cw``): add ``w``, and also ``a`` unless ``b`` is in.
    * prism glued on the triangle ``uvw``: add ``b``, the partner of ``v``.
    """
    issues = validate(s)
    if issues:
        raise ExtensionError(f"invalid sequence: {issues[0]}", issues[0].index)
    if not 1 <= prefix_len <= len(s):
        raise ExtensionError(f"prefix length {prefix_len} not in [1, {len(s)}]")
    for i, p in enumerate(s):
        if p.kind is PieceKind.PRISM and p.via == "triangle":
            raise ExtensionError("sequence is not normalised", i)
        if v not in p.vertices:
            raise ExtensionError(f"vertex {v} is not in every piece", i)
    X = set(X)
    prefix = build(s.prefix(prefix_len))
    if v in X:
        raise ExtensionError(f"seed set contains {v}")
    if any(not 0 <= x < prefix.n for x in X):
        raise ExtensionError("seed set is not inside the prefix graph")
    if not prefix.is_stable(to_mask(X)):
        raise ExtensionError("seed set is not stable in the prefix graph")

    for i in range(prefix_len, len(s)):
        p = s[i]
        if p.kind is PieceKind.K3:
            if p.attach == "triangle":
                continue
            if v not in p.targets:
                raise ExtensionError(f"K3 is not glued on an edge at {v}", i)
            b = p.targets[1 - p.targets.index(v)]
            if b not in X:
                X.add(p.fresh[0])
        elif p.attach == "edge":
            if v not in p.targets:
                raise ExtensionError(f"prism is not glued on an edge at {v}", i)
            r = p.roles
            b = p.targets[1 - p.targets.index(v)]
            slot = r.index(v)
            tri = (0, 1, 2) if slot < 3 else (3, 4, 5)
            u_slot, w_slot = (j for j in tri if j != slot)
            a_slot = u_slot + 3 if u_slot < 3 else u_slot - 3
            X.add(r[w_slot])
            if b not in X:
                X.add(r[a_slot])
        else:
            X.add(p.fresh[p.targets.index(v)])
    return frozenset(X)
