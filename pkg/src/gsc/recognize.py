"""Membership in the class generated from K3 and the prism by clique gluing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .cutsets import NotConnectedError, clique_cutsets, find_stable_cutset
from .graph import Graph, component_masks, is_connected, iter_bits, to_graph6, triangles
from .sequence import GeneratingSequence, PieceKind, Shape, place_all, reroot_shapes


class OutOfRegimeError(ValueError):
    pass


@dataclass(frozen=True)
class RecognitionResult:
    member: bool
    certificate: GeneratingSequence | None = None
    trace: tuple[tuple[str, str], ...] = ()

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.verdict}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.trace:
            out["trace"] = [{"graph6": g6, "reason": why} for g6, why in self.trace]
        return out


def is_prism(g: Graph) -> bool:
    return g.n == 6 and all(g.degree(v) == 3 for v in range(6)) and len(triangles(g)) == 2


def _prism_roles(g: Graph) -> tuple[int, ...]:
    first, second = triangles(g)
    other = sum(1 << v for v in second)
    partners = tuple((g.adj[v] & other).bit_length() - 1 for v in first)
    return first + partners


# Memo shared by every call in the process: canonical adjacency -> shapes in
# canonical labels (or None) plus the failure trace. Entries are never
# overwritten; dict.setdefault keeps inserts atomic under the GIL.
_MEMO: dict[tuple[int, tuple[int, ...]], tuple[list[Shape] | None, tuple[tuple[str, str], ...]]] = {}


def clear_memo() -> None:
    _MEMO.clear()


def _canonical(g: Graph) -> tuple[Graph, list[int]]:
    perm = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    return g.relabel(perm), perm


def _decide(g: Graph) -> tuple[list[Shape] | None, tuple[tuple[str, str], ...]]:
    canon, perm = _canonical(g)
    key = (canon.n, canon.adj)
    hit = _MEMO.get(key)
    if hit is None:
        hit = _MEMO.setdefault(key, _decide_fresh(canon))
    shapes, trace = hit
    if shapes is None:
        return None, trace
    return [(kind, tuple(perm[v] for v in roles)) for kind, roles in shapes], ()


def _decide_fresh(g: Graph) -> tuple[list[Shape] | None, tuple[tuple[str, str], ...]]:
    n, m = g.n, g.m
    tag = to_graph6(g)
    if m != 2 * n - 3:
        return None, ((tag, f"edge count {m} != 2n-3 = {2 * n - 3}"),)
    if n == 3:
        return [(PieceKind.K3, (0, 1, 2))], ()
    if is_prism(g):
        return [(PieceKind.PRISM, _prism_roles(g))], ()

    trace: list[tuple[str, str]] = []
    tried = 0
    for clique, _sep in clique_cutsets(g):
        tried += 1
        cmask = sum(1 << v for v in clique)
        parts = []
        for comp in component_masks(g, g.full_mask & ~cmask):
            sub, back = g.induced(iter_bits(comp | cmask))
            shapes, sub_trace = _decide(sub)
            if shapes is None:
                trace.append((to_graph6(sub), f"part at clique {list(clique)} fails: {sub_trace[0][1]}"))
                break
            parts.append([(kind, tuple(back[v] for v in roles)) for kind, roles in shapes])
        else:
            return _assemble(parts, set(clique)), ()
    if not tried:
        return None, ((tag, "not K3 or prism and has no K2/K3-cutset"),)
    return None, ((tag, "every K2/K3-cutset leaves a non-member part"), *trace)


def _assemble(parts: list[list[Shape]], clique: set[int]) -> list[Shape]:
    """Concatenate part sequences; later parts start at the piece holding the clique."""
    out = list(parts[0])
    for part in parts[1:]:
        j = next(i for i, (_, roles) in enumerate(part) if clique <= set(roles))
        order = reroot_shapes(part, j)
        if set(order[0][1]) == clique:
            order = order[1:]  # a K3 equal to the glued triangle adds nothing
        out.extend(order)
    return out


def recognize(g: Graph) -> RecognitionResult:
    """Decide membership; members come with a generating sequence rebuilding ``g``.

    Rejects unless ``m == 2n - 3``, accepts K3 and the prism, and otherwise
    splits along each K2/K3-cutset in turn, accepting as soon as every part
    (component plus clique) is a member.
    """
    if g.n < 3:
        raise ValueError("recognition needs at least 3 vertices")
    if not is_connected(g):
        raise NotConnectedError("input graph must be connected")
    shapes, trace = _decide(g)
    if shapes is None:
        return RecognitionResult(False, None, trace)
    return RecognitionResult(True, place_all(_drop_no_ops(shapes)))


def _drop_no_ops(shapes: list[Shape]) -> list[Shape]:
    # re-rooting can leave K3 pieces whose triangle already exists
    seen: set[int] = set()
    out = []
    for kind, roles in shapes:
        if kind is PieceKind.K3 and seen.issuperset(roles):
            continue
        out.append((kind, roles))
        seen.update(roles)
    return out


def recognize_via_theorem(g: Graph) -> bool:
    """Membership oracle: exactly 2n-3 edges and no stable cutset.

    Only meaningful up to ``2n - 3`` edges; used to cross-check ``recognize``.
    """
    if not is_connected(g):
        raise NotConnectedError("input graph must be connected")
    if g.m > 2 * g.n - 3:
        raise OutOfRegimeError(f"{g.m} edges exceeds 2n-3 = {2 * g.n - 3}")
    return g.m == 2 * g.n - 3 and find_stable_cutset(g) is None
