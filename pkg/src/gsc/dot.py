from __future__ import annotations

from typing import Iterable

from .graph import Graph


def to_dot(
    g: Graph,
    *,
    name: str = "G",
    marked_vertices: Iterable[int] = (),
    marked_edges: Iterable[tuple[int, int]] = (),
) -> str:
    """Graphviz ``graph`` listing every vertex and every edge exactly once.

    Marked vertices (a cutset) are filled red; marked edges (a matching cut)
    are drawn red and bold.
    """
    hot_v = set(marked_vertices)
    hot_e = {(min(e), max(e)) for e in marked_edges}
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attr = ' [style=filled, fillcolor=red, cutset=true]' if v in hot_v else ""
        lines.append(f"  {v}{attr};")
    for u, v in g.edges():
        attr = " [color=red, penwidth=2, cut=true]" if (u, v) in hot_e else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
