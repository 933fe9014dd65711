"""
Exact minimum span by backtracking, for small instances only
"""
from typing import List, Optional

from config.settings import ORACLE_MAX_VERTICES
from model.errors import InputError
from model.instance import Coloring, WeightedGraph, as_coloring


def find_coloring(graph: WeightedGraph, span: int) -> Optional[Coloring]:
    """A feasible coloring with every color in 1..span, or None if none exists"""
    n = graph.n
    # dense vertices first prune the tree earliest
    order = sorted(range(n), key=lambda i: (-int(graph.degree[i]), i))
    position = {vertex: p for p, vertex in enumerate(order)}
    earlier = [
        [
            (int(j), int(d))
            for j, d in zip(graph.neighbors(i), graph.neighbor_distances(i))
            if position[int(j)] < position[i]
        ]
        for i in order
    ]
    colors: List[int] = [0] * n

    def extend(p: int) -> bool:
        if p == n:
            return True
        i = order[p]
        # mirroring c -> span + 1 - c maps solutions onto solutions
        top = (span + 1) // 2 if p == 0 else span
        for color in range(1, top + 1):
            if all(abs(color - colors[j]) >= d for j, d in earlier[p]):
                colors[i] = color
                if extend(p + 1):
                    return True
        colors[i] = 0
        return False

    if span < 1 or not extend(0):
        return None
    return as_coloring(colors)


def minimum_span(
    graph: WeightedGraph,
    max_span: int,
    max_vertices: int = ORACLE_MAX_VERTICES,
) -> Optional[int]:
    """Exact minimum span if it is at most max_span, otherwise None"""
    if graph.n > max_vertices:
        raise InputError(
            f"exhaustive search is limited to {max_vertices} vertices, instance has {graph.n}"
        )
    for span in range(graph.span_lower_bound, max_span + 1):
        if find_coloring(graph, span) is not None:
            return span
    return None
