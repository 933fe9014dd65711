"""
Greedy construction of a feasible coloring, the upper bound UB for the search
"""
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from model.errors import InputError
from model.instance import Coloring, WeightedGraph

GREEDY_ORDERS = ("id", "weight")


def greedy_order(graph: WeightedGraph, mode: str = "id") -> np.ndarray:
    """Vertex ids in assignment order: ascending id, or descending weight_sum"""
    ids = np.arange(1, graph.n + 1)
    if mode == "id":
        return ids
    if mode == "weight":
        # stable sort keeps ascending id among equal weight sums
        return ids[np.argsort(-graph.weight_sum, kind="stable")]
    raise InputError(f"unknown greedy order {mode!r}, expected one of {GREEDY_ORDERS}")


def smallest_admissible(forbidden: Iterable[Tuple[int, int]]) -> int:
    """Smallest color >= 1 outside every closed interval [lo, hi]"""
    color = 1
    for lo, hi in sorted(forbidden):
        if lo > color:
            break
        if hi >= color:
            color = hi + 1
    return color


def greedy_ub(graph: WeightedGraph, order: Optional[Sequence[int]] = None) -> Coloring:
    """
    Color vertices in the given order, each with the smallest color whose gap to
    every already colored neighbor reaches the edge distance. Always feasible.
    """
    order = greedy_order(graph) if order is None else np.asarray(order, dtype=np.int64)
    if len(order) != graph.n or set(order.tolist()) != set(range(1, graph.n + 1)):
        raise InputError(f"greedy order must be a permutation of 1..{graph.n}")

    colors = np.zeros(graph.n, dtype=np.int64)
    for v in order:
        i = int(v) - 1
        neighbor_colors = colors[graph.neighbors(i)]
        distances = graph.neighbor_distances(i)
        done = neighbor_colors > 0
        # color c clashes with neighbor color cj iff cj - d < c < cj + d
        lows = neighbor_colors[done] - distances[done] + 1
        highs = neighbor_colors[done] + distances[done] - 1
        colors[i] = smallest_admissible(zip(lows.tolist(), highs.tolist()))
    return colors
