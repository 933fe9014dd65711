"""
Mutable search state with incremental conflict bookkeeping
"""
import numpy as np

from model.errors import InputError
from model.instance import (
    Coloring,
    ColoringLike,
    WeightedGraph,
    as_coloring,
    conflict_vector,
)


class SearchState:
    """
    A coloring restricted to colors 1..nc plus cached per-vertex conflicts.

    Invariants kept by every mutation:
        total_penalty == evaluate(graph, colors)
        conflict_of.sum() == 2 * total_penalty
    A state is owned by a single solver run and never shared.
    """

    def __init__(self, graph: WeightedGraph, coloring: ColoringLike, nc: int):
        colors = as_coloring(coloring, graph.n)
        if nc < 1:
            raise InputError(f"color limit must be positive, got {nc}")
        if colors.max() > nc:
            raise InputError(f"coloring uses color {colors.max()} above the limit {nc}")
        self.graph = graph
        self.colors = colors
        self.nc = int(nc)
        self.refresh()

    def refresh(self) -> None:
        self.conflict_of = conflict_vector(self.graph, self.colors)
        self.total_penalty = int(self.conflict_of.sum()) // 2

    @property
    def coloring(self) -> Coloring:
        return self.colors

    @property
    def weight_sum(self) -> np.ndarray:
        return self.graph.weight_sum

    @property
    def max_incident(self) -> np.ndarray:
        return self.graph.max_incident

    def copy(self) -> "SearchState":
        twin = object.__new__(SearchState)
        twin.graph = self.graph
        twin.colors = self.colors.copy()
        twin.nc = self.nc
        twin.conflict_of = self.conflict_of.copy()
        twin.total_penalty = self.total_penalty
        return twin

    def color_penalties(self, i: int) -> np.ndarray:
        """conflicts(i + 1) for every candidate color 1..nc, with vertex i uncolored"""
        neighbor_colors = self.colors[self.graph.neighbors(i)]
        distances = self.graph.neighbor_distances(i)
        candidates = np.arange(1, self.nc + 1, dtype=np.int64)[:, None]
        gaps = np.abs(candidates - neighbor_colors[None, :])
        return np.maximum(0, distances[None, :] - gaps).sum(axis=1)

    def delta(self, i: int, color: int) -> int:
        neighbor_colors = self.colors[self.graph.neighbors(i)]
        distances = self.graph.neighbor_distances(i)
        after = np.maximum(0, distances - np.abs(color - neighbor_colors)).sum()
        return int(after) - int(self.conflict_of[i])

    def recolor(self, i: int, color: int) -> None:
        neighbors = self.graph.neighbors(i)
        distances = self.graph.neighbor_distances(i)
        neighbor_colors = self.colors[neighbors]
        before = np.maximum(0, distances - np.abs(self.colors[i] - neighbor_colors))
        after = np.maximum(0, distances - np.abs(color - neighbor_colors))
        change = after - before
        # neighbors are distinct, so the fancy-indexed add hits each once
        self.conflict_of[neighbors] += change
        self.conflict_of[i] = int(after.sum())
        self.total_penalty += int(change.sum())
        self.colors[i] = color

    def _check_move(self, v: int, new_color: int) -> int:
        i = self.graph.check_vertex(v)
        if not 1 <= new_color <= self.nc:
            raise InputError(f"color {new_color} outside 1..{self.nc}")
        return i

    def __eq__(self, other) -> bool:
        if not isinstance(other, SearchState):
            return NotImplemented
        return (
            self.graph is other.graph
            and self.nc == other.nc
            and self.total_penalty == other.total_penalty
            and np.array_equal(self.colors, other.colors)
            and np.array_equal(self.conflict_of, other.conflict_of)
        )

    def __repr__(self) -> str:
        return f"SearchState(n={self.graph.n}, nc={self.nc}, penalty={self.total_penalty})"


def recolor_delta(state: SearchState, v: int, new_color: int) -> int:
    """Penalty change of giving vertex v (1-based) the color new_color"""
    i = state._check_move(v, new_color)
    return state.delta(i, new_color)


def apply_recolor(state: SearchState, v: int, new_color: int) -> SearchState:
    i = state._check_move(v, new_color)
    state.recolor(i, new_color)
    return state
