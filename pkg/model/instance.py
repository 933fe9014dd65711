"""
Weighted graphs, colorings and exact penalty evaluation
"""
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from model.errors import InputError, Violation

# colors[i] is the color of vertex i + 1
Coloring = npt.NDArray[np.int64]
Edge = Tuple[int, int, int]
ColoringLike = Union[Coloring, Sequence[int]]


def _frozen(values, dtype=np.int64) -> np.ndarray:
    array = np.asarray(values, dtype=dtype)
    array.setflags(write=False)
    return array


class WeightedGraph:
    """
    Undirected graph on vertices 1..n with positive integer edge distances.

    BMCP graphs also carry a multiplicity w(v) and a loop distance d(v, v) per
    vertex; both are present or both absent. Self-loops never appear in the edge
    list. The adjacency arrays are 0-based: ``neighbors(i)`` belongs to vertex i + 1.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge],
        loop_distance: Optional[Sequence[int]] = None,
        multiplicity: Optional[Sequence[int]] = None,
    ):
        n = int(n)
        if n < 1:
            raise InputError(f"vertex count must be positive, got {n}")
        if (loop_distance is None) != (multiplicity is None):
            raise InputError("loop distances and multiplicities must be given together")

        seen = set()
        clean = []
        for u, v, d in edges:
            u, v, d = int(u), int(v), int(d)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            if u == v:
                raise InputError(f"self-loop on vertex {u} is not a graph edge")
            if d < 1:
                raise InputError(f"edge ({u}, {v}) has non-positive distance {d}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            clean.append((u, v, d))

        self.n = n
        self.edges: Tuple[Edge, ...] = tuple(clean)
        self.loop_distance = self._per_vertex(loop_distance, "loop distance")
        self.multiplicity = self._per_vertex(multiplicity, "multiplicity")

        self.edge_u = _frozen([u - 1 for u, _, _ in clean])
        self.edge_v = _frozen([v - 1 for _, v, _ in clean])
        self.edge_d = _frozen([d for _, _, d in clean])

        src = np.concatenate([self.edge_u, self.edge_v])
        dst = np.concatenate([self.edge_v, self.edge_u])
        dist = np.concatenate([self.edge_d, self.edge_d])
        order = np.argsort(src, kind="stable")

        self._adj_vertex = _frozen(dst[order])
        self._adj_dist = _frozen(dist[order])
        self.degree = _frozen(np.bincount(src, minlength=n))
        self._offsets = _frozen(np.concatenate([[0], np.cumsum(self.degree)]))

        # weights(v) and maxw(v) of the third ordering criterion
        self.weight_sum = _frozen(np.bincount(src, weights=dist, minlength=n).round())
        max_incident = np.zeros(n, dtype=np.int64)
        np.maximum.at(max_incident, src, dist)
        self.max_incident = _frozen(max_incident)

    def _per_vertex(self, values, label) -> Optional[Tuple[int, ...]]:
        if values is None:
            return None
        values = tuple(int(x) for x in values)
        if len(values) != self.n:
            raise InputError(f"{label} given for {len(values)} vertices, graph has {self.n}")
        if any(x < 1 for x in values):
            raise InputError(f"every {label} must be a positive integer")
        return values

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_bmcp(self) -> bool:
        return self.multiplicity is not None

    @property
    def span_lower_bound(self) -> int:
        """Any edge (u, v) forces a span of at least d(u, v) + 1"""
        if not self.edges:
            return 1
        return int(self.edge_d.max()) + 1

    def neighbors(self, i: int) -> np.ndarray:
        return self._adj_vertex[self._offsets[i]:self._offsets[i + 1]]

    def neighbor_distances(self, i: int) -> np.ndarray:
        return self._adj_dist[self._offsets[i]:self._offsets[i + 1]]

    def check_vertex(self, v: int) -> int:
        """Validate a 1-based vertex id and return its 0-based index"""
        if not 1 <= v <= self.n:
            raise InputError(f"vertex {v} outside 1..{self.n}")
        return int(v) - 1

    def __repr__(self) -> str:
        kind = "BMCP" if self.is_bmcp else "BCP"
        return f"WeightedGraph({kind}, n={self.n}, m={self.m})"


def as_coloring(values: ColoringLike, n: Optional[int] = None) -> Coloring:
    colors = np.array(values, dtype=np.int64)
    if colors.ndim != 1:
        raise InputError("a coloring is a one-dimensional array of colors")
    if n is not None and len(colors) != n:
        raise InputError(f"coloring has {len(colors)} entries, graph has {n} vertices")
    if len(colors) and colors.min() < 1:
        raise InputError("colors are positive integers")
    return colors


def edge_penalties(graph: WeightedGraph, colors: Coloring) -> np.ndarray:
    gap = np.abs(colors[graph.edge_u] - colors[graph.edge_v])
    return np.maximum(0, graph.edge_d - gap)


def conflict_vector(graph: WeightedGraph, colors: Coloring) -> np.ndarray:
    """conflicts(v) for every vertex, 0-based"""
    penalty = edge_penalties(graph, colors)
    per_vertex = np.bincount(graph.edge_u, weights=penalty, minlength=graph.n)
    per_vertex += np.bincount(graph.edge_v, weights=penalty, minlength=graph.n)
    return per_vertex.round().astype(np.int64)


def evaluate(graph: WeightedGraph, coloring: ColoringLike) -> int:
    colors = as_coloring(coloring, graph.n)
    return int(edge_penalties(graph, colors).sum())


def vertex_conflicts(graph: WeightedGraph, coloring: ColoringLike, v: int) -> int:
    colors = as_coloring(coloring, graph.n)
    i = graph.check_vertex(v)
    neighbors = graph.neighbors(i)
    gap = np.abs(colors[i] - colors[neighbors])
    return int(np.maximum(0, graph.neighbor_distances(i) - gap).sum())


def max_color(coloring: ColoringLike) -> int:
    colors = np.asarray(coloring)
    if colors.size == 0:
        raise InputError("max_color of an empty coloring")
    return int(colors.max())


def is_feasible(graph: WeightedGraph, coloring: ColoringLike) -> bool:
    return evaluate(graph, coloring) == 0


def first_violation(graph: WeightedGraph, coloring: ColoringLike) -> Optional[Violation]:
    """Walk the edge list directly, independent of the adjacency caches"""
    colors = [int(c) for c in as_coloring(coloring, graph.n)]
    for u, v, d in graph.edges:
        cu, cv = colors[u - 1], colors[v - 1]
        if abs(cu - cv) < d:
            return Violation(u, v, cu, cv, d)
    return None
