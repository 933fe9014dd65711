"""
BMCP instances and their reduction to BCP by splitting vertices into cliques
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Optional, Tuple

from model.errors import InfeasibleSolutionError, InputError, Violation
from model.instance import ColoringLike, WeightedGraph, as_coloring, first_violation


@dataclass(frozen=True)
class BmcpInstance:
    """A graph whose vertex v demands w(v) colors at pairwise distance d(v, v)"""
    graph: WeightedGraph

    def __post_init__(self):
        if not self.graph.is_bmcp:
            raise InputError("a BMCP instance needs multiplicities and loop distances")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def multiplicity(self) -> Tuple[int, ...]:
        return self.graph.multiplicity

    @property
    def loop_distance(self) -> Tuple[int, ...]:
        return self.graph.loop_distance

    @property
    def demand(self) -> int:
        return sum(self.graph.multiplicity)


@dataclass(frozen=True)
class ExpansionMap:
    """
    origin_of[e - 1] = (original vertex, copy index) for expanded vertex e.
    Copies of one original vertex are numbered contiguously from first_copy[v - 1].
    """
    origin_of: Tuple[Tuple[int, int], ...]
    first_copy: Tuple[int, ...]
    graph: WeightedGraph

    @property
    def expanded_n(self) -> int:
        return len(self.origin_of)

    @property
    def original_n(self) -> int:
        return len(self.first_copy)


@dataclass(frozen=True)
class Multicoloring:
    colors: Dict[int, Tuple[int, ...]]

    @property
    def span(self) -> int:
        return max(max(group) for group in self.colors.values())

    def __getitem__(self, v: int) -> Tuple[int, ...]:
        return self.colors[v]


def expand_to_bcp(bmcp: BmcpInstance) -> Tuple[WeightedGraph, ExpansionMap]:
    weights = bmcp.multiplicity
    first_copy = []
    origin_of = []
    for v, w in enumerate(weights, start=1):
        first_copy.append(len(origin_of) + 1)
        origin_of.extend((v, copy) for copy in range(1, w + 1))

    def copies(v: int) -> range:
        start = first_copy[v - 1]
        return range(start, start + weights[v - 1])

    edges = []
    for v in range(1, bmcp.n + 1):
        loop = bmcp.loop_distance[v - 1]
        edges.extend((a, b, loop) for a, b in combinations(copies(v), 2))
    for u, v, d in bmcp.graph.edges:
        edges.extend((a, b, d) for a in copies(u) for b in copies(v))

    graph = WeightedGraph(len(origin_of), edges)
    return graph, ExpansionMap(tuple(origin_of), tuple(first_copy), graph)


def group_colors(expansion: ExpansionMap, coloring: ColoringLike) -> Multicoloring:
    """Collect the colors of the copies onto their original vertex, unchecked"""
    colors = as_coloring(coloring, expansion.expanded_n)
    groups: Dict[int, list] = {v: [] for v in range(1, expansion.original_n + 1)}
    for (origin, _), color in zip(expansion.origin_of, colors):
        groups[origin].append(int(color))
    return Multicoloring({v: tuple(sorted(group)) for v, group in groups.items()})


def lift_solution(expansion: ExpansionMap, coloring: ColoringLike) -> Multicoloring:
    """Multicoloring of the original instance; refuses infeasible expanded colorings"""
    violation = first_violation(expansion.graph, coloring)
    if violation is not None:
        raise InfeasibleSolutionError(violation)
    return group_colors(expansion, coloring)


def check_multicoloring(bmcp: BmcpInstance, multicoloring: Multicoloring) -> Optional[Violation]:
    """Check the unexpanded BMCP constraints directly: loops first, then edges"""
    for v in range(1, bmcp.n + 1):
        group = multicoloring.colors.get(v, ())
        if len(group) != bmcp.multiplicity[v - 1]:
            raise InputError(
                f"vertex {v} has {len(group)} colors, demand is {bmcp.multiplicity[v - 1]}"
            )
        loop = bmcp.loop_distance[v - 1]
        for a, b in combinations(group, 2):
            if abs(a - b) < loop:
                return Violation(v, v, a, b, loop)

    for u, v, d in bmcp.graph.edges:
        for a in multicoloring.colors[u]:
            for b in multicoloring.colors[v]:
                if abs(a - b) < d:
                    return Violation(u, v, a, b, d)
    return None
