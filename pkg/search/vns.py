"""
Variable neighborhood search for bandwidth coloring

The outer loop shakes the incumbent in neighborhood N_k (k recolored vertices),
improves the result with a variable neighborhood descent over conflict-ordered
vertices, and accepts it through compare(). Every time the descent reaches zero
penalty the coloring is reported as the new best and the color limit nc shrinks
below its span.
"""
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config.settings import BASE_SEED, CRITERIA, GREEDY_ORDER, KMAX, KMIN, PMOVE, TIME_LIMIT
from model.errors import InputError
from model.instance import Coloring, WeightedGraph, max_color
from model.state import SearchState
from search.constructive import greedy_order, greedy_ub

FeasibilitySink = Callable[[Coloring, int], None]


def parse_criteria(bits: str) -> Tuple[bool, bool, bool]:
    """'XYZ' bit string: X conflicts, Y distance from mid color, Z geometric mean"""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise InputError(f"criteria must be three 0/1 characters, got {bits!r}")
    return tuple(ch == "1" for ch in bits)


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    k_min: int = Field(KMIN, ge=1)
    k_max: int = Field(KMAX, ge=1)
    time_max: Optional[float] = Field(TIME_LIMIT, ge=0)  # seconds, None for no limit
    max_iters: Optional[int] = Field(None, ge=1)
    p_move: float = Field(PMOVE, ge=0, le=1)
    criteria_mask: Tuple[bool, bool, bool] = parse_criteria(CRITERIA)
    rng_seed: int = Field(BASE_SEED, ge=0, lt=2**64)
    greedy_order: Literal["id", "weight"] = GREEDY_ORDER
    start_k: Optional[int] = Field(None, ge=1)

    @field_validator("criteria_mask", mode="before")
    @classmethod
    def _criteria_from_bits(cls, value):
        if isinstance(value, str):
            try:
                return parse_criteria(value)
            except InputError as exc:
                raise ValueError(str(exc)) from None
        return value

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.k_min > self.k_max:
            raise ValueError(f"k_min {self.k_min} exceeds k_max {self.k_max}")
        if self.time_max is None and self.max_iters is None:
            raise ValueError("need a time limit or an iteration cap")
        return self

    @property
    def criteria(self) -> str:
        return "".join("1" if flag else "0" for flag in self.criteria_mask)


def make_config(**options) -> SolverConfig:
    """Build a SolverConfig, reporting validation problems as InputError"""
    try:
        return SolverConfig(**{k: v for k, v in options.items() if v is not None})
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in exc.errors()
        )
        raise InputError(f"invalid solver config: {problems}") from None


@dataclass
class RunResult:
    k_star: int
    best_coloring: Coloring
    elapsed_to_best: float
    iterations: int
    greedy_span: int
    seed: int
    elapsed_total: float = 0.0
    trace: List[Tuple[float, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["best_coloring"] = [int(c) for c in self.best_coloring]
        data["trace"] = [[round(t, 6), k] for t, k in self.trace]
        return data


def init_solution(n: int, ub: int, rng: np.random.Generator) -> Coloring:
    """Uniform random colors in [1, ub - 1]; all ones when ub < 2"""
    if ub < 2:
        return np.ones(n, dtype=np.int64)
    return rng.integers(1, ub, size=n, dtype=np.int64)


def shake(x: Coloring, k: int, nc: int, rng: np.random.Generator) -> Coloring:
    """Recolor min(k, n) distinct vertices, each to a different color in [1, nc]"""
    if k < 1:
        raise InputError(f"shake needs k >= 1, got {k}")
    shaken = np.array(x, dtype=np.int64)
    if nc < 2:
        return shaken
    chosen = rng.choice(len(shaken), size=min(k, len(shaken)), replace=False)
    # an offset in 1..nc-1 modulo nc never lands back on the old color
    offsets = rng.integers(1, nc, size=len(chosen), dtype=np.int64)
    shaken[chosen] = (shaken[chosen] - 1 + offsets) % nc + 1
    return shaken


def vertex_order(
    conflicts: np.ndarray,
    colors: np.ndarray,
    nc: int,
    weight_sum: np.ndarray,
    max_incident: np.ndarray,
    mask: Sequence[bool],
) -> np.ndarray:
    use_conflicts, use_middle, use_mean = mask
    # np.lexsort treats the last key as primary; vertex index is the final tie-break
    keys = [np.arange(len(colors))]
    if use_mean:
        # sqrt(a) > sqrt(b) iff a > b, so compare the squared geometric means
        keys.append(-(np.asarray(weight_sum, dtype=np.int64) * np.asarray(max_incident, dtype=np.int64)))
    if use_middle:
        # |nc/2 - c| scaled by two stays integral
        keys.append(np.abs(nc - 2 * np.asarray(colors, dtype=np.int64)))
    if use_conflicts:
        keys.append(-np.asarray(conflicts, dtype=np.int64))
    return np.lexsort(keys) + 1


def order_vertices(state: SearchState, mask: Sequence[bool]) -> np.ndarray:
    return vertex_order(
        state.conflict_of, state.colors, state.nc, state.weight_sum, state.max_incident, mask
    )


def find_best_recoloring(state: SearchState, v: int) -> Tuple[int, int]:
    """Best color in 1..nc for vertex v and its penalty delta; ties go to the smaller color"""
    return _best_recoloring(state, state.graph.check_vertex(v))


def _best_recoloring(state: SearchState, i: int) -> Tuple[int, int]:
    penalties = state.color_penalties(i)
    best = int(np.argmin(penalties))
    return best + 1, int(penalties[best]) - int(state.conflict_of[i])


def compare(
    candidate: SearchState,
    incumbent: SearchState,
    p_move: float,
    rng: np.random.Generator,
) -> bool:
    if candidate.nc != incumbent.nc:
        return candidate.nc < incumbent.nc
    if candidate.total_penalty != incumbent.total_penalty:
        return candidate.total_penalty < incumbent.total_penalty
    return bool(rng.random() < p_move)


def remove_last_color(state: SearchState, nc: int, rng: np.random.Generator) -> SearchState:
    """Lower the color limit to nc and re-randomize every vertex colored above it"""
    state.nc = nc
    above = state.colors > nc
    state.colors[above] = rng.integers(1, nc + 1, size=int(above.sum()), dtype=np.int64)
    state.refresh()
    return state


def _expired(deadline: Optional[float]) -> bool:
    return deadline is not None and time.perf_counter() >= deadline


def _report_feasible(
    state: SearchState,
    sink: FeasibilitySink,
    rng: np.random.Generator,
) -> bool:
    """Hand the feasible coloring to the sink; False once the span cannot shrink further"""
    # re-randomizing can land on another feasible coloring, report that one too
    while state.total_penalty == 0:
        span = max_color(state.colors)
        sink(state.colors.copy(), span)
        if span <= state.graph.span_lower_bound:
            return False
        remove_last_color(state, span - 1, rng)
    return True


def vnd(
    state: SearchState,
    deadline: Optional[float],
    config: SolverConfig,
    feasibility_sink: FeasibilitySink,
    rng: np.random.Generator,
) -> SearchState:
    if state.total_penalty == 0 and not _report_feasible(state, feasibility_sink, rng):
        return state

    improved = True
    while improved:
        improved = False
        for v in order_vertices(state, config.criteria_mask):
            if _expired(deadline):
                return state
            i = int(v) - 1
            # a conflict-free vertex cannot lower the penalty
            if state.conflict_of[i] == 0:
                continue
            color, delta = _best_recoloring(state, i)
            if delta >= 0:
                continue
            state.recolor(i, color)
            improved = True
            if state.total_penalty == 0 and not _report_feasible(state, feasibility_sink, rng):
                return state
    return state


class _BestSoFar:
    """Feasibility sink recording xs, k* and the improvement trace of one run"""

    def __init__(self, started: float, on_improvement: Optional[FeasibilitySink] = None):
        self.started = started
        self.on_improvement = on_improvement
        self.k_star: Optional[int] = None
        self.coloring: Optional[Coloring] = None
        self.elapsed = 0.0
        self.trace: List[Tuple[float, int]] = []

    def __call__(self, coloring: Coloring, span: int) -> None:
        if self.k_star is not None and span >= self.k_star:
            return
        self.k_star = span
        self.coloring = coloring
        self.elapsed = time.perf_counter() - self.started
        self.trace.append((self.elapsed, span))
        logger.debug("k* = {} after {:.3f}s", span, self.elapsed)
        if self.on_improvement is not None:
            self.on_improvement(coloring, span)


def solve(
    graph: WeightedGraph,
    config: SolverConfig,
    on_improvement: Optional[FeasibilitySink] = None,
) -> RunResult:
    started = time.perf_counter()
    deadline = None if config.time_max is None else started + config.time_max
    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    best = _BestSoFar(started, on_improvement)

    xs = greedy_ub(graph, greedy_order(graph, config.greedy_order))
    greedy_span = max_color(xs)
    best(xs, greedy_span)
    lower = graph.span_lower_bound
    logger.debug("Greedy UB {} (lower bound {})", greedy_span, lower)

    iterations = 0
    if greedy_span > lower and config.time_max != 0:
        nc = greedy_span - 1
        if config.start_k is not None:
            if config.start_k < lower:
                logger.warning("start k {} is below the lower bound {}, using {}", config.start_k, lower, lower)
            nc = min(nc, max(config.start_k, lower))
        incumbent = SearchState(graph, init_solution(graph.n, nc + 1, rng), nc)
        k = config.k_min

        while best.k_star > lower:
            if _expired(deadline):
                break
            if config.max_iters is not None and iterations >= config.max_iters:
                break
            shaken = shake(incumbent.colors, min(k, graph.n), incumbent.nc, rng)
            candidate = vnd(SearchState(graph, shaken, incumbent.nc), deadline, config, best, rng)
            iterations += 1
            if compare(candidate, incumbent, config.p_move, rng):
                incumbent = candidate
            else:
                k = k + 1 if k < config.k_max else config.k_min

    return RunResult(
        k_star=best.k_star,
        best_coloring=best.coloring,
        elapsed_to_best=best.elapsed,
        iterations=iterations,
        greedy_span=greedy_span,
        seed=config.rng_seed,
        elapsed_total=time.perf_counter() - started,
        trace=best.trace,
    )
