"""
Command line front end: solve, bench, ablate, verify, oracle
"""
import json
import sys
from pathlib import Path
from typing import Annotated, List, Optional

import typer
from loguru import logger
from rich.console import Console
from rich.markup import escape

from cache.manager import CacheManager
from config.settings import (
    BASE_SEED,
    CACHE_ENABLED,
    CRITERIA,
    GREEDY_ORDER,
    KMAX,
    KMIN,
    LOG_LEVEL,
    LOOP_DEFAULT,
    MAX_CONCURRENT,
    ORACLE_MAX_VERTICES,
    PMOVE,
    RUNS,
    TIME_LIMIT,
)
from core.engine import BenchmarkEngine, LoadedInstance
from core.reports import load_best_known
from instances.solution import load_solution, save_solution
from model.errors import ColoringError
from search.vns import SolverConfig, make_config

app = typer.Typer(add_completion=False, help="Bandwidth coloring and multicoloring solver")
console = Console(soft_wrap=True)

InstanceArg = Annotated[Path, typer.Option("--instance", exists=True, dir_okay=False, help="Instance file")]
InstancesArg = Annotated[List[Path], typer.Option("--instance", exists=True, dir_okay=False, help="Instance file, repeatable")]
WeightsArg = Annotated[Optional[Path], typer.Option("--weights", exists=True, dir_okay=False, help="BMCP vertex weights")]
BmcpArg = Annotated[bool, typer.Option("--bmcp", help="Treat instances as BMCP and solve the clique expansion")]
LoopDefaultArg = Annotated[int, typer.Option("--loop-default", min=1, help="d(v,v) for vertices without a loop line")]
TimeLimitArg = Annotated[float, typer.Option("--time-limit", min=0, help="Seconds per run")]
MaxItersArg = Annotated[Optional[int], typer.Option("--max-iters", min=1, help="Cap on shake/VND cycles")]
KminArg = Annotated[int, typer.Option("--kmin")]
KmaxArg = Annotated[int, typer.Option("--kmax")]
PmoveArg = Annotated[float, typer.Option("--pmove")]
CriteriaArg = Annotated[str, typer.Option("--criteria", help="Ordering criteria bits XYZ")]
SeedArg = Annotated[int, typer.Option("--seed", help="RNG seed (base seed for benches)")]
StartKArg = Annotated[Optional[int], typer.Option("--start-k", help="Start the search at this many colors")]
GreedyOrderArg = Annotated[str, typer.Option("--greedy-order", help="id or weight")]
RunsArg = Annotated[int, typer.Option("--runs", min=1)]
WorkersArg = Annotated[int, typer.Option("--workers", min=1)]
TraceArg = Annotated[Optional[Path], typer.Option("--trace", help="Write improvement events as JSON")]
NoCacheArg = Annotated[bool, typer.Option("--no-cache", help="Bypass the result cache")]
TimingArg = Annotated[bool, typer.Option("--timing/--no-timing", help="Emit time columns")]


@app.callback()
def main(verbose: Annotated[bool, typer.Option("--verbose", "-v")] = False) -> None:
    logger.remove()
    # stderr is looked up per message
    logger.add(lambda message: sys.stderr.write(message), level="DEBUG" if verbose else LOG_LEVEL)


def _engine(no_cache: bool = False, workers: int = 1) -> BenchmarkEngine:
    cache = CacheManager() if CACHE_ENABLED and not no_cache else None
    return BenchmarkEngine(cache=cache, workers=workers)


def _fail(exc: Exception) -> typer.Exit:
    console.print(f"[red]error:[/red] {escape(str(exc))}", highlight=False)
    return typer.Exit(code=2)


def _config(time_limit, max_iters, kmin, kmax, pmove, criteria, seed, start_k, greedy_order) -> SolverConfig:
    return make_config(
        time_max=time_limit,
        max_iters=max_iters,
        k_min=kmin,
        k_max=kmax,
        p_move=pmove,
        criteria_mask=criteria,
        rng_seed=seed,
        start_k=start_k,
        greedy_order=greedy_order,
    )


def _load_all(
    engine: BenchmarkEngine, paths: List[Path], bmcp: bool, weights: Optional[Path], loop_default: int
) -> List[LoadedInstance]:
    bmcp = bmcp or weights is not None
    return [engine.load_instance(path, bmcp=bmcp, weights=weights, loop_default=loop_default) for path in paths]


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


@app.command("solve")
def cmd_solve(
    instance: InstanceArg,
    weights: WeightsArg = None,
    bmcp: BmcpArg = False,
    loop_default: LoopDefaultArg = LOOP_DEFAULT,
    time_limit: TimeLimitArg = TIME_LIMIT,
    max_iters: MaxItersArg = None,
    kmin: KminArg = KMIN,
    kmax: KmaxArg = KMAX,
    pmove: PmoveArg = PMOVE,
    criteria: CriteriaArg = CRITERIA,
    seed: SeedArg = BASE_SEED,
    start_k: StartKArg = None,
    greedy_order: GreedyOrderArg = GREEDY_ORDER,
    out: Annotated[Optional[Path], typer.Option("--out", help="Solution file")] = None,
    trace: TraceArg = None,
    no_cache: NoCacheArg = False,
) -> None:
    """Solve one instance and write its best coloring"""
    try:
        config = _config(time_limit, max_iters, kmin, kmax, pmove, criteria, seed, start_k, greedy_order)
        engine = _engine(no_cache)
        loaded = engine.load_instance(instance, bmcp=bmcp or weights is not None, weights=weights, loop_default=loop_default)
    except ColoringError as exc:
        raise _fail(exc)

    result = engine.solve(loaded, config, lambda _, span: logger.info("{}: k* = {}", loaded.name, span))
    out = out or Path(f"{loaded.name}.sol")
    save_solution(out, result.best_coloring, loaded.name)
    if trace is not None:
        trace.write_text(json.dumps({"instance": loaded.name, **result.to_dict()}, indent=2))

    console.print(
        f"{loaded.name}: k*={result.k_star} elapsed={result.elapsed_to_best:.3f}s "
        f"iterations={result.iterations} seed={result.seed} -> {out}",
        highlight=False,
    )


@app.command("bench")
def cmd_bench(
    instance: InstancesArg,
    best_known: Annotated[Optional[Path], typer.Option("--best-known", exists=True, dir_okay=False)] = None,
    weights: WeightsArg = None,
    bmcp: BmcpArg = False,
    loop_default: LoopDefaultArg = LOOP_DEFAULT,
    runs: RunsArg = RUNS,
    time_limit: TimeLimitArg = TIME_LIMIT,
    max_iters: MaxItersArg = None,
    kmin: KminArg = KMIN,
    kmax: KmaxArg = KMAX,
    pmove: PmoveArg = PMOVE,
    criteria: CriteriaArg = CRITERIA,
    seed: SeedArg = BASE_SEED,
    start_k: StartKArg = None,
    greedy_order: GreedyOrderArg = GREEDY_ORDER,
    workers: WorkersArg = MAX_CONCURRENT,
    out: Annotated[Optional[Path], typer.Option("--out", help="Report CSV (stdout if absent)")] = None,
    timing: TimingArg = True,
    trace: TraceArg = None,
) -> None:
    """Independent seeded runs per instance, summarized like the literature tables"""
    try:
        config = _config(time_limit, max_iters, kmin, kmax, pmove, criteria, seed, start_k, greedy_order)
        engine = _engine(True, workers)
        loaded = _load_all(engine, instance, bmcp, weights, loop_default)
        reference = load_best_known(best_known) if best_known else None
    except ColoringError as exc:
        raise _fail(exc)

    report = engine.bench(loaded, config, runs, seed, reference)
    _write(report.to_csv(timing), out)
    if out is not None:
        out.with_suffix(".runs.csv").write_text(report.runs_csv(timing), encoding="utf-8", newline="\n")
    if trace is not None:
        _write_traces(trace, report.records)


@app.command("ablate")
def cmd_ablate(
    instance: InstancesArg,
    weights: WeightsArg = None,
    bmcp: BmcpArg = False,
    loop_default: LoopDefaultArg = LOOP_DEFAULT,
    runs: RunsArg = RUNS,
    time_limit: TimeLimitArg = TIME_LIMIT,
    max_iters: MaxItersArg = None,
    kmin: KminArg = KMIN,
    kmax: KmaxArg = KMAX,
    pmove: PmoveArg = PMOVE,
    seed: SeedArg = BASE_SEED,
    start_k: StartKArg = None,
    greedy_order: GreedyOrderArg = GREEDY_ORDER,
    workers: WorkersArg = MAX_CONCURRENT,
    out: Annotated[Optional[Path], typer.Option("--out", help="Report CSV (stdout if absent)")] = None,
    timing: TimingArg = True,
) -> None:
    """All eight on/off combinations of the VND ordering criteria"""
    try:
        config = _config(time_limit, max_iters, kmin, kmax, pmove, CRITERIA, seed, start_k, greedy_order)
        engine = _engine(True, workers)
        loaded = _load_all(engine, instance, bmcp, weights, loop_default)
    except ColoringError as exc:
        raise _fail(exc)

    report = engine.ablate(loaded, config, runs, seed)
    _write(report.to_csv(), out)
    if out is not None:
        out.with_suffix(".runs.csv").write_text(report.runs_csv(timing), encoding="utf-8", newline="\n")


def _write_traces(path: Path, records) -> None:
    events = [
        {"instance": r.instance, "variant": r.variant, "run": r.run, "seed": r.seed,
         "trace": [[round(t, 6), k] for t, k in r.trace]}
        for r in records
    ]
    path.write_text(json.dumps(events, indent=2))


@app.command("verify")
def cmd_verify(
    instance: InstanceArg,
    solution: Annotated[Path, typer.Option("--solution", exists=True, dir_okay=False)],
    weights: WeightsArg = None,
    bmcp: BmcpArg = False,
    loop_default: LoopDefaultArg = LOOP_DEFAULT,
) -> None:
    """Exit 0 if the solution is feasible, 1 if a constraint is violated"""
    try:
        engine = _engine(True)
        loaded = engine.load_instance(instance, bmcp=bmcp or weights is not None, weights=weights, loop_default=loop_default)
        outcome = engine.verify(loaded, load_solution(solution, loaded.graph.n))
    except ColoringError as exc:
        raise _fail(exc)

    if outcome.feasible:
        console.print(f"{loaded.name}: feasible, span {outcome.span}", highlight=False)
        return
    console.print(f"{loaded.name}: infeasible, span {outcome.span}, {outcome.violation}", highlight=False)
    raise typer.Exit(code=1)


@app.command("oracle")
def cmd_oracle(
    instance: InstanceArg,
    max_span: Annotated[int, typer.Option("--max-span", min=1)],
    weights: WeightsArg = None,
    bmcp: BmcpArg = False,
    loop_default: LoopDefaultArg = LOOP_DEFAULT,
    max_vertices: Annotated[int, typer.Option("--max-vertices", min=1)] = ORACLE_MAX_VERTICES,
    no_cache: NoCacheArg = False,
) -> None:
    """Exact minimum span by exhaustive search on small instances"""
    try:
        engine = _engine(no_cache)
        loaded = engine.load_instance(instance, bmcp=bmcp or weights is not None, weights=weights, loop_default=loop_default)
        span = engine.oracle(loaded, max_span, max_vertices)
    except ColoringError as exc:
        raise _fail(exc)

    if span is None:
        console.print(f"{loaded.name}: none <= {max_span}", highlight=False)
    else:
        console.print(f"{loaded.name}: minimum span {span}", highlight=False)


if __name__ == "__main__":
    app()
