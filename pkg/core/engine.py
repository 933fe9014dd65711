import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from loguru import logger
from tqdm import tqdm

from cache.manager import CacheManager
from config.settings import LOOP_DEFAULT, MAX_CONCURRENT, ORACLE_MAX_VERTICES
from core.reports import VARIANTS, AblationReport, BenchReport, RunRecord
from instances.expansion import (
    BmcpInstance,
    ExpansionMap,
    check_multicoloring,
    expand_to_bcp,
    group_colors,
)
from instances.parser import read_bcp, read_bmcp
from model.errors import Violation
from model.instance import ColoringLike, WeightedGraph, as_coloring, first_violation, max_color
from search.oracle import minimum_span
from search.vns import FeasibilitySink, RunResult, SolverConfig, solve


@dataclass
class LoadedInstance:
    """An instance ready to solve; for BMCP, graph is the expanded BCP graph"""
    name: str
    graph: WeightedGraph
    bmcp: Optional[BmcpInstance] = None
    expansion: Optional[ExpansionMap] = None


@dataclass
class Job:
    instance: str
    variant: str
    run: int
    graph: WeightedGraph
    config: SolverConfig


@dataclass
class VerifyOutcome:
    feasible: bool
    span: int
    violation: Optional[Violation] = None


def execute_job(job: Job) -> RunRecord:
    result = solve(job.graph, job.config)
    return RunRecord(
        instance=job.instance,
        variant=job.variant,
        run=job.run,
        seed=job.config.rng_seed,
        k_star=result.k_star,
        greedy_span=result.greedy_span,
        time_to_best=result.elapsed_to_best,
        iterations=result.iterations,
        trace=result.trace,
    )


class BenchmarkEngine:
    def __init__(self, cache: Optional[CacheManager] = None, workers: int = MAX_CONCURRENT):
        self.cache = cache
        self.workers = max(1, workers)

    def load_instance(
        self,
        path: Path,
        bmcp: bool = False,
        weights: Optional[Path] = None,
        loop_default: int = LOOP_DEFAULT,
    ) -> LoadedInstance:
        path = Path(path)
        if not bmcp:
            graph = read_bcp(path)
            logger.info("Loaded BCP {} (n={}, m={})", path.stem, graph.n, graph.m)
            return LoadedInstance(path.stem, graph)

        if weights is None and path.with_suffix(".w").exists():
            weights = path.with_suffix(".w")
        instance = read_bmcp(path, weights, loop_default)
        graph, expansion = expand_to_bcp(instance)
        logger.info(
            "Loaded BMCP {} (n={}, m={}, expanded to n={}, m={})",
            path.stem, instance.n, instance.graph.m, graph.n, graph.m,
        )
        return LoadedInstance(path.stem, graph, instance, expansion)

    def solve(
        self,
        instance: LoadedInstance,
        config: SolverConfig,
        on_improvement: Optional[FeasibilitySink] = None,
    ) -> RunResult:
        result = solve(instance.graph, config, on_improvement)
        if self.cache is not None:
            key = CacheManager.instance_key(instance.graph)
            previous = self.cache.get_best(key)
            if previous is not None:
                logger.info("Previous best for {}: {}", instance.name, previous[0])
            self.cache.record_best(key, result.k_star, result.best_coloring)
        return result

    async def _run_parallel(self, jobs: Sequence[Job]) -> List[RunRecord]:
        loop = asyncio.get_running_loop()
        semaphore = asyncio.Semaphore(self.workers)
        progress = tqdm(total=len(jobs), desc="runs", unit="run")

        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            async def process_job(job: Job) -> RunRecord:
                async with semaphore:
                    record = await loop.run_in_executor(pool, execute_job, job)
                    progress.update(1)
                    return record

            try:
                return await asyncio.gather(*(process_job(job) for job in jobs))
            finally:
                progress.close()

    def run_jobs(self, jobs: Sequence[Job]) -> List[RunRecord]:
        if self.workers == 1 or len(jobs) <= 1:
            return [execute_job(job) for job in tqdm(jobs, desc="runs", unit="run")]
        return asyncio.run(self._run_parallel(jobs))

    @staticmethod
    def _jobs(
        instances: Sequence[LoadedInstance],
        config: SolverConfig,
        runs: int,
        base_seed: int,
        variants: Sequence[str],
    ) -> List[Job]:
        jobs = []
        for instance in instances:
            for variant in variants:
                for run in range(runs):
                    run_config = config.model_copy(
                        update={"rng_seed": base_seed + run, "criteria_mask": tuple(ch == "1" for ch in variant)}
                    )
                    jobs.append(Job(instance.name, variant, run, instance.graph, run_config))
        return jobs

    def bench(
        self,
        instances: Sequence[LoadedInstance],
        config: SolverConfig,
        runs: int,
        base_seed: int,
        best_known: Optional[Dict[str, int]] = None,
    ) -> BenchReport:
        jobs = self._jobs(instances, config, runs, base_seed, [config.criteria])
        return BenchReport(self.run_jobs(jobs), best_known)

    def ablate(
        self,
        instances: Sequence[LoadedInstance],
        config: SolverConfig,
        runs: int,
        base_seed: int,
    ) -> AblationReport:
        jobs = self._jobs(instances, config, runs, base_seed, VARIANTS)
        return AblationReport(self.run_jobs(jobs))

    def verify(self, instance: LoadedInstance, coloring: ColoringLike) -> VerifyOutcome:
        colors = as_coloring(coloring, instance.graph.n)
        if instance.bmcp is None:
            violation = first_violation(instance.graph, colors)
            return VerifyOutcome(violation is None, max_color(colors), violation)

        # BMCP: judge the lifted multicoloring on the unexpanded constraints
        multicoloring = group_colors(instance.expansion, colors)
        violation = check_multicoloring(instance.bmcp, multicoloring)
        return VerifyOutcome(violation is None, multicoloring.span, violation)

    def oracle(
        self,
        instance: LoadedInstance,
        max_span: int,
        max_vertices: int = ORACLE_MAX_VERTICES,
    ) -> Optional[int]:
        key = CacheManager.instance_key(instance.graph)
        if self.cache is not None:
            hit, span = self.cache.get_oracle(key, max_span)
            if hit:
                logger.debug("Oracle cache hit for {}", instance.name)
                return span

        span = minimum_span(instance.graph, max_span, max_vertices)
        if self.cache is not None:
            self.cache.put_oracle(key, max_span, span)
        return span
