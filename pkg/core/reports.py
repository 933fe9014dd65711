"""
Benchmark and ablation reports assembled from per-run records
"""
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from loguru import logger

from model.errors import ParseError

# every on/off combination of the three ordering criteria, "000" .. "111"
VARIANTS = tuple("".join(bits) for bits in product("01", repeat=3))

CSV_OPTIONS = dict(index=False, lineterminator="\n", float_format="%.4f")


@dataclass
class RunRecord:
    instance: str
    variant: str
    run: int
    seed: int
    k_star: int
    greedy_span: int
    time_to_best: float
    iterations: int
    trace: List[Tuple[float, int]] = field(default_factory=list)


def load_best_known(path: Path) -> Dict[str, int]:
    """Reference spans from a CSV with 'instance' and 'best' columns"""
    frame = pd.read_csv(path)
    if not {"instance", "best"} <= set(frame.columns):
        raise ParseError(f"{path}: best-known CSV needs 'instance' and 'best' columns")
    return {str(name): int(best) for name, best in zip(frame["instance"], frame["best"])}


def _runs_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
    frame = pd.DataFrame(
        [
            {
                "instance": r.instance,
                "variant": r.variant,
                "run": r.run,
                "seed": r.seed,
                "k_star": r.k_star,
                "greedy_span": r.greedy_span,
                "time_to_best": r.time_to_best,
                "iterations": r.iterations,
            }
            for r in records
        ],
        columns=[
            "instance", "variant", "run", "seed", "k_star",
            "greedy_span", "time_to_best", "iterations",
        ],
    )
    return frame.sort_values(["instance", "variant", "run"], kind="stable").reset_index(drop=True)


class BenchReport:
    """Per-instance best, average, time-to-best and hit count over seeded runs"""

    def __init__(self, records: Sequence[RunRecord], best_known: Optional[Dict[str, int]] = None):
        self.records = list(records)
        self.best_known = best_known or {}
        self.runs = _runs_frame(records)
        reference = self.runs["instance"].map(self.best_known).astype("Int64")
        self.runs["hit"] = (self.runs["k_star"] <= reference).astype("boolean")

        rows = []
        for name, group in self.runs.groupby("instance", sort=True):
            known = self.best_known.get(name)
            if known is None:
                logger.warning("No best-known span for {}, diff column left empty", name)
            hits = group[group["hit"].fillna(False)]
            rows.append({
                "instance": name,
                "runs": len(group),
                "best": int(group["k_star"].min()),
                "avg": float(group["k_star"].mean()),
                "time_all": float(group["time_to_best"].mean()),
                "time_hit": float(hits["time_to_best"].mean()) if len(hits) else None,
                "hits": len(hits) if known is not None else None,
                "best_known": known,
                "diff": int(group["k_star"].min()) - known if known is not None else None,
            })
        self.table = pd.DataFrame(rows, columns=[
            "instance", "runs", "best", "avg", "time_all", "time_hit", "hits", "best_known", "diff",
        ])
        for column in ("hits", "best_known", "diff"):
            self.table[column] = self.table[column].astype("Int64")

    def to_csv(self, timing: bool = True) -> str:
        table = self.table if timing else self.table.drop(columns=["time_all", "time_hit"])
        return table.to_csv(**CSV_OPTIONS)

    def runs_csv(self, timing: bool = True) -> str:
        runs = self.runs if timing else self.runs.drop(columns=["time_to_best"])
        return runs.to_csv(**CSV_OPTIONS)


class AblationReport:
    """Best and average k* for each instance under all eight criteria variants"""

    def __init__(self, records: Sequence[RunRecord]):
        self.records = list(records)
        self.runs = _runs_frame(records)
        summary = (
            self.runs.groupby(["instance", "variant"], sort=True)["k_star"]
            .agg(best="min", avg="mean")
        )
        instances = sorted(self.runs["instance"].unique())
        summary = summary.reindex(pd.MultiIndex.from_product([instances, VARIANTS]))
        summary["best"] = summary["best"].astype("Int64")
        self.long = summary.rename_axis(["instance", "variant"]).reset_index()

        wide = summary.unstack(level=1)
        wide.columns = [f"{variant}_{stat}" for stat, variant in wide.columns]
        ordered = [f"{variant}_{stat}" for variant in VARIANTS for stat in ("best", "avg")]
        self.table = wide[ordered].rename_axis("instance").reset_index()

    def variants_of(self, instance: str) -> List[str]:
        rows = self.long[(self.long["instance"] == instance) & self.long["best"].notna()]
        return rows["variant"].tolist()

    def to_csv(self) -> str:
        return self.table.to_csv(**CSV_OPTIONS)

    def runs_csv(self, timing: bool = True) -> str:
        runs = self.runs if timing else self.runs.drop(columns=["time_to_best"])
        return runs.to_csv(**CSV_OPTIONS)
