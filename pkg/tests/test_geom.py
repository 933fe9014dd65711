"""
Checks against the GEOM benchmark files, run only when GEOM_DIR points at them
"""
import os
from pathlib import Path

import pytest

from core.engine import BenchmarkEngine
from model.instance import is_feasible
from search.constructive import greedy_ub
from search.vns import make_config

GEOM_DIR = os.getenv("GEOM_DIR")

pytestmark = [
    pytest.mark.slow,
    pytest.mark.skipif(not GEOM_DIR, reason="GEOM_DIR not set"),
]

SIZES = {
    "GEOM20": (20, 40),
    "GEOM20a": (20, 57),
    "GEOM20b": (20, 52),
    "GEOM30": (30, 80),
    "GEOM30a": (30, 111),
    "GEOM30b": (30, 111),
    "GEOM40": (40, 118),
    "GEOM40a": (40, 186),
    "GEOM40b": (40, 197),
    "GEOM50": (50, 177),
    "GEOM50a": (50, 288),
    "GEOM50b": (50, 299),
    "GEOM60": (60, 245),
    "GEOM60a": (60, 399),
    "GEOM60b": (60, 426),
    "GEOM70": (70, 337),
    "GEOM70a": (70, 529),
    "GEOM70b": (70, 558),
    "GEOM80": (80, 429),
    "GEOM80a": (80, 692),
    "GEOM80b": (80, 743),
    "GEOM90": (90, 531),
    "GEOM90a": (90, 879),
    "GEOM90b": (90, 950),
    "GEOM100": (100, 647),
    "GEOM100a": (100, 1092),
    "GEOM100b": (100, 1150),
    "GEOM110": (110, 748),
    "GEOM110a": (110, 1317),
    "GEOM110b": (110, 1366),
    "GEOM120": (120, 893),
    "GEOM120a": (120, 1554),
    "GEOM120b": (120, 1611),
}

# best k* of ten 60 s runs
BCP_BEST = {
    "GEOM20a": 20, "GEOM20b": 13, "GEOM30a": 27, "GEOM30b": 26, "GEOM40a": 37, "GEOM40b": 33,
    "GEOM50": 28, "GEOM60": 33, "GEOM70": 38, "GEOM80": 41, "GEOM90": 46,
}

# best k* of five 300 s runs on the clique expansion
BMCP_BEST = {"GEOM20b": 44, "GEOM30": 160, "GEOM30b": 77, "GEOM20": 149}


def _path(name: str) -> Path:
    path = Path(GEOM_DIR) / f"{name}.col"
    if not path.exists():
        pytest.skip(f"{path} missing")
    return path


@pytest.fixture(scope="module")
def engine():
    return BenchmarkEngine(workers=int(os.getenv("MAX_CONCURRENT", "3")))


@pytest.mark.parametrize("name", sorted(SIZES))
def test_parses_with_published_sizes(engine, name):
    graph = engine.load_instance(_path(name)).graph
    assert (graph.n, graph.m) == SIZES[name]
    assert is_feasible(graph, greedy_ub(graph))


@pytest.mark.parametrize("name", sorted(BCP_BEST))
def test_bcp_best_of_ten(engine, name):
    loaded = [engine.load_instance(_path(name))]
    report = engine.bench(loaded, make_config(time_max=60), runs=10, base_seed=1)
    assert report.table.iloc[0]["best"] == BCP_BEST[name]


@pytest.mark.parametrize("name", sorted(BMCP_BEST))
def test_bmcp_best_of_five(engine, name):
    loaded = [engine.load_instance(_path(name), bmcp=True)]
    report = engine.bench(loaded, make_config(time_max=300), runs=5, base_seed=1)
    assert report.table.iloc[0]["best"] == BMCP_BEST[name]
