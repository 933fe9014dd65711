import numpy as np
import pytest

from cache.manager import CacheManager
from model.instance import WeightedGraph


@pytest.fixture
def cache(tmp_path):
    manager = CacheManager(cache_dir=str(tmp_path))
    yield manager
    manager.close()


def test_key_ignores_edge_order_and_direction():
    a = WeightedGraph(3, [(1, 2, 2), (2, 3, 4)])
    b = WeightedGraph(3, [(3, 2, 4), (2, 1, 2)])
    c = WeightedGraph(3, [(1, 2, 2), (2, 3, 5)])
    assert CacheManager.instance_key(a) == CacheManager.instance_key(b)
    assert CacheManager.instance_key(a) != CacheManager.instance_key(c)


def test_key_separates_bmcp_data():
    plain = WeightedGraph(2, [(1, 2, 2)])
    multi = WeightedGraph(2, [(1, 2, 2)], loop_distance=[1, 1], multiplicity=[2, 1])
    assert CacheManager.instance_key(plain) != CacheManager.instance_key(multi)


def test_best_only_improves(cache):
    assert cache.get_best("k") is None
    assert cache.record_best("k", 10, np.array([1, 10]))
    assert not cache.record_best("k", 11, np.array([1, 11]))
    assert cache.record_best("k", 9, np.array([9, 1]))
    span, coloring = cache.get_best("k")
    assert span == 9 and coloring.tolist() == [9, 1]


def test_survives_reopen(tmp_path):
    first = CacheManager(cache_dir=str(tmp_path))
    first.record_best("k", 7, np.array([1, 7]))
    first.close()
    second = CacheManager(cache_dir=str(tmp_path))
    assert second.get_best("k")[0] == 7
    second.close()


def test_oracle_entries(cache):
    assert cache.get_oracle("k", 10) == (False, None)
    cache.put_oracle("k", 10, 6)
    assert cache.get_oracle("k", 10) == (True, 6)
    assert cache.get_oracle("k", 5) == (True, None)
    assert cache.get_oracle("k", 20) == (True, 6)


def test_failed_oracle_search_only_covers_its_range(cache):
    cache.put_oracle("k", 8, None)
    assert cache.get_oracle("k", 6) == (True, None)
    assert cache.get_oracle("k", 12) == (False, None)
