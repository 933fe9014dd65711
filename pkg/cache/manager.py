"""
Two-level cache for expensive per-instance results
"""
import hashlib
import os
from typing import Any, Optional, Tuple

from cachetools import TTLCache
from diskcache import Cache
from loguru import logger

from config.settings import CACHE_DIR, CACHE_TTL
from model.instance import Coloring, WeightedGraph, as_coloring


class CacheManager:
    """Memory TTL cache in front of a persistent disk cache, keyed by instance content"""

    def __init__(self, cache_dir: str = CACHE_DIR, ttl: int = CACHE_TTL):
        self.cache_base = cache_dir
        self.ttl = ttl
        os.makedirs(self.cache_base, exist_ok=True)

        # Memory cache (fastest, limited size)
        self.memory_cache = TTLCache(maxsize=1000, ttl=ttl)

        # Disk cache (slower, persistent)
        self.disk_cache = Cache(os.path.join(self.cache_base, "diskcache"))

    def close(self) -> None:
        self.disk_cache.close()

    @staticmethod
    def instance_key(graph: WeightedGraph) -> str:
        """md5 of the canonical edge list, so renamed copies of a file share entries"""
        edges = sorted((min(u, v), max(u, v), d) for u, v, d in graph.edges)
        canonical = f"{graph.n}|{edges}|{graph.loop_distance}|{graph.multiplicity}"
        return hashlib.md5(canonical.encode()).hexdigest()

    def _get(self, key: str) -> Any:
        if key in self.memory_cache:
            return self.memory_cache[key]
        value = self.disk_cache.get(key, default=None)
        if value is not None:
            # Refresh memory cache
            self.memory_cache[key] = value
        return value

    def _set(self, key: str, value: Any) -> None:
        self.memory_cache[key] = value
        self.disk_cache.set(key, value, expire=self.ttl)

    def get_oracle(self, instance_key: str, max_span: int) -> Tuple[bool, Optional[int]]:
        """(hit, span); span None on a hit means no coloring within max_span"""
        entry = self._get(f"oracle:{instance_key}")
        if entry is None:
            return False, None
        span, searched = entry
        if span is not None:
            return True, span if span <= max_span else None
        if max_span <= searched:
            return True, None
        # an earlier search gave up below this max_span
        return False, None

    def put_oracle(self, instance_key: str, max_span: int, span: Optional[int]) -> None:
        self._set(f"oracle:{instance_key}", (span, max_span))

    def get_best(self, instance_key: str) -> Optional[Tuple[int, Coloring]]:
        entry = self._get(f"best:{instance_key}")
        if entry is None:
            return None
        span, colors = entry
        return span, as_coloring(colors)

    def record_best(self, instance_key: str, span: int, coloring: Coloring) -> bool:
        """Store the coloring if it beats the recorded span; True when it did"""
        previous = self.get_best(instance_key)
        if previous is not None and previous[0] <= span:
            return False
        logger.debug("Recording span {} for instance {}", span, instance_key[:12])
        self._set(f"best:{instance_key}", (span, [int(c) for c in coloring]))
        return True
