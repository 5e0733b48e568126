"""
Solver result cache (Redis or FakeRedis).
"""

from .cache_layer import CacheLayer, open_cache, solution_cache_key

__all__ = ['CacheLayer', 'open_cache', 'solution_cache_key']
