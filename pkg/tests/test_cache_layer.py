"""
Simple tests for CacheLayer functionality.
"""

import sys
import os
import numpy as np
import pytest

# Add the parent directory to the path so we can import from src
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cache.cache_layer import KEY_PREFIX, CacheLayer, open_cache, solution_cache_key


def test_cache_basic_operations():
    """Test basic set/get operations."""

    cache = CacheLayer(use_fake=True)
    cache.clear()  # Start with clean cache
    key = solution_cache_key("w1 - 1 = 0", {"starts": 1})

    values = np.array([0.5j, -0.5 - 0.5j])
    cache.set(key, {"values": values, "residual": 1e-14})
    retrieved = cache.get(key)
    assert np.array_equal(values, retrieved["values"])
    assert cache.hits == 1

    # Test non-existent key
    assert cache.get(KEY_PREFIX + "missing") is None
    assert cache.misses == 1

    cache.clear()
    assert cache.get(key) is None
    assert cache.misses == 2


def test_cache_keys():
    """Keys depend on the equations and on every solver field."""
    key = solution_cache_key("u1*u2 + 1 = 0", {"starts": 10, "seed": 0})
    assert key.startswith(KEY_PREFIX)
    assert key == solution_cache_key("u1*u2 + 1 = 0", {"seed": 0, "starts": 10}), "field order must not change the key"
    assert key != solution_cache_key("u1*u2 + 1 = 0", {"starts": 10, "seed": 1})
    assert key != solution_cache_key("u1*u2 - 1 = 0", {"starts": 10, "seed": 0})


def test_clear_keeps_foreign_keys():
    cache = CacheLayer(use_fake=True)
    cache.client.set("other:key", b"1")
    cache.set(solution_cache_key("x", {}), [1, 2])
    cache.clear()
    assert cache.get(solution_cache_key("x", {})) is None
    assert cache.client.get("other:key") == b"1"


def test_open_cache_modes():
    assert open_cache("off") is None
    assert isinstance(open_cache("fake"), CacheLayer)
    with pytest.raises(ValueError):
        open_cache("memcached")


if __name__ == "__main__":
    test_cache_basic_operations()
    test_cache_keys()
    test_clear_keeps_foreign_keys()
    print("All tests passed!")
