"""
Solver result cache backed by Redis, or FakeRedis when no server is wanted.
"""

import hashlib
import json
import logging
import pickle
from typing import Any, Dict, Optional

import fakeredis
import redis

logger = logging.getLogger(__name__)

KEY_PREFIX = "hyperlink:solutions:"


def solution_cache_key(system_text: str, fields: Dict) -> str:
    """
    SHA-256 digest of an equation system's text form and the solver settings.

    Args:
        system_text: Canonical text of the equation system
        fields: Solver settings that change the result (starts, seed, tolerances)

    Returns:
        Prefixed hex digest
    """
    payload = system_text + "\n" + json.dumps(fields, sort_keys=True)
    return KEY_PREFIX + hashlib.sha256(payload.encode("utf-8")).hexdigest()


class CacheLayer:
    """
    Pickled key/value storage for solver output.

    FakeRedis keeps everything in-process for tests and single runs; a Redis server lets batch
    studies over link tables share solutions between runs.
    """

    def __init__(self, use_fake: bool = True, host: str = "localhost", port: int = 6379, db: int = 0):
        """
        Args:
            use_fake: Use an in-process FakeRedis instead of a server
            host: Redis server host (ignored with use_fake)
            port: Redis server port (ignored with use_fake)
            db: Redis database number
        """
        if use_fake:
            self.client = fakeredis.FakeRedis(db=db, decode_responses=False)
        else:
            self.client = redis.Redis(host=host, port=port, db=db, decode_responses=False)
        self.hits = 0
        self.misses = 0

    def set(self, key: str, value: Any, ttl: Optional[int] = None) -> None:
        self.client.set(key, pickle.dumps(value), ex=ttl)

    def get(self, key: str) -> Optional[Any]:
        """Stored value, or None on a miss."""
        serialized = self.client.get(key)
        if serialized is None:
            self.misses += 1
            return None
        self.hits += 1
        return pickle.loads(serialized)

    def clear(self) -> None:
        """Drop every cached solution set, leaving other keys of the database alone."""
        keys = list(self.client.scan_iter(match=KEY_PREFIX + "*"))
        if keys:
            self.client.delete(*keys)


def open_cache(mode: str, host: str = "localhost", port: int = 6379) -> Optional[CacheLayer]:
    """
    Cache for a run: "fake", "redis" or "off".

    Raises:
        ValueError: for an unknown mode
    """
    if mode == "off":
        return None
    if mode not in ("fake", "redis"):
        raise ValueError(f"unknown cache mode {mode!r}; expected fake, redis or off")
    cache = CacheLayer(use_fake=(mode == "fake"), host=host, port=port)
    logger.debug("Solver cache: %s", mode)
    return cache
