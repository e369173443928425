"""Compute-once memoisation that is safe for concurrent readers."""

from __future__ import annotations

import functools
import threading


def once(fn):
    """Like ``functools.cache`` but each key is computed exactly once even
    when several threads ask for it at the same time."""
    cache: dict = {}
    locks: dict = {}
    guard = threading.Lock()

    @functools.wraps(fn)
    def wrapper(*args):
        try:
            return cache[args]
        except KeyError:
            pass
        with guard:
            lock = locks.setdefault(args, threading.Lock())
        with lock:
            if args not in cache:
                cache[args] = fn(*args)
        return cache[args]

    wrapper.cache = cache
    wrapper.cache_clear = cache.clear
    return wrapper
