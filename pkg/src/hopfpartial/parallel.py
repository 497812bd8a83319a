"""Deterministic partitioning of exhaustive verification loops.

A check worker is a top-level function fn(ctx, lo, hi) -> (failures, witness)
scanning the first loop index over [lo, hi).  The index range is split into a
fixed number of chunks independent of the worker count, and chunk results are
merged in chunk order, so failure counts and first witnesses do not depend on
how many processes ran.  Workers inherit the context through fork.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor

_CHUNKS = 16
_CTX = None


def default_jobs():
    env = os.environ.get("HOPF_PARTIAL_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _chunk_ranges(n):
    k = min(_CHUNKS, n) or 1
    base, extra = divmod(n, k)
    out = []
    lo = 0
    for i in range(k):
        hi = lo + base + (1 if i < extra else 0)
        if hi > lo:
            out.append((lo, hi))
        lo = hi
    return out


def _invoke(args):
    fn, lo, hi = args
    return fn(_CTX, lo, hi)


def run_partitioned(fn, n, ctx, jobs=1):
    """Run fn over a partition of range(n); merge (failures, witness) pairs."""
    global _CTX
    ranges = _chunk_ranges(n)
    if not ranges:
        return 0, None
    if jobs <= 1 or len(ranges) == 1 or not _fork_available():
        results = [fn(ctx, lo, hi) for lo, hi in ranges]
    else:
        _CTX = ctx
        try:
            mp = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=min(jobs, len(ranges)), mp_context=mp) as ex:
                results = list(ex.map(_invoke, [(fn, lo, hi) for lo, hi in ranges]))
        finally:
            _CTX = None
    failures = 0
    witness = None
    for f, w in results:
        failures += f
        if witness is None and w is not None:
            witness = w
    return failures, witness


def run_partitioned_values(fn, n, ctx, jobs=1):
    """Like run_partitioned, but fn returns a dict; chunk dicts are unioned."""
    global _CTX
    ranges = _chunk_ranges(n)
    if not ranges:
        return {}
    if jobs <= 1 or len(ranges) == 1 or not _fork_available():
        results = [fn(ctx, lo, hi) for lo, hi in ranges]
    else:
        _CTX = ctx
        try:
            mp = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=min(jobs, len(ranges)), mp_context=mp) as ex:
                results = list(ex.map(_invoke, [(fn, lo, hi) for lo, hi in ranges]))
        finally:
            _CTX = None
    out = {}
    for d in results:
        out.update(d)
    return out


def _fork_available():
    try:
        return "fork" in multiprocessing.get_all_start_methods()
    except Exception:
        return False
