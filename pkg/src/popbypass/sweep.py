"""Exhaustive sweeps over S_n, optionally split across worker processes.

Work is partitioned by the first entry of the permutation; partial results
are merged in that order so output never depends on the worker count.
Callables passed in must be picklable when ``jobs > 1``.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Hashable, Sequence

from .perms import Perm, all_permutations, permutations_starting_with


def default_jobs() -> int:
    return os.cpu_count() or 1


def _chunks(n: int) -> list[int]:
    return list(range(1, n + 1)) if n > 0 else []


def _run(worker, fn, n: int, jobs: int) -> list:
    if n == 0:
        return [worker(fn, 0, 0)]
    if jobs <= 1:
        return [worker(fn, n, first) for first in _chunks(n)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(worker, fn, n, first) for first in _chunks(n)]
        return [f.result() for f in futures]


def _perms(n: int, first: int):
    return all_permutations(0) if n == 0 else permutations_starting_with(n, first)


def _collect_part(pred, n, first):
    return [p for p in _perms(n, first) if pred(p)]


def _tally_part(fn, n, first):
    return Counter(fn(p) for p in _perms(n, first))


def _group_part(fn, n, first):
    out: dict = {}
    for p in _perms(n, first):
        out.setdefault(fn(p), []).append(p)
    return out


def collect(pred: Callable[[Perm], bool], n: int, jobs: int = 1) -> list[Perm]:
    """Permutations of size ``n`` satisfying ``pred``, in lexicographic order."""
    out: list[Perm] = []
    for part in _run(_collect_part, pred, n, jobs):
        out.extend(part)
    return out


def tally(fn: Callable[[Perm], Hashable], n: int, jobs: int = 1) -> Counter:
    total: Counter = Counter()
    for part in _run(_tally_part, fn, n, jobs):
        total.update(part)
    return total


def group(fn: Callable[[Perm], Hashable], n: int, jobs: int = 1) -> dict:
    merged: dict = {}
    for part in _run(_group_part, fn, n, jobs):
        for key, members in part.items():
            merged.setdefault(key, []).extend(members)
    return merged


def count(pred: Callable[[Perm], bool], n: int, jobs: int = 1) -> int:
    return len(collect(pred, n, jobs))


def first_mismatch(a: set, b: set) -> Sequence | None:
    """Lexicographically least element of the symmetric difference."""
    diff = a ^ b
    return min(diff) if diff else None
