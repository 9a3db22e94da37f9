"""Motzkin paths with no peaks whose descents always reach the floor.

Paths are strings over ``U``, ``H``, ``D``.
"""
from __future__ import annotations

from functools import lru_cache

from .perms import InvalidInputError

STEPS = "UHD"
_DELTA = {"U": 1, "H": 0, "D": -1}


def levels(path: str) -> list[int]:
    """Running levels after each step; raises on an invalid Motzkin path."""
    out = []
    level = 0
    for step in path:
        if step not in _DELTA:
            raise InvalidInputError(f"unknown step {step!r}")
        level += _DELTA[step]
        if level < 0:
            raise InvalidInputError(f"path dips below the floor: {path}")
        out.append(level)
    if level != 0:
        raise InvalidInputError(f"path does not return to the floor: {path}")
    return out


def is_restricted(path: str) -> bool:
    lv = levels(path)
    if "UD" in path:
        return False
    for i, step in enumerate(path):
        ends_run = step == "D" and (i + 1 == len(path) or path[i + 1] != "D")
        if ends_run and lv[i] != 0:
            return False
    return True


def gen_restricted(n: int) -> list[str]:
    """All restricted paths with ``n`` up plus horizontal steps, ordered
    lexicographically with ``U < H < D``.
    """
    out: list[str] = []

    # A descent must run all the way down, so it is emitted as one block.
    def rec(prefix: str, budget: int, level: int):
        if budget == 0:
            if level == 0:
                out.append(prefix)
            elif not prefix.endswith("U"):
                out.append(prefix + "D" * level)
            return
        # Climbing higher than the remaining budget is fine; descents cost
        # nothing, but there must be an H before the block.
        rec(prefix + "U", budget - 1, level + 1)
        rec(prefix + "H", budget - 1, level)
        if level > 0 and not prefix.endswith("U"):
            rec(prefix + "D" * level, budget, 0)

    rec("", n, 0)
    return out


@lru_cache(maxsize=None)
def _count(budget: int, level: int, after_up: bool) -> int:
    if budget == 0:
        return 1 if level == 0 or not after_up else 0
    total = _count(budget - 1, level + 1, True) + _count(budget - 1, level, False)
    if level > 0 and not after_up:
        total += _count(budget, 0, False) if budget else 0
    return total


def count_restricted(n: int) -> int:
    """Number of restricted paths of size ``n`` without enumerating them."""
    return _count(n, 0, False)
