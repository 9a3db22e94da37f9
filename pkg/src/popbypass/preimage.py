"""Preimages under PSB: the recursive enumerator, brute-force fibers, and
the closed-form counts of permutations with 0, 1 or 2 preimages.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import sweep
from .machines import psb
from .perms import Perm, all_permutations, check_distinct, ltr_maxima, shuffles

DEFAULT_CENSUS_BOUND = 9


class ResourceLimitError(RuntimeError):
    pass


def preimages(s: Sequence[int]) -> set[tuple[int, ...]]:
    """All sequences ``t`` on the values of ``s`` with ``psb(t) == s``.

    PSB compares raw values, so for a sequence that is not a permutation the
    answer is taken with respect to those raw values.
    """
    return set(_preimages(check_distinct(s)))


def _preimages(s: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not s:
        yield ()
        return
    top = max(s)
    if s[-1] != top:
        return
    # The output ends with the final pop run m, m+1, ..., top.  Its possible
    # starts are the entries of the longest run of consecutive values ending
    # the sequence; everything before such a run is smaller.
    first = len(s) - 1
    while first > 0 and s[first - 1] == s[first] - 1:
        first -= 1
    for start in range(first, len(s)):
        m = s[start]
        rest = s[:start]
        # Entries pushed after the maximum, in the order they arrive.
        chain = tuple(range(top - 1, m - 1, -1))
        cuts = [0] + [pos for pos, _ in ltr_maxima(rest)]
        for cut in cuts:
            head, bypassed = rest[:cut], rest[cut:]
            tails = []
            for tail in shuffles(bypassed, chain):
                # m - 1 arriving after m would be pushed too.
                if m - 1 in bypassed:
                    where = tail.index(m - 1)
                    if m == top or where > tail.index(m):
                        continue
                tails.append(tail)
            if not tails:
                continue
            for before in _preimages(head):
                for tail in tails:
                    yield before + (top,) + tail


def fiber_bruteforce(sigma: Sequence[int]) -> set[Perm]:
    """``{p in S_n : psb(p) == sigma}`` by trying every permutation."""
    sigma = tuple(sigma)
    return {p for p in all_permutations(len(sigma)) if psb(p) == sigma}


def all_fibers(n: int, jobs: int = 1) -> dict[Perm, list[Perm]]:
    """Every nonempty fiber of PSB on ``S_n``, from one sweep."""
    return sweep.group(psb, n, jobs)


@dataclass
class FiberCensus:
    n: int
    counts: dict[int, int]

    def check(self):
        total = math.factorial(self.n)
        assert sum(self.counts.values()) == total, "census does not cover S_n"
        assert sum(k * c for k, c in self.counts.items()) == total, "fibers do not partition S_n"


def fiber_sizes(n: int, jobs: int = 1) -> Counter:
    """Map each output of PSB on ``S_n`` to its fiber size (zeros omitted)."""
    return sweep.tally(psb, n, jobs)


def census(n: int, bound: int = DEFAULT_CENSUS_BOUND, jobs: int = 1) -> FiberCensus:
    if n > bound:
        raise ResourceLimitError(f"census of S_{n} exceeds the bound {bound}")
    sizes = fiber_sizes(n, jobs)
    counts = Counter(sizes.values())
    missing = math.factorial(n) - len(sizes)
    if missing:
        counts[0] = missing
    return FiberCensus(n, dict(sorted(counts.items())))


# -- closed forms ------------------------------------------------------------

def c0_formula(n: int) -> int:
    return (n - 1) * math.factorial(n - 1)


def c1_formula(n: int) -> int:
    if n == 1:
        return 1
    if n == 2:
        return 0
    return sum(
        math.factorial(n - k) * math.comb(n - k - 1, k - 2)
        for k in range(2, (n + 1) // 2 + 1)
    )


def c2_formula(n: int) -> int:
    total = Fraction(0)
    for k in range(3, n + 1):
        for j in range(1, n - k + 1):
            total += Fraction(n - k - j + 1, j) * math.factorial(n - k) * math.comb(n - j - k, k - 3)
    if total.denominator != 1:
        raise ArithmeticError(f"c2 sum is not an integer at n={n}: {total}")
    return int(total)


def _nonadjacent(positions: Sequence[int]) -> bool:
    return all(b - a > 1 for a, b in zip(positions, positions[1:]))


def in_C1(sigma: Sequence[int]) -> bool:
    """Ends with n, and its left-to-right maxima are n-k..n and pairwise
    nonadjacent.
    """
    n = len(sigma)
    if not n or sigma[-1] != n:
        return False
    maxima = ltr_maxima(sigma)
    values = [v for _, v in maxima]
    if values != list(range(n - len(values) + 1, n + 1)):
        return False
    return _nonadjacent([pos for pos, _ in maxima])


def in_C2(sigma: Sequence[int]) -> bool:
    n = len(sigma)
    if n < 2 or sigma[-1] != n:
        return False
    maxima = ltr_maxima(sigma)
    if len(maxima) < 2:
        return False
    (_, lead), later = maxima[0], maxima[1:]
    values = [v for _, v in later]
    if values != list(range(n - len(values) + 1, n + 1)):
        return False
    # The first maximum is never consecutive with the second one, but it
    # may sit right next to it.
    if lead == values[0] - 1:
        return False
    return _nonadjacent([pos for pos, _ in later])
