"""Permutations, pattern containment and related helpers.

Permutations are plain tuples in one-line notation with entries ``1..n``.
Sequences of distinct integers that are not normalized (``IntSequence`` in
the docs) are tuples too; nothing here re-normalizes them behind your back.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


class InvalidInputError(ValueError):
    pass


class UnsupportedPatternError(ValueError):
    pass


def is_permutation(seq: Sequence[int]) -> bool:
    return sorted(seq) == list(range(1, len(seq) + 1))


def as_permutation(seq: Iterable[int]) -> Perm:
    p = tuple(seq)
    if not is_permutation(p):
        raise InvalidInputError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def check_distinct(seq: Iterable[int]) -> tuple[int, ...]:
    s = tuple(seq)
    if len(set(s)) != len(s):
        raise InvalidInputError(f"entries are not distinct: {s}")
    return s


def reduce(seq: Iterable[int]) -> Perm:
    """Return the permutation order-isomorphic to ``seq``.

    >>> reduce([5, 2, 9])
    (2, 1, 3)
    """
    s = check_distinct(seq)
    rank = {v: r for r, v in enumerate(sorted(s), 1)}
    return tuple(rank[v] for v in s)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def all_permutations(n: int) -> Iterator[Perm]:
    """All permutations of size ``n`` in lexicographic order."""
    if n < 0:
        raise InvalidInputError("size must be non-negative")
    return itertools.permutations(range(1, n + 1))


def permutations_starting_with(n: int, first: int) -> Iterator[Perm]:
    """Lexicographic slice of ``all_permutations(n)`` with fixed first entry."""
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in itertools.permutations(rest):
        yield (first,) + tail


# -- classical containment ---------------------------------------------------

@lru_cache(maxsize=None)
def _bounds(pattern: Perm) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # For each index t, the earlier index holding the closest smaller value
    # (lo) and the closest larger value (hi); -1 when none.
    lo, hi = [], []
    for t, v in enumerate(pattern):
        below = [(pattern[s], s) for s in range(t) if pattern[s] < v]
        above = [(pattern[s], s) for s in range(t) if pattern[s] > v]
        lo.append(max(below)[1] if below else -1)
        hi.append(min(above)[1] if above else -1)
    return tuple(lo), tuple(hi)


def _embeddings(host: Sequence[int], pattern: Perm, anchor: int = -1) -> Iterator[tuple[int, ...]]:
    """Yield position tuples of every occurrence of ``pattern`` in ``host``.

    With ``anchor >= 0`` only occurrences mapping the pattern's maximum onto
    host position ``anchor`` are produced.
    """
    k, n = len(pattern), len(host)
    if k == 0:
        yield ()
        return
    if k > n:
        return
    lo, hi = _bounds(pattern)
    top = pattern.index(k) if anchor >= 0 else -1
    pos = [0] * k
    val = [0] * k

    def rec(t: int, start: int) -> Iterator[tuple[int, ...]]:
        if t == k:
            yield tuple(pos)
            return
        lv = val[lo[t]] if lo[t] >= 0 else -math.inf
        hv = val[hi[t]] if hi[t] >= 0 else math.inf
        if t == top:
            candidates: Iterable[int] = (anchor,) if anchor >= start else ()
        elif top >= 0 and t < top:
            candidates = range(start, min(anchor, n - (k - t) + 1))
        else:
            candidates = range(start, n - (k - t) + 1)
        for j in candidates:
            v = host[j]
            if lv < v < hv:
                pos[t] = j
                val[t] = v
                yield from rec(t + 1, j + 1)

    yield from rec(0, 0)


def occurrences(host: Sequence[int], pattern: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Zero-based position tuples of all occurrences of ``pattern`` in ``host``."""
    return _embeddings(tuple(host), reduce(pattern))


def contains(host: Sequence[int], pattern: Sequence[int]) -> bool:
    for _ in _embeddings(tuple(host), tuple(pattern)):
        return True
    return False


# -- barred patterns ---------------------------------------------------------

@dataclass(frozen=True)
class BarredPattern:
    """A pattern with one marked entry, e.g. ``3 5b 2 4 1``.

    ``barred`` holds 1-based positions inside ``full``.
    """

    full: Perm
    barred: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "full", as_permutation(self.full))
        object.__setattr__(self, "barred", frozenset(self.barred))
        if not self.barred or not all(1 <= b <= len(self.full) for b in self.barred):
            raise InvalidInputError(f"barred positions out of range: {sorted(self.barred)}")

    @property
    def unbarred(self) -> Perm:
        return reduce(v for i, v in enumerate(self.full, 1) if i not in self.barred)

    def __str__(self):
        return format_barred(self)


def contains_barred(host: Sequence[int], bp: BarredPattern) -> bool:
    """True when some occurrence of the unbarred pattern has no extension
    to an occurrence of the full pattern.  ``host`` avoids ``bp`` iff False.
    """
    if len(bp.barred) != 1:
        raise UnsupportedPatternError("only single-bar patterns are supported")
    (b,) = bp.barred
    full = bp.full
    b -= 1
    bar_value = full[b]
    # Unbarred entries in order of position, as indices into ``full``.
    rest = [i for i in range(len(full)) if i != b]
    host = tuple(host)
    for occ in _embeddings(host, bp.unbarred):
        # Position window: strictly between the host images of the
        # positional neighbours of the barred entry.
        left = occ[b - 1] if b > 0 else -1
        right = occ[b] if b < len(occ) else len(host)
        # Value window: strictly between images of the value neighbours.
        lo_v, hi_v = -math.inf, math.inf
        for slot, i in enumerate(rest):
            v = host[occ[slot]]
            if full[i] < bar_value:
                lo_v = max(lo_v, v)
            else:
                hi_v = min(hi_v, v)
        if not any(lo_v < host[j] < hi_v for j in range(left + 1, right)):
            return True
    return False


def avoids_all(host: Sequence[int], patterns: Iterable[Sequence[int] | BarredPattern]) -> bool:
    for pat in patterns:
        if isinstance(pat, BarredPattern):
            if contains_barred(host, pat):
                return False
        elif contains(host, tuple(pat)):
            return False
    return True


@lru_cache(maxsize=None)
def _avoiders(n: int, basis: frozenset[Perm]) -> frozenset[Perm]:
    if () in basis:
        return frozenset()
    if n == 0:
        return frozenset({()})
    out = set()
    for p in _avoiders(n - 1, basis):
        for i in range(n):
            q = p[:i] + (n,) + p[i:]
            # q minus its maximum already avoids the basis, so any
            # occurrence has to use the new maximum.
            if not any(_anchored(q, beta, i) for beta in basis):
                out.add(q)
    return frozenset(out)


def _anchored(host: Perm, pattern: Perm, anchor: int) -> bool:
    for _ in _embeddings(host, pattern, anchor):
        return True
    return False


def avoiders(n: int, basis: Iterable[Sequence[int]]) -> frozenset[Perm]:
    """The set ``Av_n(basis)`` for classical patterns.

    Built size by size: every member of a class arises by inserting the new
    maximum into a smaller member.
    """
    return _avoiders(n, frozenset(as_permutation(b) for b in basis))


# -- structure ---------------------------------------------------------------

def ltr_maxima(p: Sequence[int]) -> list[tuple[int, int]]:
    """Left-to-right maxima as ``(position, value)`` pairs, positions 1-based."""
    out = []
    best = -math.inf
    for i, v in enumerate(p, 1):
        if v > best:
            out.append((i, v))
            best = v
    return out


def shuffles(a: Sequence[int], b: Sequence[int]) -> list[tuple[int, ...]]:
    """All interleavings of ``a`` and ``b`` keeping each one's order."""
    a, b = tuple(a), tuple(b)
    if set(a) & set(b):
        raise InvalidInputError(f"sequences share values: {a}, {b}")
    n = len(a) + len(b)
    out = []
    for slots in itertools.combinations(range(n), len(a)):
        slot_set = set(slots)
        ia, ib = iter(a), iter(b)
        out.append(tuple(next(ia) if i in slot_set else next(ib) for i in range(n)))
    return out


def is_simple(p: Sequence[int]) -> bool:
    """No interval of size strictly between 1 and ``len(p)``.

    Sizes 0, 1 and 2 count as simple.
    """
    n = len(p)
    for i in range(n):
        lo = hi = p[i]
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            size = j - i + 1
            if size == n:
                break
            if hi - lo + 1 == size:
                return False
    return True


# -- text form ---------------------------------------------------------------

def format_perm(p: Sequence[int]) -> str:
    if not p:
        return "()"
    if max(p) <= 9:
        return "".join(map(str, p))
    return " ".join(map(str, p))


def parse_perm(text: str) -> Perm:
    """Parse ``"35241"`` or ``"10 2 3 ..."``; ``"()"`` or ``""`` is empty."""
    text = text.strip()
    if text in ("", "()"):
        return ()
    try:
        if " " in text or "," in text:
            values = [int(tok) for tok in text.replace(",", " ").split()]
        else:
            values = [int(ch) for ch in text]
    except ValueError:
        raise InvalidInputError(f"cannot parse permutation: {text!r}") from None
    return as_permutation(values)


def format_barred(bp: BarredPattern) -> str:
    return " ".join(f"{v}b" if i in bp.barred else str(v) for i, v in enumerate(bp.full, 1))


def parse_barred(text: str) -> BarredPattern:
    """Parse ``"3 5b 2 4 1"`` (or compact ``"35b241"``)."""
    text = text.strip()
    tokens = text.split() if " " in text else re.findall(r"\db?", text)
    values, barred = [], set()
    for i, tok in enumerate(tokens, 1):
        if tok.endswith("b"):
            barred.add(i)
            tok = tok[:-1]
        try:
            values.append(int(tok))
        except ValueError:
            raise InvalidInputError(f"cannot parse barred pattern: {text!r}") from None
    return BarredPattern(tuple(values), frozenset(barred))


def parse_pattern(text: str) -> Perm | BarredPattern:
    return parse_barred(text) if "b" in text else parse_perm(text)
