"""Counting tables, rational series expansion and the simple-permutation
conjecture for the parallel machine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Iterable, Sequence

from . import sweep
from .machines import MachineKind, parallel_sortable, sorts
from .perms import BarredPattern, Perm, avoiders, contains_barred, is_simple
from .preimage import ResourceLimitError

DEFAULT_TABLE_BOUND = 10
DEFAULT_CONJECTURE_BOUND = 9

# Fixtures for regression against published terms.
ODD_FIBONACCI = [1, 1, 2, 5, 13, 34, 89, 233, 610, 1597, 4181, 10946, 28657]
PARALLEL_COUNTS = [1, 1, 2, 6, 23, 97, 418, 1800, 7717, 32969, 140558]


@dataclass
class SequenceTable:
    name: str
    offset: int
    terms: dict[int, int] = field(default_factory=dict)

    def values(self) -> list[int]:
        return [self.terms[n] for n in sorted(self.terms)]

    def tsv(self) -> str:
        return "".join(f"{n}\t{c}\n" for n, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class RationalSeries:
    """Quotient of integer polynomials, coefficients listed from ``x^0`` up."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise ValueError("denominator needs a nonzero constant term")


def poly_mul(*polys: Sequence[int]) -> tuple[int, ...]:
    out = [1]
    for p in polys:
        prod = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                prod[i + j] += a * b
        out = prod
    return tuple(out)


PARALLEL_SERIES = RationalSeries(
    numerator=poly_mul((1, -1), (1, -2), (1, -4)),
    denominator=(1, -8, 20, -18, 3),
)


def gf_expand(series: RationalSeries, n: int) -> list[int]:
    """Coefficients of ``x^0 .. x^n``.

    Python integers never wrap, so the recurrence is exact at any length.
    A non-unit constant term is handled with rationals; a non-integral
    coefficient raises.
    """
    num, den = series.numerator, series.denominator
    lead = den[0]
    coeffs: list[int] = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * coeffs[k - i]
        if acc % lead:
            value = Fraction(acc, lead)
            raise ArithmeticError(f"coefficient of x^{k} is not an integer: {value}")
        coeffs.append(acc // lead)
    return coeffs


def fib(k: int) -> int:
    """Fibonacci numbers with ``F_1 = F_2 = 1`` (and ``F_0 = 0``)."""
    if k < 0:
        raise ValueError("index must be non-negative")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


# -- sortable sets -----------------------------------------------------------

def _normalize(machine) -> tuple[MachineKind, ...]:
    if isinstance(machine, (str, MachineKind)):
        machine = [machine]
    return tuple(MachineKind.parse(m) if isinstance(m, str) else m for m in machine)


@lru_cache(maxsize=None)
def _sortable(kinds: tuple[MachineKind, ...], n: int, jobs: int) -> frozenset[Perm]:
    if kinds == (MachineKind.PARALLEL_PSB,):
        pred = parallel_sortable
    else:
        pred = partial(sorts, kinds)
    return frozenset(sweep.collect(pred, n, jobs))


def sortable_set(machine, n: int, jobs: int = 1) -> frozenset[Perm]:
    """Permutations of size ``n`` that the machine (or composition, listed
    in run order) sorts, found by an exhaustive sweep.
    """
    return _sortable(_normalize(machine), n, max(1, jobs))


def avoidance_set(patterns: Iterable[Sequence[int] | BarredPattern], n: int) -> frozenset[Perm]:
    """``Av_n`` of a pattern set that may include single-bar patterns."""
    patterns = list(patterns)
    classical = [tuple(p) for p in patterns if not isinstance(p, BarredPattern)]
    barred = [p for p in patterns if isinstance(p, BarredPattern)]
    base = avoiders(n, classical)
    if not barred:
        return base
    return frozenset(p for p in base if not any(contains_barred(p, b) for b in barred))


def _is_pattern_set(obj) -> bool:
    if isinstance(obj, (str, MachineKind)):
        return False
    items = list(obj)
    return bool(items) and all(isinstance(x, (tuple, BarredPattern)) for x in items)


def sortable_table(machine_or_patterns, n_max: int, *, start: int = 1,
                   bound: int = DEFAULT_TABLE_BOUND, jobs: int = 1) -> SequenceTable:
    if n_max > bound:
        raise ResourceLimitError(f"table to n={n_max} exceeds the bound {bound}")
    if _is_pattern_set(machine_or_patterns):
        patterns = list(machine_or_patterns)
        name = "Av(" + ",".join(str(p) if isinstance(p, BarredPattern) else "".join(map(str, p)) for p in patterns) + ")"
        terms = {n: len(avoidance_set(patterns, n)) for n in range(start, n_max + 1)}
    else:
        kinds = _normalize(machine_or_patterns)
        name = "+".join(k.value for k in kinds)
        terms = {n: len(sortable_set(kinds, n, jobs)) for n in range(start, n_max + 1)}
    return SequenceTable(name, start, terms)


# -- conjecture --------------------------------------------------------------

def conjectured_simple_count(n: int) -> int:
    if n in (0, 1):
        return 1
    if n == 2:
        return 2
    return fib(2 * n - 5) - (1 if n % 2 else 0)


@dataclass
class ConjectureRow:
    n: int
    observed: int
    conjectured: int

    @property
    def match(self) -> bool:
        return self.observed == self.conjectured


def simple_sortable_count(n: int, jobs: int = 1) -> int:
    return sum(1 for p in sortable_set(MachineKind.PARALLEL_PSB, n, jobs) if is_simple(p))


def conjecture_report(n_max: int, bound: int = DEFAULT_CONJECTURE_BOUND, jobs: int = 1) -> list[ConjectureRow]:
    """Observed vs conjectured counts of simple permutations sortable by
    two parallel pop stacks with bypass.  Report only; mismatches are data.
    """
    if n_max > bound:
        raise ResourceLimitError(f"conjecture report to n={n_max} exceeds the bound {bound}")
    return [ConjectureRow(n, simple_sortable_count(n, jobs), conjectured_simple_count(n))
            for n in range(n_max + 1)]
