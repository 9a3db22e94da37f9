"""Preimages of principal classes under PSB."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .perms import Perm, all_permutations, as_permutation, avoiders, contains, shuffles
from .preimage import all_fibers

DEFAULT_BOUND = 8


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class BasisResult:
    """Either a class with the given basis (``is_class``) or not a class."""

    basis: frozenset[Perm] | None

    @property
    def is_class(self) -> bool:
        return self.basis is not None


NOT_A_CLASS = BasisResult(None)


def preimage_basis(rho: Sequence[int]) -> BasisResult:
    """Basis of ``psb^-1(Av(rho))`` when that set is a class.

    New entries are assembled on raw values, e.g. ``rho = 21`` gives
    ``231`` and ``4213``.
    """
    rho = as_permutation(rho)
    n = len(rho)
    if n == 0:
        return BasisResult(frozenset({()}))
    if rho == (1,):
        return BasisResult(frozenset({(1,)}))
    if rho == (1, 2):
        return BasisResult(frozenset({(1, 2), (2, 1)}))
    if rho[0] == n:
        alpha = rho[1:]
        basis = {(n, n + 1) + alpha}
        basis.update((n + 2, n) + tau for tau in shuffles((n + 1,), alpha) if tau != (n + 1,) + alpha)
        return BasisResult(frozenset(basis))
    if n >= 3 and rho[0] == n - 1 and rho[-1] == n:
        alpha = rho[1:-1]
        basis = {(n - 1, n) + alpha}
        basis.update((n + 1, n - 1) + tau for tau in shuffles((n,), alpha) if tau != (n,) + alpha)
        return BasisResult(frozenset(basis))
    return NOT_A_CLASS


def is_antichain(perms: Sequence[Perm]) -> bool:
    perms = list(perms)
    return not any(a != b and contains(b, a) for a in perms for b in perms)


@lru_cache(maxsize=None)
def _outputs_avoiding(rho: Perm, m: int) -> frozenset[Perm]:
    return frozenset(
        p for sigma, fiber in all_fibers(m).items() if not contains(sigma, rho) for p in fiber
    )


def psb_preimage_of_class(rho: Sequence[int], m: int) -> frozenset[Perm]:
    """``{p in S_m : psb(p) avoids rho}``."""
    return _outputs_avoiding(tuple(rho), m)


@dataclass
class ClassReport:
    rho: Perm
    bound: int
    basis: frozenset[Perm]
    counterexample: Perm | None = None
    checked: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_class_equality(rho: Sequence[int], bound: int = DEFAULT_BOUND) -> ClassReport:
    """Compare ``psb^-1(Av(rho))`` with ``Av(B)`` size by size up to ``bound``."""
    rho = as_permutation(rho)
    result = preimage_basis(rho)
    if not result.is_class:
        raise PreconditionError(f"psb preimage of Av({rho}) is not a class")
    report = ClassReport(rho, bound, result.basis)
    for m in range(bound + 1):
        lhs = psb_preimage_of_class(rho, m)
        rhs = avoiders(m, result.basis)
        report.checked.append(m)
        if lhs != rhs:
            report.counterexample = min(lhs ^ rhs)
            break
    return report


def closure_witness(member: Callable[[Perm], bool], bound: int) -> tuple[Perm, Perm] | None:
    """Find ``(sigma, tau)`` with ``sigma`` in the set, ``tau`` a pattern of
    ``sigma`` outside it.  Searches by size, then lexicographically.

    Only one-point deletions are tried: if a set is not closed, some member
    has a one-point deletion outside it.
    """
    for m in range(1, bound + 1):
        for sigma in all_permutations(m):
            if not member(sigma):
                continue
            for tau in sorted(_deletions(sigma)):
                if not member(tau):
                    return sigma, tau
    return None


def _deletions(sigma: Perm) -> set[Perm]:
    out = set()
    for i, v in enumerate(sigma):
        out.add(tuple(x - (x > v) for x in sigma[:i] + sigma[i + 1:]))
    return out


def preimage_member(rho: Sequence[int]) -> Callable[[Perm], bool]:
    """Membership test for ``psb^-1(Av(rho))``."""
    rho = tuple(rho)

    def member(p: Perm) -> bool:
        return p in psb_preimage_of_class(rho, len(p))

    return member
