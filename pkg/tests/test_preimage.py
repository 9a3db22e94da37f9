import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from popbypass.machines import psb
from popbypass.perms import InvalidInputError, all_permutations
from popbypass.preimage import (
    ResourceLimitError,
    all_fibers,
    c0_formula,
    c1_formula,
    c2_formula,
    census,
    fiber_bruteforce,
    fiber_sizes,
    in_C1,
    in_C2,
    preimages,
)

from conftest import perms_of


def test_preimage_examples():
    assert preimages((1, 2, 3)) == {(1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2), (3, 2, 1)}
    assert preimages((2, 1, 3)) == {(2, 3, 1)}
    assert preimages((1, 3, 2)) == set()
    assert preimages(()) == {()}
    with pytest.raises(InvalidInputError):
        preimages((1, 1))


def test_preimages_of_raw_sequences():
    # Raw values: PSB on (5, 3) bypasses the 3.
    for seq in [(3, 5), (2, 4, 7), (1, 3, 4, 8), (6, 2, 9)]:
        expected = {q for q in _orderings(seq) if psb(q) == seq}
        assert preimages(seq) == expected


def _orderings(seq):
    import itertools
    return set(itertools.permutations(seq))


def test_fiber_bruteforce_examples():
    assert len(fiber_bruteforce((1, 2, 3))) == 5
    assert fiber_bruteforce((1, 2)) == {(1, 2), (2, 1)}
    assert fiber_bruteforce((2, 1)) == set()


def test_recursive_preimages_match_brute_force_fibers():
    for n in range(8):
        fibers = all_fibers(n)
        for sigma in all_permutations(n):
            assert preimages(sigma) == set(fibers.get(sigma, ())), sigma


@settings(max_examples=40, deadline=None)
@given(perms_of(7))
def test_preimages_are_sound(sigma):
    for p in preimages(sigma):
        assert psb(p) == sigma


def test_census_examples():
    assert census(3).counts == {0: 4, 1: 1, 5: 1}
    assert census(2).counts == {0: 1, 2: 1}
    assert census(1).counts == {1: 1}
    with pytest.raises(ResourceLimitError):
        census(10)


@pytest.mark.parametrize("n", range(1, 9))
def test_census_partitions_s_n(n):
    c = census(n)
    c.check()
    assert sum(c.counts.values()) == math.factorial(n)
    assert sum(k * v for k, v in c.counts.items()) == math.factorial(n)


def test_c0_formula():
    assert c0_formula(3) == 4
    assert c0_formula(1) == 0
    assert c0_formula(4) == 18
    for n in range(1, 9):
        assert census(n).counts.get(0, 0) == c0_formula(n)


def test_c1_formula():
    assert [c1_formula(n) for n in range(1, 8)] == [1, 0, 1, 2, 8, 36, 198]
    for n in range(1, 9):
        assert census(n).counts.get(1, 0) == c1_formula(n)


def _c2_by_hand(n):
    # Same double sum, written term by term with Fractions.
    total = Fraction(0)
    for k in range(3, n + 1):
        for j in range(1, n - k + 1):
            top = n - j - k
            binom = math.comb(top, k - 3) if k - 3 <= top else 0
            total += Fraction(n - k - j + 1, j) * math.factorial(n - k) * binom
    return total


def test_c2_formula_small_values():
    assert c2_formula(4) == 1
    assert c2_formula(5) == 5
    for n in range(4, 12):
        assert c2_formula(n) == _c2_by_hand(n)


def test_c2_formula_counts_its_set_description():
    # The double sum enumerates exactly the permutations accepted by in_C2.
    for n in range(4, 9):
        assert c2_formula(n) == sum(map(in_C2, all_permutations(n)))


def test_membership_examples():
    assert in_C1((2, 1, 3))
    assert not in_C1((1, 2, 3, 4))
    assert in_C2((1, 3, 2, 4))


def test_fiber_one_is_in_C1():
    for n in range(3, 9):
        sizes = fiber_sizes(n)
        for sigma in all_permutations(n):
            assert (sizes.get(sigma, 0) == 1) == in_C1(sigma), sigma


def test_fiber_two_is_in_C2():
    for n in range(4, 9):
        sizes = fiber_sizes(n)
        for sigma in all_permutations(n):
            assert (sizes.get(sigma, 0) == 2) == in_C2(sigma), sigma


def test_c2_formula_matches_census():
    for n in range(4, 10):
        assert census(n).counts.get(2, 0) == c2_formula(n), n


def test_two_preimage_count_with_adjacent_first_maximum():
    # Observed: permutations whose first maximum is consecutive with and
    # adjacent to the second also have two preimages; there are c1(n-1).
    for n in range(4, 10):
        assert census(n).counts.get(2, 0) == c2_formula(n) + c1_formula(n - 1)
