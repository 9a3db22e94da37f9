import pytest

from popbypass.classes import (
    NOT_A_CLASS,
    PreconditionError,
    closure_witness,
    is_antichain,
    preimage_basis,
    preimage_member,
    psb_preimage_of_class,
    verify_class_equality,
)
from popbypass.machines import psb
from popbypass.perms import all_permutations, avoids_all, contains


def basis(word):
    return preimage_basis(tuple(int(c) for c in word)).basis


def test_basis_examples():
    assert basis("21") == {(2, 3, 1), (4, 2, 1, 3)}
    assert basis("321") == {(3, 4, 2, 1), (5, 3, 2, 4, 1), (5, 3, 2, 1, 4)}
    assert basis("12") == {(1, 2), (2, 1)}
    assert basis("1") == {(1,)}
    assert preimage_basis(()).basis == {()}
    assert preimage_basis((1, 3, 2)) is NOT_A_CLASS
    assert not preimage_basis((1, 2, 3)).is_class


def test_basis_for_n_alpha_case():
    b = basis("4123")
    assert (4, 5, 1, 2, 3) in b
    assert all(p[:2] == (6, 4) for p in b if len(p) == 6)
    # |(n+1) shuffled with alpha| = n, minus the excluded one.
    assert len(b) == 1 + 3


def test_basis_for_second_case():
    assert basis("213") == {(2, 3, 1), (4, 2, 1, 3)}
    # tau runs over 4 shuffled into 12, except 412 itself.
    assert basis("3124") == {(3, 4, 1, 2), (5, 3, 1, 4, 2), (5, 3, 1, 2, 4)}


def test_preimage_set_matches_direct_filter():
    rho = (3, 2, 1)
    for m in range(7):
        direct = {p for p in all_permutations(m) if not contains(psb(p), rho)}
        assert psb_preimage_of_class(rho, m) == direct


@pytest.mark.parametrize("rho, bound", [((2, 1), 8), ((2, 1, 3), 8), ((4, 1, 2, 3), 7)])
def test_verify_class_equality(rho, bound):
    report = verify_class_equality(rho, bound)
    assert report.passed
    assert report.checked == list(range(bound + 1))


def test_verify_class_equality_needs_a_class():
    with pytest.raises(PreconditionError):
        verify_class_equality((1, 3, 2), 5)


def test_every_size_four_case():
    for k in range(5):
        for rho in all_permutations(k):
            result = preimage_basis(rho)
            if result.is_class:
                assert is_antichain(sorted(result.basis))
                assert verify_class_equality(rho, 8).passed, rho
            else:
                witness = closure_witness(preimage_member(rho), 8)
                assert witness is not None, rho
                sigma, tau = witness
                assert contains(sigma, tau)
                assert not contains(psb(sigma), rho) and contains(psb(tau), rho)


def test_basis_sizes():
    for k in range(2, 6):
        for rho in all_permutations(k):
            result = preimage_basis(rho)
            if result.is_class and rho[0] == k:
                assert len(result.basis) == k
            elif result.is_class and k >= 3:
                assert len(result.basis) == k - 1


def test_closure_witness_examples():
    assert closure_witness(preimage_member((1, 3, 2)), 6) is not None
    assert closure_witness(lambda p: avoids_all(p, [(2, 3, 1), (4, 2, 1, 3)]), 6) is None
    assert closure_witness(lambda p: True, 5) is None


def test_witness_search_is_deterministic():
    a = closure_witness(preimage_member((1, 3, 2)), 6)
    b = closure_witness(preimage_member((1, 3, 2)), 6)
    assert a == b == ((3, 5, 1, 4, 2), (3, 1, 4, 2))
