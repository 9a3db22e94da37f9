import itertools

import pytest

from popbypass.analysis import ODD_FIBONACCI
from popbypass.paths import count_restricted, gen_restricted, is_restricted
from popbypass.perms import InvalidInputError


def brute_paths(n):
    out = []
    for length in range(n, 2 * n + 1):
        for steps in itertools.product("UHD", repeat=length):
            s = "".join(steps)
            if s.count("U") + s.count("H") != n:
                continue
            try:
                if is_restricted(s):
                    out.append(s)
            except InvalidInputError:
                pass
    return out


def test_is_restricted_examples():
    assert is_restricted("UHD")
    assert not is_restricted("UD")
    assert is_restricted("UUHDD")
    assert not is_restricted("UUHDHD")  # first descent stops at level 1
    with pytest.raises(InvalidInputError):
        is_restricted("D")
    with pytest.raises(InvalidInputError):
        is_restricted("UH")
    with pytest.raises(InvalidInputError):
        is_restricted("UX")


def test_gen_restricted_examples():
    assert gen_restricted(0) == [""]
    assert gen_restricted(1) == ["H"]
    assert set(gen_restricted(2)) == {"HH", "UHD"}
    assert set(gen_restricted(3)) == {"HHH", "UHDH", "HUHD", "UHHD", "UUHDD"}


def _key(path):
    return ["UHD".index(c) for c in path]


@pytest.mark.parametrize("n", range(0, 8))
def test_generator_matches_brute_force(n):
    paths = gen_restricted(n)
    assert paths == sorted(brute_paths(n), key=_key)
    assert all(is_restricted(p) for p in paths)


def test_count_examples():
    assert count_restricted(0) == 1
    assert count_restricted(4) == 13
    assert count_restricted(5) == 34


def test_dp_matches_generator():
    for n in range(15):
        assert count_restricted(n) == len(gen_restricted(n))


def test_odd_fibonacci_recurrence():
    for n in range(2, 21):
        assert count_restricted(n) == 3 * count_restricted(n - 1) - count_restricted(n - 2)
    assert [count_restricted(n) for n in range(len(ODD_FIBONACCI))] == ODD_FIBONACCI
