import itertools

import pytest
from hypothesis import strategies as st

from popbypass.perms import reduce

ACCEPTANCE_LINES: list[str] = []


def brute_contains(host, pattern):
    """Reference containment: try every subsequence."""
    k = len(pattern)
    return any(reduce(sub) == tuple(pattern) for sub in itertools.combinations(host, k))


def perms_of(max_size, min_size=0):
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
    )


@pytest.fixture
def record_criterion():
    def record(label, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"{status}  {label}" + (f"  [{detail}]" if detail else ""))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
