import pytest

from popbypass.analysis import (
    PARALLEL_COUNTS,
    PARALLEL_SERIES,
    RationalSeries,
    avoidance_set,
    conjecture_report,
    conjectured_simple_count,
    fib,
    gf_expand,
    poly_mul,
    sortable_set,
    sortable_table,
)
from popbypass.machines import MachineKind, psb
from popbypass.perms import BarredPattern, all_permutations, avoids_all, inverse
from popbypass.preimage import ResourceLimitError
from popbypass.verification import (
    REGISTRY,
    UnknownPropositionError,
    default_ids,
    in_C2_extended,
    verify_proposition,
)


def test_numerator_expands():
    assert PARALLEL_SERIES.numerator == (1, -7, 14, -8)


def test_gf_expand_small_terms():
    coeffs = gf_expand(PARALLEL_SERIES, 10)
    assert coeffs[0] == 1
    # c4 = 8*c3 - 20*c2 + 18*c1 - 3*c0 with c0..c3 = 1, 1, 2, 6
    assert coeffs[4] == 8 * 6 - 20 * 2 + 18 * 1 - 3 * 1 == 23
    assert coeffs[10] == 140558
    assert coeffs[1:] == PARALLEL_COUNTS[1:]


def test_gf_expand_satisfies_denominator_recurrence():
    c = gf_expand(PARALLEL_SERIES, 40)
    den = PARALLEL_SERIES.denominator
    for k in range(len(PARALLEL_SERIES.numerator), 41):
        assert sum(den[i] * c[k - i] for i in range(len(den))) == 0


def test_gf_expand_generic_series():
    # 1 / (1 - x - x^2) gives Fibonacci numbers.
    fibo = RationalSeries((1,), (1, -1, -1))
    assert gf_expand(fibo, 10) == [fib(k + 1) for k in range(11)]
    # 1 / (2 - x): constant term 2, coefficients 1/2, 1/4, ... are not integers.
    with pytest.raises(ArithmeticError):
        gf_expand(RationalSeries((1,), (2, -1)), 3)
    with pytest.raises(ValueError):
        RationalSeries((1,), (0, 1))
    # Large coefficients stay exact.
    big = gf_expand(RationalSeries((1,), (1, -10)), 30)
    assert big[30] == 10 ** 30


def test_poly_mul():
    assert poly_mul((1, -1), (1, 1)) == (1, 0, -1)


def test_fib():
    assert [fib(k) for k in (1, 2, 3, 5, 7)] == [1, 1, 2, 5, 13]
    for k in range(3, 41):
        assert fib(k) == fib(k - 1) + fib(k - 2)


def test_sortable_table_examples():
    assert sortable_table("psb", 6).values() == [1, 2, 5, 13, 34, 89]
    assert sortable_table("parallel_psb", 6).values() == [1, 2, 6, 23, 97, 418]
    for kind in MachineKind:
        assert sortable_table(kind, 1).values() == [1]
    with pytest.raises(ResourceLimitError):
        sortable_table("psb", 11)


def test_sortable_table_for_patterns():
    table = sortable_table([(2, 3, 1), (4, 2, 1, 3)], 6)
    assert table.values() == [1, 2, 5, 13, 34, 89]
    assert table.tsv().splitlines()[0] == "1\t1"


def test_avoidance_set_with_barred_pattern():
    bp = BarredPattern((3, 5, 2, 4, 1), frozenset({2}))
    for n in range(7):
        expected = {p for p in all_permutations(n) if avoids_all(p, [(2, 3, 4, 1), bp])}
        assert avoidance_set([(2, 3, 4, 1), bp], n) == expected


def test_parallel_counts_and_inverse_class_agree():
    for n in range(1, 8):
        direct = sortable_set("parallel_psb", n)
        assert len({inverse(p) for p in direct}) == len(direct) == PARALLEL_COUNTS[n]


def test_sortable_table_psb_matches_direct_count():
    for n in range(7):
        assert len(sortable_set("psb", n)) == sum(1 for p in all_permutations(n) if psb(p) == tuple(range(1, n + 1)))


def test_conjectured_values():
    assert [conjectured_simple_count(n) for n in range(7)] == [1, 1, 2, 0, 2, 4, 13]


def test_conjecture_report_small():
    rows = conjecture_report(4)
    assert [(r.n, r.observed, r.conjectured) for r in rows][2:] == [(2, 2, 2), (3, 0, 0), (4, 2, 2)]
    assert all(r.match for r in rows)
    with pytest.raises(ResourceLimitError):
        conjecture_report(10)


def test_unknown_proposition():
    with pytest.raises(UnknownPropositionError):
        verify_proposition("no-such-thing", 3)


@pytest.mark.parametrize("pid", [pid for pid in REGISTRY])
def test_every_check_runs_at_small_bound(pid):
    report = verify_proposition(pid, 5)
    assert report.id == pid and report.bound == 5
    assert report.line().split("\t")[2] in ("PASS", "FAIL")


def test_default_ids_exclude_diagnostics():
    assert "fiber-2-extended" not in default_ids()
    assert "compose-stack" in default_ids()


def test_failing_report_names_a_counterexample():
    report = verify_proposition("compose-stack", 5)
    assert not report.passed
    assert report.counterexample == "n=5 53241 (sorted but not avoiding)"


def test_extended_two_preimage_membership():
    assert in_C2_extended((2, 3, 1, 4))
    assert in_C2_extended((1, 3, 2, 4))
    assert not in_C2_extended((1, 2, 3, 4))
