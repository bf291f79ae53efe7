import math

import pytest

from partlab import RejectedInputError, ResourceBudgetError
from partlab.bijection import lone_tables
from partlab.data_types import Variant
from partlab.divisor_arith import distinct_count_table
from partlab.identities import (
    almost_linear_ratio,
    asymptotic_ratio,
    check_consecutive_counts,
    check_distinct_counts,
    check_euler_recurrence,
    check_h_bijection,
    check_main_identity,
    check_pa_closed_form,
    check_pentagonal,
    check_pentagonal_gf,
    check_preimage_lemmas,
    check_reciprocal,
    check_s1_sum,
    check_s2_transfer,
    check_sigma_multiplicative,
    check_sign_sum,
    check_signed_smallest,
    check_smallest_consecutive,
    check_triplets,
    check_uchimura,
    check_uchimura_gf,
    count_triplets,
    count_triplets_shifted,
    distinct_asymptotic_ratio,
    pa_closed_form,
)
from partlab.partition_core import PartitionClass, weighted_sum
from partlab.weights import BUILTIN_WEIGHTS, ONE, SIGN, sample_table_weights


def test_classical_identities():
    for n in range(1, 60):
        assert check_pentagonal(n).passed, n
        assert check_uchimura(n).passed, n
        assert check_pentagonal_gf(n).passed, n
        assert check_euler_recurrence(n).passed, n
        assert check_reciprocal(n).passed, n
    assert check_reciprocal(0).passed
    assert check_pentagonal_gf(0).passed
    with pytest.raises(RejectedInputError):
        check_pentagonal(0)
    with pytest.raises(ResourceBudgetError):
        check_pentagonal(50, budget=40)


def test_uchimura_gf_sign():
    record = check_uchimura_gf(6)
    assert record.lhs == 4
    assert record.rhs == {"paper": -4, "derived": 4}
    assert record.passed
    assert not check_uchimura_gf(6, canonical=Variant.paper).passed


def test_consecutive_families():
    # 1000 has odd part 125, so 4 consecutive partitions
    record = check_consecutive_counts(1000)
    assert record.lhs == 4
    assert record.passed
    for n in range(1, 300):
        assert check_consecutive_counts(n).passed, n
        assert check_smallest_consecutive(n).passed, n
        assert check_sigma_multiplicative(n).passed, n


def test_distinct_counts():
    for n in range(1, 40):
        assert check_distinct_counts(n).passed, n


def test_pa_closed_form_at_seven():
    record = check_pa_closed_form(7)
    assert record.lhs == 4
    assert record.rhs == {"paper": 4, "derived": 4}
    assert record.passed


def test_pa_closed_form_breaks_at_fourteen():
    # (1, 2, 5, 6) is counted twice among the g preimages
    record = check_pa_closed_form(14)
    assert record.lhs == 10
    assert record.rhs == {"paper": 11, "derived": 10}
    assert record.passed
    assert record.matching_variants() == ["derived"]
    assert not check_pa_closed_form(14, canonical=Variant.paper).passed
    assert pa_closed_form(14, distinct_count_table(15)) == 11


def test_lone_corrected_counts():
    lone = lone_tables(80)
    pd_table = distinct_count_table(81)
    for n in range(3, 80):
        assert check_pa_closed_form(n, pd_table, lone).passed, n
        assert check_sign_sum(n, lone).passed, n
        assert check_signed_smallest(n, lone).passed, n
    for n in range(3, 14):
        record = check_pa_closed_form(n, pd_table, lone)
        assert record.rhs["paper"] == record.rhs["derived"], n


def test_sign_sum():
    record = check_sign_sum(7)
    assert (record.lhs, record.rhs["paper"]) == (2, 2)
    record = check_sign_sum(14)
    assert record.lhs == 4
    assert record.rhs == {"paper": 5, "derived": 4}


def test_sign_sum_grows_slower_than_half_n():
    # lengths 2, 3, 4, ... contribute n/2 - n/6 + n/12 - ..., i.e. (2 ln 2 - 1) n
    n = 2000
    lhs = weighted_sum(n, PartitionClass.almost, SIGN)
    assert abs(lhs / n - (2 * math.log(2) - 1)) < 0.05
    assert abs(lhs / (n / 2) - 1) > 0.1


def test_signed_smallest_variants():
    record = check_signed_smallest(7)
    assert record.lhs == -1
    assert record.rhs == {"paper": 0, "derived": -1}
    assert record.passed
    assert not check_signed_smallest(7, canonical=Variant.paper).passed
    record = check_signed_smallest(14)
    assert record.lhs == 5
    assert record.rhs["derived"] == 5


def test_main_identity():
    for weight in BUILTIN_WEIGHTS:
        for n in range(3, 30):
            assert check_main_identity(n, weight).passed, (weight, n)
    for weight in sample_table_weights(3, seed=0, max_weight=40):
        for n in range(3, 26):
            assert check_main_identity(n, weight).passed, (weight, n)
    record = check_main_identity(14, ONE)
    assert record.theorem == "thm6:one"
    assert record.rhs == {"paper": 11, "derived": 10}
    with pytest.raises(ResourceBudgetError):
        check_main_identity(40, ONE, budget=40)


def test_derivation_steps():
    for weight in BUILTIN_WEIGHTS:
        for n in range(3, 24):
            assert check_s2_transfer(n, weight).passed, (weight, n)
            assert check_s1_sum(n, weight).passed, (weight, n)
    record = check_s1_sum(14, ONE)
    assert record.lhs == 4
    assert record.rhs == {"paper": 5, "derived": 4}


def test_preimage_lemmas():
    for n in range(1, 22):
        record = check_preimage_lemmas(n)
        assert record.passed, record
    record = check_preimage_lemmas(14)
    assert record.lhs == 23
    assert record.rhs == {"paper": 24, "derived": 23}
    assert record.auxiliary["lone"] == (1, 1)
    # the budget bounds the enumerated weight n + 1
    assert check_preimage_lemmas(60, budget=61).passed
    with pytest.raises(ResourceBudgetError):
        check_preimage_lemmas(61, budget=61)


def test_h_bijection():
    for n in range(3, 30):
        assert check_h_bijection(n).passed, n


def test_triplets():
    assert count_triplets(7).triplets == 3
    assert count_triplets(7).restricted == 3
    assert count_triplets_shifted(7) == 3
    record = check_triplets(7)
    assert record.rhs == {"paper": 4, "derived": 3}
    assert record.passed
    for n in range(1, 80):
        assert check_triplets(n).passed, n
        assert not check_triplets(n, canonical=Variant.paper).passed, n


def test_asymptotics():
    pd_table = distinct_count_table(4001)
    ratios = [asymptotic_ratio(n, pd_table) for n in (250, 1000, 4000)]
    assert all(r > 0 and math.isfinite(r) for r in ratios)
    assert 0.6 <= ratios[-1] <= 1.4
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)
    assert 0.9 < distinct_asymptotic_ratio(4000, pd_table) < 1.1
    with pytest.raises(RejectedInputError):
        asymptotic_ratio(2)
    with pytest.raises(ResourceBudgetError):
        asymptotic_ratio(100, budget=100)


def test_almost_consecutive_count_is_linear():
    assert 0.9 < almost_linear_ratio(4000) <= 1.05
    assert almost_linear_ratio(30) == pytest.approx(23 / 30)
