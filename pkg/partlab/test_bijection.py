import pytest

from partlab import DomainError, RejectedInputError, ResourceBudgetError
from partlab.bijection import (
    Region,
    apply_g,
    apply_h,
    classify_region,
    is_lone,
    lone_histogram,
    lone_sum,
    lone_tables,
    preimage_count,
    preimage_map,
    preimages_g,
    printed_preimage_count,
)
from partlab.partition_core import Partition, enumerate_distinct, iter_distinct_parts
from partlab.weights import ONE, SIGN, SIGNED_SMALLEST


def test_apply_g():
    assert apply_g(Partition.of(1, 2, 4)) == Partition.of(1, 2, 3)
    assert apply_g(Partition.of(1, 4, 5)) == Partition.of(1, 3, 5)
    assert apply_g(Partition.of(2, 6, 7, 8)) == Partition.of(2, 5, 7, 8)
    with pytest.raises(DomainError):
        apply_g(Partition.of(3, 4))
    with pytest.raises(DomainError):
        apply_g(Partition.of(7))


def test_preimages():
    assert preimages_g(Partition.of(1, 3, 5)) == [
        Partition.of(1, 3, 6),
        Partition.of(1, 4, 5),
    ]
    assert preimages_g(Partition.of(1, 5)) == [Partition.of(1, 6)]
    assert preimages_g(Partition.of(6)) == []
    assert preimage_count(Partition.of(1, 3, 5)) == 2
    assert preimage_count(Partition.of(1, 2, 3)) == 1
    assert preimage_count(Partition.of(1, 6)) == 1
    assert preimage_count(Partition.of(6)) == 0


def test_lone_partition_has_one_preimage():
    # smallest S3 partition that the region rule gets wrong
    lone = Partition.of(1, 2, 5, 6)
    assert classify_region(lone) == Region.S3
    assert preimages_g(lone) == [Partition.of(1, 2, 5, 7)]
    assert preimage_count(lone) == 1
    assert printed_preimage_count(lone) == 2
    assert is_lone(lone.parts)
    # last wide gap is 2, or it is the first gap
    assert not is_lone((1, 2, 4, 5))
    assert not is_lone((2, 6, 7, 8))
    assert not is_lone((1, 3, 4, 6))
    assert preimage_count(Partition.of(1, 2, 4, 5)) == 2


def test_preimage_counts_match_brute_force():
    for n in range(1, 25):
        grouped = preimage_map(n)
        for partition in enumerate_distinct(n):
            brute = len(grouped.get(partition.parts, []))
            assert brute == preimage_count(partition), partition
            if classify_region(partition) == Region.S3:
                assert brute == (1 if is_lone(partition.parts) else 2), partition


def test_region_rule_holds_below_fourteen():
    for n in range(1, 14):
        for partition in enumerate_distinct(n):
            assert printed_preimage_count(partition) == preimage_count(partition)
    assert any(
        printed_preimage_count(p) != preimage_count(p) for p in enumerate_distinct(14)
    )


def test_preimage_budget():
    with pytest.raises(ResourceBudgetError):
        preimage_map(30, budget=30)


def test_regions_and_h():
    assert classify_region(Partition.of(7)) == Region.SINGLETON
    assert classify_region(Partition.of(1, 6)) == Region.S2
    assert classify_region(Partition.of(3, 4)) == Region.S1
    assert classify_region(Partition.of(2, 4)) == Region.S1
    assert classify_region(Partition.of(1, 2, 4)) == Region.S3

    image = apply_h(Partition.of(1, 6))
    assert image == Partition.of(1, 4)
    assert (image.length, image.smallest) == (2, 1)
    with pytest.raises(DomainError):
        apply_h(Partition.of(3, 4))
    with pytest.raises(DomainError):
        apply_h(Partition.of(7))


def test_lone_histogram():
    assert lone_histogram(13) == ()
    assert lone_histogram(14) == ((4, 1, 1),)
    assert lone_sum(14, ONE) == 1
    assert lone_sum(14, SIGNED_SMALLEST) == 1


def test_lone_tables_match_enumeration():
    order = 45
    tables = lone_tables(order)
    assert tables.count.order == order
    for n in range(1, order + 1):
        assert tables.count[n] == lone_sum(n, ONE), n
        assert tables.sign[n] == lone_sum(n, SIGN), n
        assert tables.signed_smallest[n] == lone_sum(n, SIGNED_SMALLEST), n
    assert tables.count[14] == 1
    assert tables.count[0] == 0
    brute = sum(1 for parts in iter_distinct_parts(30) if is_lone(parts))
    assert tables.count[30] == brute
    with pytest.raises(RejectedInputError):
        lone_tables(-1)
