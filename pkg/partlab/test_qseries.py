import numpy as np
import pytest

from partlab import DomainError, RejectedInputError
from partlab.data_types import Variant
from partlab.divisor_arith import distinct_count_table, divisor_count, pentagonal_h
from partlab.partition_core import enumerate_distinct, iter_distinct_parts
from partlab.qseries import GeneratingFunction, QSeries, gf_build, qs_inverse, qs_mul


def test_series_arithmetic():
    a = QSeries((1, 2, 3))
    b = QSeries((1, -1, 0, 5))
    assert (a + b).coeffs == (2, 1, 3)
    assert (a - b).coeffs == (0, 3, 3)
    assert (-a).coeffs == (-1, -2, -3)
    assert qs_mul(a, b).coeffs == (1, 1, 1)
    assert (a * b) == qs_mul(a, b)
    assert a.shift(1).coeffs == (0, 1, 2)
    assert a.shift(5).coeffs == (0, 0, 0)
    assert a.truncate(1).coeffs == (1, 2)
    assert QSeries.monomial(2, 4).coeffs == (0, 0, 1, 0, 0)
    assert QSeries.one(2) == QSeries((1, 0, 0))
    with pytest.raises(ValueError):
        a.truncate(5)
    with pytest.raises(ValueError):
        QSeries(())


def test_inverse():
    geometric = QSeries((1, -1, 0, 0, 0))
    assert qs_inverse(geometric).coeffs == (1, 1, 1, 1, 1)
    assert qs_inverse(QSeries((-1, 0, 0))).coeffs == (-1, 0, 0)
    with pytest.raises(DomainError):
        qs_inverse(QSeries((2, 1)))
    with pytest.raises(DomainError):
        qs_inverse(QSeries((0, 1)))


def test_euler_product_is_pentagonal():
    series = gf_build(GeneratingFunction.euler_product, 200)
    assert series.coeffs[:13] == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1)
    assert all(series[n] == pentagonal_h(n) for n in range(201))


def test_products_and_reciprocal():
    order = 60
    partition = gf_build("partition", order)
    assert partition.coeffs[:11] == (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
    euler = gf_build("euler_product", order)
    assert partition * euler == QSeries.one(order)
    assert gf_build("partition_reciprocal", order) == euler
    distinct = gf_build("distinct_product", order)
    assert distinct.coeffs[:11] == (1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10)


def test_divisor_and_uchimura_series():
    order = 120
    divisor = gf_build("divisor", order)
    assert divisor.coeffs[:7] == (0, 1, 2, 2, 3, 2, 4)
    assert all(divisor[n] == divisor_count(n) for n in range(1, order + 1))
    assert gf_build("uchimura", order) == divisor
    assert gf_build("uchimura", order, variant=Variant.paper) == -divisor


def test_almost_consecutive_series():
    series = gf_build("almost_consecutive", 8)
    # p_a(n) - 1, the singleton has no (smallest, gap, run) form
    assert series.coeffs == (0, 0, 0, 1, 1, 2, 3, 3, 4)


def test_gf_build_rejects():
    with pytest.raises(RejectedInputError):
        gf_build("theta", 5)
    with pytest.raises(RejectedInputError):
        gf_build("divisor", -1)
    with pytest.raises(RejectedInputError):
        gf_build("euler_product", 5, variant=Variant.paper)


def test_product_is_commutative_and_associative():
    rng = np.random.default_rng(0)

    def random_series() -> QSeries:
        return QSeries(tuple(int(c) for c in rng.integers(-9, 10, size=65)))

    for _ in range(20):
        a, b, c = random_series(), random_series(), random_series()
        assert qs_mul(a, b) == qs_mul(b, a)
        assert qs_mul(qs_mul(a, b), c) == qs_mul(a, qs_mul(b, c))
        assert qs_mul(a, b).order == 64


def test_distinct_product_counts_distinct_partitions():
    distinct = gf_build("distinct_product", 2000)
    assert distinct_count_table(2000).values == list(distinct.coeffs)
    for n in range(1, 71):
        assert len(enumerate_distinct(n)) == distinct[n], n
    assert sum(1 for _ in iter_distinct_parts(100)) == distinct[100] == 444793
