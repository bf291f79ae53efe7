import logging
from dataclasses import dataclass
from enum import Enum

from partlab import DomainError, RejectedInputError
from partlab.data_types import Variant

logger = logging.getLogger()


@dataclass(frozen=True)
class QSeries:
    """
    Power series in q truncated after q^order, with exact integer
    coefficients. coeffs[n] is the coefficient of q^n.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("A series keeps at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff: int = 1) -> "QSeries":
        coeffs = [0] * (order + 1)
        if power <= order:
            coeffs[power] = coeff
        return cls(tuple(coeffs))

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"Cannot extend a series of order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1])

    def __add__(self, other: "QSeries") -> "QSeries":
        order = min(self.order, other.order)
        return QSeries(tuple(self[i] + other[i] for i in range(order + 1)))

    def __neg__(self) -> "QSeries":
        return QSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return qs_mul(self, other)

    def shift(self, power: int) -> "QSeries":
        """Multiply by q^power, keeping the order."""
        if power <= 0:
            raise ValueError(f"shift expects a positive power, got {power}")
        return QSeries((0,) * min(power, len(self)) + self.coeffs[: max(len(self) - power, 0)])


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    out = [0] * (order + 1)
    for i in range(order + 1):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * b[j]
    return QSeries(tuple(out))


def qs_inverse(a: QSeries) -> QSeries:
    lead = a[0]
    if lead not in (1, -1):
        raise DomainError(f"Only series with constant term +1 or -1 invert, got {lead}")
    out = [0] * (a.order + 1)
    out[0] = lead
    for n in range(1, a.order + 1):
        acc = 0
        for i in range(1, n + 1):
            acc += a[i] * out[n - i]
        # lead is its own inverse
        out[n] = -lead * acc
    return QSeries(tuple(out))


class GeneratingFunction(str, Enum):
    euler_product = "euler_product"
    distinct_product = "distinct_product"
    divisor = "divisor"
    uchimura = "uchimura"
    partition = "partition"
    partition_reciprocal = "partition_reciprocal"
    almost_consecutive = "almost_consecutive"


def _multiply_binomial(coeffs: list[int], power: int, sign: int):
    """In place: coeffs *= (1 + sign * q^power)."""
    for i in range(len(coeffs) - 1, power - 1, -1):
        coeffs[i] += sign * coeffs[i - power]


def _divide_binomial(coeffs: list[int], power: int):
    """In place: coeffs /= (1 - q^power)."""
    for i in range(power, len(coeffs)):
        coeffs[i] += coeffs[i - power]


def _euler_product(order: int) -> QSeries:
    coeffs = [1] + [0] * order
    for j in range(1, order + 1):
        _multiply_binomial(coeffs, j, -1)
    return QSeries(tuple(coeffs))


def _distinct_product(order: int) -> QSeries:
    coeffs = [1] + [0] * order
    for j in range(1, order + 1):
        _multiply_binomial(coeffs, j, +1)
    return QSeries(tuple(coeffs))


def _partition(order: int) -> QSeries:
    coeffs = [1] + [0] * order
    for j in range(1, order + 1):
        _divide_binomial(coeffs, j)
    return QSeries(tuple(coeffs))


def _divisor(order: int) -> QSeries:
    # sum over n >= 1 of q^n / (1 - q^n)
    coeffs = [0] * (order + 1)
    for n in range(1, order + 1):
        for multiple in range(n, order + 1, n):
            coeffs[multiple] += 1
    return QSeries(tuple(coeffs))


def _uchimura(order: int) -> QSeries:
    """
    sum over n >= 1 of n q^n prod_{j > n} (1 - q^j). Factors with j > order
    cannot reach coefficients <= order, so the product stops at order.
    """
    total = [0] * (order + 1)
    tail = [1] + [0] * order
    for n in range(order, 0, -1):
        # tail == prod_{j=n+1..order} (1 - q^j) here
        for i in range(n, order + 1):
            total[i] += n * tail[i - n]
        _multiply_binomial(tail, n, -1)
    return QSeries(tuple(total))


def _almost_consecutive(order: int) -> QSeries:
    total = [0] * (order + 1)
    run = 1
    while (run + 1) * (run + 2) // 2 <= order:
        term = [0] * (order + 1)
        term[(run + 1) * (run + 2) // 2] = 1
        _divide_binomial(term, run)
        _divide_binomial(term, run + 1)
        for i in range(order + 1):
            total[i] += term[i]
        run += 1
    return QSeries(tuple(total))


def gf_build(
    name: GeneratingFunction | str, order: int, *, variant: Variant = Variant.derived
) -> QSeries:
    """
    Truncated expansion of a named generating function. ``variant`` only
    matters for uchimura: derived is the positive form matching the divisor
    series, paper carries the leading minus sign as printed.
    """
    try:
        name = GeneratingFunction(name)
    except ValueError:
        raise RejectedInputError(
            f"Unknown generating function {name!r}, expected one of "
            f"{[g.value for g in GeneratingFunction]}"
        )
    if order < 0:
        raise RejectedInputError(f"Series order must be >= 0, got {order}")
    variant = Variant(variant)
    if variant == Variant.paper and name != GeneratingFunction.uchimura:
        raise RejectedInputError(f"{name.value} has no printed variant")

    if name == GeneratingFunction.euler_product:
        series = _euler_product(order)
    elif name == GeneratingFunction.distinct_product:
        series = _distinct_product(order)
    elif name == GeneratingFunction.divisor:
        series = _divisor(order)
    elif name == GeneratingFunction.uchimura:
        series = _uchimura(order)
        if variant == Variant.paper:
            series = -series
    elif name == GeneratingFunction.partition:
        series = _partition(order)
    elif name == GeneratingFunction.partition_reciprocal:
        series = qs_inverse(_partition(order))
    elif name == GeneratingFunction.almost_consecutive:
        series = _almost_consecutive(order)
    else:
        raise NotImplementedError(f"{name} series is not implemented")
    logger.info("Built %s series to order %d", name.value, order)
    return series
