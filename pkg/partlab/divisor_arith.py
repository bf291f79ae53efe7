import logging
import math

from pydantic import BaseModel, ConfigDict, model_validator

from partlab import RejectedInputError

logger = logging.getLogger()


class DivisorStats(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    n: int
    d: int
    sigma: int
    odd_part: int
    # odd divisors of n (= divisors of odd_part) below / above sqrt(2n)
    count_below: int
    count_above: int

    @model_validator(mode="after")
    def check_split(self):
        if self.odd_part % 2 != 1 or self.n % self.odd_part != 0:
            raise ValueError(f"odd_part={self.odd_part} is not the odd part of {self.n}")
        two_power = self.n // self.odd_part
        if two_power & (two_power - 1) != 0:
            raise ValueError(f"n / odd_part = {two_power} is not a power of two")
        return self

    @property
    def odd_divisor_count(self) -> int:
        return self.count_below + self.count_above


class SequenceTable(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)
    name: str
    values: list[int]

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if n < 0 or n > self.order:
            raise IndexError(f"{self.name} table has order {self.order}, asked for {n}")
        return self.values[n]

    def get(self, n: int) -> int:
        """Same as indexing, except that negative n reads as 0."""
        if n < 0:
            return 0
        return self[n]


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise RejectedInputError(f"Can only factor positive integers, got {n}")
    factors: dict[int, int] = {}
    while n % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def odd_part(n: int) -> int:
    if n < 1:
        raise RejectedInputError(f"odd_part needs n >= 1, got {n}")
    while n % 2 == 0:
        n //= 2
    return n


def two_adic_split(n: int) -> tuple[int, int]:
    """Returns (b, m) with n = 2**b * m and m odd."""
    m = odd_part(n)
    return (n // m).bit_length() - 1, m


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


def divisor_sigma(n: int) -> int:
    return math.prod(
        (p ** (e + 1) - 1) // (p - 1) for p, e in factorize(n).items()
    )


def divisor_stats(n: int) -> DivisorStats:
    if n < 1:
        raise RejectedInputError(f"divisor_stats needs n >= 1, got {n}")
    m = odd_part(n)
    below = 0
    above = 0
    for d in divisors(m):
        # d odd, so d * d == 2n never happens
        if d * d < 2 * n:
            below += 1
        else:
            above += 1
    return DivisorStats(
        n=n,
        d=divisor_count(n),
        sigma=divisor_sigma(n),
        odd_part=m,
        count_below=below,
        count_above=above,
    )


def pentagonal_h(n: int) -> int:
    """(-1)^k when n = k(3k-1)/2 for some integer k, else 0."""
    if n < 0:
        raise RejectedInputError(f"pentagonal_h needs n >= 0, got {n}")
    # n = k(3k-1)/2  <=>  (6k-1)^2 = 24n+1
    disc = 24 * n + 1
    root = math.isqrt(disc)
    if root * root != disc:
        return 0
    if (1 + root) % 6 == 0:
        k = (1 + root) // 6
    elif (1 - root) % 6 == 0:
        k = (1 - root) // 6
    else:
        return 0
    return -1 if k % 2 else 1


def generalized_pentagonals(limit: int) -> list[int]:
    """All k(3k-1)/2 <= limit over k = 0, 1, -1, 2, -2, ..., in that order."""
    found = [0]
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        found.append(k * (3 * k - 1) // 2)
        if k * (3 * k + 1) // 2 <= limit:
            found.append(k * (3 * k + 1) // 2)
        k += 1
    return found


def triangular(k: int) -> int:
    if k < 0:
        raise RejectedInputError(f"triangular needs k >= 0, got {k}")
    return k * (k + 1) // 2


def partition_count_table(order: int) -> SequenceTable:
    """p(0..order) by adding one part size at a time."""
    if order < 0:
        raise RejectedInputError(f"Table order must be >= 0, got {order}")
    values = [1] + [0] * order
    for part in range(1, order + 1):
        for i in range(part, order + 1):
            values[i] += values[i - part]
    logger.info("Built p table to order %d", order)
    return SequenceTable(name="p", values=values)


def distinct_count_table(order: int) -> SequenceTable:
    """p_d(0..order): each part size is used at most once."""
    if order < 0:
        raise RejectedInputError(f"Table order must be >= 0, got {order}")
    values = [1] + [0] * order
    for part in range(1, order + 1):
        for i in range(order, part - 1, -1):
            values[i] += values[i - part]
    logger.info("Built pd table to order %d", order)
    return SequenceTable(name="pd", values=values)
