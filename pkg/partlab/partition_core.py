import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, NamedTuple

from partlab import DomainError, RejectedInputError
from partlab.constants import MAX_PARTITION_WEIGHT

if TYPE_CHECKING:
    from partlab.weights import StatWeight

logger = logging.getLogger()


class PartitionClass(str, Enum):
    distinct = "distinct"
    consecutive = "consecutive"
    almost = "almost"


@dataclass(frozen=True, order=True, slots=True)
class Partition:
    """
    A partition into distinct parts, stored in strictly increasing order.
    Ordering of Partition objects is lexicographic on ``parts``.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) == 0:
            raise ValueError("A partition needs at least one part")
        if self.parts[0] < 1:
            raise ValueError(f"Parts must be positive, got {self.parts}")
        for a, b in zip(self.parts, self.parts[1:]):
            if b <= a:
                raise ValueError(f"Parts must be strictly increasing, got {self.parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def smallest(self) -> int:
        return self.parts[0]

    @property
    def largest(self) -> int:
        return self.parts[-1]

    def gaps(self) -> list[int]:
        return [b - a for a, b in zip(self.parts, self.parts[1:])]

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts)


@dataclass(frozen=True, slots=True)
class AlmostConsecutiveForm:
    """The partition k, k+m, k+m+1, ..., k+m+run-1."""

    smallest: int
    gap: int
    run: int

    def __post_init__(self):
        if self.smallest < 1 or self.gap < 1 or self.run < 1:
            raise ValueError(
                f"smallest, gap and run must all be >= 1, got {self.smallest}, {self.gap}, {self.run}"
            )

    @property
    def weight(self) -> int:
        k, m, l = self.smallest, self.gap, self.run
        return k * (l + 1) + m * l + l * (l - 1) // 2

    def to_partition(self) -> Partition:
        first_upper = self.smallest + self.gap
        return Partition(
            (self.smallest,) + tuple(range(first_upper, first_upper + self.run))
        )

    @classmethod
    def from_partition(cls, partition: Partition) -> "AlmostConsecutiveForm":
        if partition.length < 2 or not classify(partition).almost_consecutive:
            raise DomainError(
                f"{partition} has no (smallest, gap, run) form: needs >= 2 parts, almost consecutive"
            )
        return cls(
            smallest=partition.parts[0],
            gap=partition.parts[1] - partition.parts[0],
            run=partition.length - 1,
        )


class ClassFlags(NamedTuple):
    consecutive: bool
    almost_consecutive: bool


def _check_weight(n: int):
    if n < 1:
        raise RejectedInputError(f"Partitions are enumerated for n >= 1, got n={n}")
    if n > MAX_PARTITION_WEIGHT:
        raise RejectedInputError(
            f"n={n} exceeds the supported weight {MAX_PARTITION_WEIGHT}"
        )


def _distinct_tuples(
    remaining: int, min_part: int, prefix: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    # Ascending-lexicographic: the closing part (remaining,) sorts after
    # every continuation, since those all start with a smaller part.
    first = min_part
    while 2 * first < remaining:
        yield from _distinct_tuples(remaining - first, first + 1, prefix + (first,))
        first += 1
    if remaining >= min_part:
        yield prefix + (remaining,)


def iter_distinct_parts(n: int) -> Iterator[tuple[int, ...]]:
    _check_weight(n)
    yield from _distinct_tuples(n, 1, ())


def _consecutive_tuples(n: int) -> list[tuple[int, ...]]:
    found = []
    length = 1
    while length * (length + 1) // 2 <= n:
        offset = length * (length - 1) // 2
        if (n - offset) % length == 0:
            start = (n - offset) // length
            found.append(tuple(range(start, start + length)))
        length += 1
    found.sort()
    return found


def _almost_consecutive_tuples(n: int) -> list[tuple[int, ...]]:
    found = {(n,)}
    run = 1
    while True:
        base = run * (run - 1) // 2
        # minimum weight for this run has smallest = gap = 1
        if (run + 1) + run + base > n:
            break
        smallest = 1
        while smallest * (run + 1) + run + base <= n:
            rest = n - base - smallest * (run + 1)
            if rest % run == 0:
                form = AlmostConsecutiveForm(smallest=smallest, gap=rest // run, run=run)
                found.add(form.to_partition().parts)
            smallest += 1
        run += 1
    for parts in _consecutive_tuples(n):
        found.add(parts)
    return sorted(found)


def iter_class_parts(n: int, family: PartitionClass) -> Iterator[tuple[int, ...]]:
    family = PartitionClass(family)
    _check_weight(n)
    if family == PartitionClass.distinct:
        return iter_distinct_parts(n)
    elif family == PartitionClass.consecutive:
        return iter(_consecutive_tuples(n))
    else:
        return iter(_almost_consecutive_tuples(n))


def enumerate_distinct(n: int) -> list[Partition]:
    return [Partition(parts) for parts in iter_distinct_parts(n)]


def enumerate_consecutive(n: int) -> list[Partition]:
    _check_weight(n)
    return [Partition(parts) for parts in _consecutive_tuples(n)]


def enumerate_almost_consecutive(n: int) -> list[Partition]:
    _check_weight(n)
    return [Partition(parts) for parts in _almost_consecutive_tuples(n)]


def enumerate_class(n: int, family: PartitionClass) -> list[Partition]:
    return [Partition(parts) for parts in iter_class_parts(n, family)]


def flags_of_parts(parts: tuple[int, ...]) -> ClassFlags:
    gaps = [b - a for a, b in zip(parts, parts[1:])]
    almost = all(g == 1 for g in gaps[1:])
    return ClassFlags(
        consecutive=almost and (len(gaps) == 0 or gaps[0] == 1),
        almost_consecutive=almost,
    )


def classify(partition: Partition) -> ClassFlags:
    return flags_of_parts(partition.parts)


@lru_cache(maxsize=16)
def statistic_histogram(
    n: int, family: PartitionClass
) -> tuple[tuple[int, int, int], ...]:
    """
    Enumerates the family once and returns sorted (length, smallest, count)
    triples; every (length, smallest)-weighted sum over the family reads it.
    """
    family = PartitionClass(family)
    counts: dict[tuple[int, int], int] = {}
    for parts in iter_class_parts(n, family):
        key = (len(parts), parts[0])
        counts[key] = counts.get(key, 0) + 1
    logger.debug("Enumerated %s partitions of n=%d", family.value, n)
    return tuple(sorted((k, s, c) for (k, s), c in counts.items()))


def weighted_sum(n: int, family: PartitionClass, weight: "StatWeight") -> int:
    family = PartitionClass(family)
    return sum(count * weight(k, s) for k, s, count in statistic_histogram(n, family))


def class_size(n: int, family: PartitionClass) -> int:
    return sum(count for _, _, count in statistic_histogram(n, PartitionClass(family)))
