from enum import Enum
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from partlab import DomainError, RejectedInputError, ResourceBudgetError
from partlab.divisor_arith import SequenceTable
from partlab.partition_core import Partition, flags_of_parts, iter_distinct_parts
from partlab.weights import StatWeight


class Region(str, Enum):
    SINGLETON = "singleton"
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"


def _g_parts(parts: tuple[int, ...]) -> tuple[int, ...] | None:
    # largest m (0-based here) with parts[m] > parts[m - 1] + 1
    for m in range(len(parts) - 1, 0, -1):
        if parts[m] > parts[m - 1] + 1:
            return parts[:m] + (parts[m] - 1,) + parts[m + 1 :]
    return None


def apply_g(partition: Partition) -> Partition:
    """Lowers the highest part that sits more than 1 above its predecessor."""
    image = _g_parts(partition.parts)
    if image is None:
        raise DomainError(f"g is undefined on consecutive partition {partition}")
    return Partition(image)


def _last_wide_gap(parts: tuple[int, ...]) -> tuple[int, int] | None:
    """(index, size) of the last gap above 1; gap i sits between parts i and i+1."""
    for i in range(len(parts) - 2, -1, -1):
        gap = parts[i + 1] - parts[i]
        if gap != 1:
            return i, gap
    return None


def preimage_count(partition: Partition) -> int:
    """
    Exact size of g^-1(partition). Raising the last part always gives one
    preimage. A second one comes from raising part i when the last gap above 1
    is gap i, has size exactly 2, and i >= 1.
    """
    if partition.length == 1:
        return 0
    wide = _last_wide_gap(partition.parts)
    if wide is not None and wide[0] >= 1 and wide[1] == 2:
        return 2
    return 1


def printed_preimage_count(partition: Partition) -> int:
    """The region rule: 0 for (n), 1 on S1 and S2, 2 on all of S3."""
    region = classify_region(partition)
    if region == Region.SINGLETON:
        return 0
    if region == Region.S3:
        return 2
    return 1


def is_lone(parts: tuple[int, ...]) -> bool:
    """
    S3 partitions with a single g preimage: last gap 1, and the last gap above
    1 is not the first gap and is at least 3.
    """
    if len(parts) < 4 or parts[-1] - parts[-2] != 1:
        return False
    wide = _last_wide_gap(parts)
    return wide is not None and wide[0] >= 1 and wide[1] >= 3


def preimage_map(n: int, budget: int | None = None) -> dict[tuple[int, ...], list[Partition]]:
    """
    Groups every non-consecutive distinct partition of n+1 by its g image.
    Keys are part tuples of partitions of n, values are sorted preimages.
    """
    if budget is not None and n + 1 > budget:
        raise ResourceBudgetError(
            f"Preimages of weight {n + 1} exceed the enumeration budget {budget}"
        )
    grouped: dict[tuple[int, ...], list[Partition]] = {}
    for parts in iter_distinct_parts(n + 1):
        image = _g_parts(parts)
        if image is None:
            continue
        grouped.setdefault(image, []).append(Partition(parts))
    return grouped


def preimages_g(partition: Partition, budget: int | None = None) -> list[Partition]:
    return preimage_map(partition.weight, budget=budget).get(partition.parts, [])


def apply_h(partition: Partition) -> Partition:
    if classify_region(partition) != Region.S2:
        raise DomainError(f"h is only defined on S2, {partition} is not in it")
    parts = partition.parts
    return Partition(parts[:-1] + (parts[-1] - 2,))


def classify_region(partition: Partition) -> Region:
    parts = partition.parts
    if len(parts) == 1:
        return Region.SINGLETON
    last_gap = parts[-1] - parts[-2]
    if last_gap > 2:
        return Region.S2
    if flags_of_parts(parts).almost_consecutive:
        return Region.S1
    return Region.S3


@lru_cache(maxsize=16)
def lone_histogram(n: int) -> tuple[tuple[int, int, int], ...]:
    """Sorted (length, smallest, count) over the lone partitions of n."""
    counts: dict[tuple[int, int], int] = {}
    for parts in iter_distinct_parts(n):
        if is_lone(parts):
            key = (len(parts), parts[0])
            counts[key] = counts.get(key, 0) + 1
    return tuple(sorted((k, s, c) for (k, s), c in counts.items()))


def lone_sum(n: int, weight: StatWeight) -> int:
    return sum(count * weight(k, s) for k, s, count in lone_histogram(n))


class LoneTables(NamedTuple):
    count: SequenceTable
    sign: SequenceTable
    signed_smallest: SequenceTable


def _zeros(size: int) -> np.ndarray:
    # object dtype keeps exact Python integers
    return np.zeros(size, dtype=object)


def lone_tables(order: int) -> LoneTables:
    """
    Count, sum of (-1)^length and sum of (-1)^length * smallest over the lone
    partitions of every weight up to order, without enumerating them.

    A lone partition is a head of at least two distinct parts, all at most
    a - 3, followed by the run a, a+1, ..., a+r-1 with r >= 2. Heads are
    tracked by a 0/1 knapsack over parts 1..top, with top = a - 3 when the
    runs starting at a are attached.
    """
    if order < 0:
        raise RejectedInputError(f"Table order must be >= 0, got {order}")
    size = order + 1
    cnt, sgn, ssm = _zeros(size), _zeros(size), _zeros(size)
    cnt[0] = 1
    sgn[0] = 1
    out_cnt, out_sgn, out_ssm = _zeros(size), _zeros(size), _zeros(size)

    top = 0
    while 2 * (top + 3) + 1 <= order:
        start = top + 3
        head_cnt, head_sgn, head_ssm = cnt.copy(), sgn.copy(), ssm.copy()
        # drop the empty head and the single-part heads (w) for w <= top
        head_cnt[0] -= 1
        head_sgn[0] -= 1
        singles = min(top, order)
        if singles > 0:
            head_cnt[1 : singles + 1] -= 1
            head_sgn[1 : singles + 1] += 1
            head_ssm[1 : singles + 1] += np.array(range(1, singles + 1), dtype=object)

        run = 2
        while run * start + run * (run - 1) // 2 <= order:
            tail = run * start + run * (run - 1) // 2
            sign = 1 if run % 2 == 0 else -1
            out_cnt[tail:] += head_cnt[: size - tail]
            out_sgn[tail:] += sign * head_sgn[: size - tail]
            out_ssm[tail:] += sign * head_ssm[: size - tail]
            run += 1

        part = top + 1
        # right-hand sides read the previous stage, so each part is used once
        cnt[part:] = cnt[part:] + cnt[: size - part]
        sgn[part:] = sgn[part:] - sgn[: size - part]
        ssm[part:] = ssm[part:] - ssm[: size - part]
        ssm[part] -= part
        top += 1

    return LoneTables(
        count=SequenceTable(name="lone_count", values=out_cnt.tolist()),
        sign=SequenceTable(name="lone_sign", values=out_sgn.tolist()),
        signed_smallest=SequenceTable(name="lone_signed_smallest", values=out_ssm.tolist()),
    )
