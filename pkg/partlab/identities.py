"""
Every check pairs a brute-force left side (enumeration of partitions) with a
closed-form right side (divisors, pentagonal numbers, count tables). The two
sides never share a code path.

Where a printed right side disagrees with the enumeration, the record carries
it as the paper variant next to the corrected derived one. The corrections
for the g preimage lemma subtract the lone partitions, counted by their own
enumeration or by lone_tables.
"""

import logging
import math
from typing import NamedTuple

from partlab import RejectedInputError, ResourceBudgetError
from partlab.bijection import (
    LoneTables,
    Region,
    apply_g,
    apply_h,
    classify_region,
    is_lone,
    lone_sum,
    lone_tables,
    preimage_count,
    preimage_map,
    printed_preimage_count,
)
from partlab.data_types import CheckRecord, Variant
from partlab.divisor_arith import (
    SequenceTable,
    distinct_count_table,
    divisor_count,
    divisor_sigma,
    divisor_stats,
    odd_part,
    partition_count_table,
    pentagonal_h,
    triangular,
    two_adic_split,
)
from partlab.partition_core import (
    Partition,
    PartitionClass,
    class_size,
    enumerate_almost_consecutive,
    enumerate_distinct,
    iter_class_parts,
    weighted_sum,
)
from partlab.qseries import GeneratingFunction, QSeries, gf_build
from partlab.weights import SIGN, SIGNED_SMALLEST, StatWeight

logger = logging.getLogger()

DISTINCT = PartitionClass.distinct
CONSECUTIVE = PartitionClass.consecutive
ALMOST = PartitionClass.almost


def _require_min(n: int, minimum: int, theorem: str):
    if n < minimum:
        raise RejectedInputError(f"{theorem} is stated for n >= {minimum}, got n={n}")


def _require_budget(weight: int, budget: int | None, theorem: str):
    if budget is not None and weight > budget:
        raise ResourceBudgetError(
            f"{theorem} needs partitions of weight {weight}, over the budget {budget}"
        )


def _variants(paper: int, derived: int) -> dict[str, int]:
    return {Variant.paper.value: paper, Variant.derived.value: derived}


def odd_divisor_count(n: int) -> int:
    return divisor_count(odd_part(n))


def check_pentagonal(n: int, budget: int | None = None) -> CheckRecord:
    _require_min(n, 1, "thm1")
    _require_budget(n, budget, "thm1")
    # p_e - p_o
    lhs = weighted_sum(n, DISTINCT, SIGN)
    return CheckRecord.single("thm1", n, lhs, pentagonal_h(n))


def check_pentagonal_gf(n: int, euler: QSeries | None = None) -> CheckRecord:
    _require_min(n, 0, "thm1gf")
    if euler is None or euler.order < n:
        euler = gf_build(GeneratingFunction.euler_product, n)
    return CheckRecord.single("thm1gf", n, euler[n], pentagonal_h(n))


def check_euler_recurrence(n: int, p_table: SequenceTable | None = None) -> CheckRecord:
    _require_min(n, 1, "thm2")
    if p_table is None or p_table.order < n:
        p_table = partition_count_table(n)
    lhs = p_table.get(n)
    i = 1
    while i * (3 * i - 1) // 2 <= n:
        sign = -1 if i % 2 else 1
        lhs += sign * (
            p_table.get(n - i * (3 * i - 1) // 2) + p_table.get(n - i * (3 * i + 1) // 2)
        )
        i += 1
    return CheckRecord.single("thm2", n, lhs, 0)


def check_reciprocal(
    n: int, p_table: SequenceTable | None = None, euler: QSeries | None = None
) -> CheckRecord:
    """Coefficient n of (sum p(k) q^k) * prod (1 - q^j) is 1 at n = 0, else 0."""
    _require_min(n, 0, "reciprocal")
    if p_table is None or p_table.order < n:
        p_table = partition_count_table(n)
    if euler is None or euler.order < n:
        euler = gf_build(GeneratingFunction.euler_product, n)
    lhs = sum(p_table[i] * euler[n - i] for i in range(n + 1))
    return CheckRecord.single("reciprocal", n, lhs, 1 if n == 0 else 0)


def check_uchimura(n: int, budget: int | None = None) -> CheckRecord:
    _require_min(n, 1, "thm3")
    _require_budget(n, budget, "thm3")
    # sp_o - sp_e = -(sum of (-1)^length * smallest)
    lhs = -weighted_sum(n, DISTINCT, SIGNED_SMALLEST)
    return CheckRecord.single("thm3", n, lhs, divisor_stats(n).d)


def check_uchimura_gf(
    n: int,
    divisor_series: QSeries | None = None,
    uchimura_series: QSeries | None = None,
    canonical: Variant = Variant.derived,
) -> CheckRecord:
    """
    The divisor series against the smallest-part series. The derived
    variant is the positive form, the paper variant carries the printed
    leading minus sign.
    """
    _require_min(n, 1, "thm3gf")
    if divisor_series is None or divisor_series.order < n:
        divisor_series = gf_build(GeneratingFunction.divisor, n)
    if uchimura_series is None or uchimura_series.order < n:
        uchimura_series = gf_build(GeneratingFunction.uchimura, n)
    positive = uchimura_series[n]
    return CheckRecord(
        theorem="thm3gf",
        n=n,
        lhs=divisor_series[n],
        rhs=_variants(paper=-positive, derived=positive),
        canonical=Variant(canonical).value,
    )


def _consecutive_split(n: int) -> tuple[int, int, int, int]:
    """(odd-length count, even-length count, sc_o, sc_e) by enumeration."""
    odd = even = sc_odd = sc_even = 0
    for parts in iter_class_parts(n, CONSECUTIVE):
        if len(parts) % 2:
            odd += 1
            sc_odd += parts[0]
        else:
            even += 1
            sc_even += parts[0]
    return odd, even, sc_odd, sc_even


def check_consecutive_counts(n: int) -> CheckRecord:
    _require_min(n, 1, "thm4")
    odd, even, _, _ = _consecutive_split(n)
    stats = divisor_stats(n)
    return CheckRecord.single(
        "thm4",
        n,
        odd + even,
        divisor_count(stats.odd_part),
        auxiliary={
            "odd_length": (odd, stats.count_below),
            "even_length": (even, stats.count_above),
        },
    )


def consecutive_signed_closed_form(n: int) -> tuple[int, int]:
    """Returns (sigma(n) + below - above, half of it) for the split at sqrt(2n)."""
    stats = divisor_stats(n)
    numerator = stats.sigma + stats.count_below - stats.count_above
    return numerator, numerator // 2


def check_smallest_consecutive(n: int) -> CheckRecord:
    _require_min(n, 1, "thm5")
    _, _, sc_odd, sc_even = _consecutive_split(n)
    numerator, half = consecutive_signed_closed_form(n)
    # sum of (-1)^length * smallest over consecutive partitions
    signed_sum = sc_even - sc_odd
    return CheckRecord.single(
        "thm5",
        n,
        sc_odd - sc_even,
        half,
        auxiliary={
            "parity": (numerator % 2, 0),
            "signed_sum": (signed_sum, -half),
        },
    )


def check_sigma_multiplicative(n: int) -> CheckRecord:
    _require_min(n, 1, "sigma")
    b, m = two_adic_split(n)
    stats = divisor_stats(n)
    return CheckRecord.single(
        "sigma",
        n,
        divisor_sigma(n),
        (2 ** (b + 1) - 1) * divisor_sigma(m),
        auxiliary={"split": (stats.count_below + stats.count_above, divisor_count(m))},
    )


def check_distinct_counts(
    n: int,
    pd_table: SequenceTable | None = None,
    product: QSeries | None = None,
    budget: int | None = None,
) -> CheckRecord:
    _require_min(n, 1, "pd")
    _require_budget(n, budget, "pd")
    if pd_table is None or pd_table.order < n:
        pd_table = distinct_count_table(n)
    if product is None or product.order < n:
        product = gf_build(GeneratingFunction.distinct_product, n)
    return CheckRecord.single(
        "pd",
        n,
        class_size(n, DISTINCT),
        pd_table[n],
        auxiliary={"product": (product[n], pd_table[n])},
    )


def main_identity_rhs(n: int, weight: StatWeight) -> int:
    pair_sum = sum(weight(2, i) for i in range(1, (n - 3) // 2 + 1))
    return (
        2 * weighted_sum(n, DISTINCT, weight)
        + weighted_sum(n + 1, CONSECUTIVE, weight)
        - weighted_sum(n + 1, DISTINCT, weight)
        - weighted_sum(n - 2, DISTINCT, weight)
        + pair_sum
        + weight(1, n - 2)
        - weight(1, n)
    )


def check_main_identity(
    n: int,
    weight: StatWeight,
    budget: int | None = None,
    canonical: Variant = Variant.derived,
) -> CheckRecord:
    """
    The printed right side counts every S3 partition twice among the g
    preimages. Lone partitions have one preimage, so the derived variant
    subtracts their weight once.
    """
    theorem = f"thm6:{weight.name}"
    _require_min(n, 3, theorem)
    _require_budget(n + 1, budget, theorem)
    printed = main_identity_rhs(n, weight)
    return CheckRecord(
        theorem=theorem,
        n=n,
        lhs=weighted_sum(n, ALMOST, weight),
        rhs=_variants(paper=printed, derived=printed - lone_sum(n, weight)),
        canonical=Variant(canonical).value,
    )


def _region_sum(n: int, region: Region, weight: StatWeight) -> int:
    return sum(
        weight(p.length, p.smallest)
        for p in enumerate_distinct(n)
        if classify_region(p) == region
    )


def check_s2_transfer(
    n: int, weight: StatWeight, budget: int | None = None
) -> CheckRecord:
    """h moves S2(n) onto the non-singleton distinct partitions of n-2."""
    theorem = f"derivation:s2:{weight.name}"
    _require_min(n, 3, theorem)
    _require_budget(n, budget, theorem)
    rhs = weighted_sum(n - 2, DISTINCT, weight) - weight(1, n - 2)
    return CheckRecord.single(theorem, n, _region_sum(n, Region.S2, weight), rhs)


def check_s1_sum(
    n: int,
    weight: StatWeight,
    budget: int | None = None,
    canonical: Variant = Variant.derived,
) -> CheckRecord:
    theorem = f"derivation:s1:{weight.name}"
    _require_min(n, 3, theorem)
    _require_budget(n + 1, budget, theorem)
    printed = (
        2 * weighted_sum(n, DISTINCT, weight)
        + weighted_sum(n + 1, CONSECUTIVE, weight)
        - weighted_sum(n + 1, DISTINCT, weight)
        - weighted_sum(n - 2, DISTINCT, weight)
        + weight(1, n - 2)
        - 2 * weight(1, n)
    )
    return CheckRecord(
        theorem=theorem,
        n=n,
        lhs=_region_sum(n, Region.S1, weight),
        rhs=_variants(paper=printed, derived=printed - lone_sum(n, weight)),
        canonical=Variant(canonical).value,
    )


def check_preimage_lemmas(
    n: int, budget: int | None = None, canonical: Variant = Variant.derived
) -> CheckRecord:
    """
    Brute force: every non-consecutive distinct partition of n+1 is mapped
    by g and grouped by image. The paper variant sums the region rule over
    P_d(n), the derived one sums preimage_count.
    """
    _require_min(n, 1, "lemmas")
    grouped = preimage_map(n, budget=budget)
    brute_total = printed_total = exact_total = mismatches = lone = 0
    for partition in enumerate_distinct(n):
        brute = len(grouped.get(partition.parts, []))
        exact = preimage_count(partition)
        brute_total += brute
        exact_total += exact
        printed_total += printed_preimage_count(partition)
        if is_lone(partition.parts):
            lone += 1
        if brute != exact:
            logger.warning(
                "n=%d: %s has %d preimages, classified as %d", n, partition, brute, exact
            )
            mismatches += 1
    violations = 0
    for image, preimages in grouped.items():
        for pre in preimages:
            g_image = apply_g(pre)
            if (
                g_image.parts != image
                or g_image.length != pre.length
                or g_image.smallest != pre.smallest
            ):
                violations += 1
    domain_size = distinct_count_table(n + 1)[n + 1] - odd_divisor_count(n + 1)
    return CheckRecord(
        theorem="lemmas",
        n=n,
        lhs=brute_total,
        rhs=_variants(paper=printed_total, derived=exact_total),
        canonical=Variant(canonical).value,
        auxiliary={
            "mismatches": (mismatches, 0),
            "invariance": (violations, 0),
            "domain": (exact_total, domain_size),
            "lone": (printed_total - exact_total, lone),
        },
    )


def check_h_bijection(n: int, budget: int | None = None) -> CheckRecord:
    _require_min(n, 3, "h_map")
    _require_budget(n, budget, "h_map")
    region_counts = {region: 0 for region in Region}
    images: list[Partition] = []
    preserved = 0
    for partition in enumerate_distinct(n):
        region = classify_region(partition)
        region_counts[region] += 1
        if region == Region.S2:
            image = apply_h(partition)
            images.append(image)
            if image.length == partition.length and image.smallest == partition.smallest:
                preserved += 1
    in_target = sum(1 for p in images if p.weight == n - 2 and p.length > 1)
    pd_table = distinct_count_table(n)
    pa = len(enumerate_almost_consecutive(n))
    return CheckRecord.single(
        "h_map",
        n,
        len(images),
        pd_table[n - 2] - 1,
        auxiliary={
            "injective": (len(set(images)), len(images)),
            "image": (in_target, len(images)),
            "preserved": (preserved, len(images)),
            "regions": (sum(region_counts.values()), pd_table[n]),
            "singleton": (region_counts[Region.SINGLETON], 1),
            # almost consecutive, minus (n), minus the (i, n-i) with gap > 2
            "s1": (region_counts[Region.S1], pa - 1 - (n - 3) // 2),
        },
    )


def pa_closed_form(n: int, pd_table: SequenceTable) -> int:
    """The count formula as printed, exact only while n has no lone partitions."""
    return (
        2 * pd_table[n]
        - pd_table[n + 1]
        - pd_table[n - 2]
        + odd_divisor_count(n + 1)
        + (n - 3) // 2
    )


def _lone_or_build(lone: LoneTables | None, n: int) -> LoneTables:
    if lone is None or lone.count.order < n:
        lone = lone_tables(n)
    return lone


def check_pa_closed_form(
    n: int,
    pd_table: SequenceTable | None = None,
    lone: LoneTables | None = None,
    canonical: Variant = Variant.derived,
) -> CheckRecord:
    _require_min(n, 3, "thm12")
    if pd_table is None or pd_table.order < n + 1:
        pd_table = distinct_count_table(n + 1)
    lone = _lone_or_build(lone, n)
    printed = pa_closed_form(n, pd_table)
    return CheckRecord(
        theorem="thm12",
        n=n,
        lhs=class_size(n, ALMOST),
        rhs=_variants(paper=printed, derived=printed - lone.count[n]),
        canonical=Variant(canonical).value,
    )


def check_sign_sum(
    n: int, lone: LoneTables | None = None, canonical: Variant = Variant.derived
) -> CheckRecord:
    _require_min(n, 3, "thm13")
    lone = _lone_or_build(lone, n)
    stats = divisor_stats(n + 1)
    printed = (
        2 * pentagonal_h(n)
        - pentagonal_h(n + 1)
        - pentagonal_h(n - 2)
        - stats.count_below
        + stats.count_above
        + (n - 3) // 2
    )
    return CheckRecord(
        theorem="thm13",
        n=n,
        lhs=weighted_sum(n, ALMOST, SIGN),
        rhs=_variants(paper=printed, derived=printed - lone.sign[n]),
        canonical=Variant(canonical).value,
    )


def check_signed_smallest(
    n: int, lone: LoneTables | None = None, canonical: Variant = Variant.derived
) -> CheckRecord:
    """
    The printed formula uses d(n+2); substituting (-1)^length * smallest into
    the main identity gives d(n-2) instead, less the lone partitions.
    """
    _require_min(n, 3, "thm14")
    lone = _lone_or_build(lone, n)
    _, half = consecutive_signed_closed_form(n + 1)
    common = (
        divisor_count(n + 1)
        - 2 * divisor_count(n)
        + triangular((n - 3) // 2)
        + 2
        - half
    )
    return CheckRecord(
        theorem="thm14",
        n=n,
        lhs=weighted_sum(n, ALMOST, SIGNED_SMALLEST),
        rhs=_variants(
            paper=common + divisor_count(n + 2),
            derived=common + divisor_count(n - 2) - lone.signed_smallest[n],
        ),
        canonical=Variant(canonical).value,
    )


class TripletCount(NamedTuple):
    triplets: int
    restricted: int


def _count_abr(n: int) -> int:
    """(a, b, r) with a, b >= 1, r >= 2 and n = T(r-2) + a(r-1) + br."""
    count = 0
    r = 2
    while triangular(r - 2) + (r - 1) + r <= n:
        rest = n - triangular(r - 2)
        a = 1
        while rest - a * (r - 1) >= r:
            if (rest - a * (r - 1)) % r == 0:
                count += 1
            a += 1
        r += 1
    return count


def _count_restricted(n: int) -> int:
    """
    Partitions of n into 1..r where 1..r-2 occur once and r-1, r at least
    once: strip 1 + ... + r, then count ways to pay the rest in (r-1)s and rs.
    """
    count = 0
    r = 2
    while triangular(r) <= n:
        rest = n - triangular(r)
        ways = [1] + [0] * rest
        for coin in (r - 1, r):
            for i in range(coin, rest + 1):
                ways[i] += ways[i - coin]
        count += ways[rest]
        r += 1
    return count


def count_triplets_shifted(n: int) -> int:
    """(a, b, r) with a, b >= 0, r >= 2 and n - r(r+1)/2 = a(r-1) + br."""
    count = 0
    r = 2
    while triangular(r) <= n:
        rest = n - triangular(r)
        for b in range(rest // r + 1):
            if (rest - b * r) % (r - 1) == 0:
                count += 1
        r += 1
    return count


def count_triplets(n: int) -> TripletCount:
    _require_min(n, 1, "thm7")
    return TripletCount(triplets=_count_abr(n), restricted=_count_restricted(n))


def check_triplets(
    n: int,
    almost_series: QSeries | None = None,
    canonical: Variant = Variant.derived,
) -> CheckRecord:
    """
    The statement equates the triplet count with p_a(n); the parametrization
    never produces the singleton (n), so the oracle gives p_a(n) - 1.
    """
    counts = count_triplets(n)
    if almost_series is None or almost_series.order < n:
        almost_series = gf_build(GeneratingFunction.almost_consecutive, n)
    pa = class_size(n, ALMOST)
    return CheckRecord(
        theorem="thm7",
        n=n,
        lhs=counts.triplets,
        rhs=_variants(paper=pa, derived=pa - 1),
        canonical=Variant(canonical).value,
        auxiliary={
            "restricted": (counts.restricted, counts.triplets),
            "shifted": (count_triplets_shifted(n), counts.triplets),
            "series": (almost_series[n], counts.triplets),
        },
    )


def almost_leading_term(n: int) -> float:
    return (
        math.pi
        / (8 * 3**0.75)
        * n**-1.25
        * math.exp(math.pi * math.sqrt(n / 3))
    )


def distinct_leading_term(n: int) -> float:
    return math.exp(math.pi * math.sqrt(n / 3)) / (4 * 3**0.25 * n**0.75)


def _float_ratio(exact: int, leading, n: int) -> float:
    try:
        return float(exact) / leading(n)
    except OverflowError:
        raise ResourceBudgetError(f"n={n} overflows floating point")


def asymptotic_ratio(
    n: int, pd_table: SequenceTable | None = None, budget: int | None = None
) -> float:
    """
    The printed count formula over the leading term claimed for p_a. The
    formula is exact until the division; p_a itself is almost_linear_ratio.
    """
    _require_min(n, 3, "thm15")
    _require_budget(n + 1, budget, "thm15")
    if pd_table is None or pd_table.order < n + 1:
        pd_table = distinct_count_table(n + 1)
    return _float_ratio(pa_closed_form(n, pd_table), almost_leading_term, n)


def almost_linear_ratio(n: int) -> float:
    # p_a(n) = n + O(sqrt(n)): one almost consecutive partition per
    # lattice point of k(l+1) + ml = n - T(l-1), and sum 1/(l(l+1)) = 1
    _require_min(n, 1, "pa growth")
    return class_size(n, ALMOST) / n


def distinct_asymptotic_ratio(
    n: int, pd_table: SequenceTable | None = None, budget: int | None = None
) -> float:
    _require_min(n, 1, "pd asymptotic")
    _require_budget(n, budget, "pd asymptotic")
    if pd_table is None or pd_table.order < n:
        pd_table = distinct_count_table(n)
    return _float_ratio(pd_table[n], distinct_leading_term, n)
