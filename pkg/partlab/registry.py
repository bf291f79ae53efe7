from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from partlab.bijection import LoneTables
from partlab.data_types import CheckRecord, Variant
from partlab.divisor_arith import (
    SequenceTable,
    divisor_count,
    divisor_sigma,
    pentagonal_h,
    triangular,
)
from partlab.identities import (
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
)
from partlab.partition_core import PartitionClass, class_size
from partlab.qseries import GeneratingFunction, QSeries
from partlab.weights import BUILTIN_WEIGHTS, StatWeight


class BudgetKind(str, Enum):
    # full enumeration of P_d
    enumeration = "enumeration"
    # P_d enumeration plus per-partition bijection work
    lemma = "lemma"
    # O(N^2) big-integer tables and series
    table = "table"
    # O(n) or O(sqrt n) work per n
    divisor = "divisor"


class Resource(str, Enum):
    p = "p"
    pd = "pd"
    euler = "euler"
    divisor = "divisor"
    uchimura = "uchimura"
    almost = "almost"
    distinct_product = "distinct_product"
    # sums over partitions whose g preimage count drops from 2 to 1
    lone = "lone"


@dataclass
class CheckContext:
    """Read-only state shared by every n of a run, built once by the coordinator."""

    variant: Variant = Variant.derived
    weights: list[StatWeight] = field(default_factory=lambda: list(BUILTIN_WEIGHTS))
    budgets: dict[BudgetKind, int] = field(default_factory=dict)
    tables: dict[Resource, SequenceTable] = field(default_factory=dict)
    series: dict[Resource, QSeries] = field(default_factory=dict)
    lone: LoneTables | None = None

    def budget(self, kind: BudgetKind) -> int | None:
        return self.budgets.get(kind)


@dataclass(frozen=True)
class CheckSpec:
    name: str
    run: Callable[[int, CheckContext], list[CheckRecord]]
    min_n: int
    budget: BudgetKind
    # largest weight enumerated or table order read is n + offset
    offset: int = 0
    needs: tuple[Resource, ...] = ()
    aliases: tuple[str, ...] = ()
    description: str = ""


def _thm1(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_pentagonal(n, budget=ctx.budget(BudgetKind.enumeration))]


def _thm1gf(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_pentagonal_gf(n, euler=ctx.series.get(Resource.euler))]


def _thm2(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_euler_recurrence(n, p_table=ctx.tables.get(Resource.p))]


def _reciprocal(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_reciprocal(
            n, p_table=ctx.tables.get(Resource.p), euler=ctx.series.get(Resource.euler)
        )
    ]


def _thm3(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_uchimura(n, budget=ctx.budget(BudgetKind.enumeration))]


def _thm3gf(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_uchimura_gf(
            n,
            divisor_series=ctx.series.get(Resource.divisor),
            uchimura_series=ctx.series.get(Resource.uchimura),
            canonical=ctx.variant,
        )
    ]


def _thm4(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_consecutive_counts(n)]


def _thm5(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_smallest_consecutive(n)]


def _thm6(n: int, ctx: CheckContext) -> list[CheckRecord]:
    budget = ctx.budget(BudgetKind.enumeration)
    return [
        check_main_identity(n, weight, budget=budget, canonical=ctx.variant)
        for weight in ctx.weights
    ]


def _thm7(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_triplets(
            n, almost_series=ctx.series.get(Resource.almost), canonical=ctx.variant
        )
    ]


def _thm12(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_pa_closed_form(
            n, pd_table=ctx.tables.get(Resource.pd), lone=ctx.lone, canonical=ctx.variant
        )
    ]


def _thm13(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_sign_sum(n, lone=ctx.lone, canonical=ctx.variant)]


def _thm14(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_signed_smallest(n, lone=ctx.lone, canonical=ctx.variant)]


def _lemmas(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_preimage_lemmas(n, budget=ctx.budget(BudgetKind.lemma), canonical=ctx.variant)
    ]


def _h_map(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_h_bijection(n, budget=ctx.budget(BudgetKind.lemma))]


def _derivation(n: int, ctx: CheckContext) -> list[CheckRecord]:
    budget = ctx.budget(BudgetKind.lemma)
    records = []
    for weight in BUILTIN_WEIGHTS:
        records.append(check_s2_transfer(n, weight, budget=budget))
        records.append(check_s1_sum(n, weight, budget=budget, canonical=ctx.variant))
    return records


def _sigma(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [check_sigma_multiplicative(n)]


def _pd(n: int, ctx: CheckContext) -> list[CheckRecord]:
    return [
        check_distinct_counts(
            n,
            pd_table=ctx.tables.get(Resource.pd),
            product=ctx.series.get(Resource.distinct_product),
            budget=ctx.budget(BudgetKind.enumeration),
        )
    ]


_CHECKS = [
    CheckSpec("thm1", _thm1, 1, BudgetKind.enumeration, aliases=("pentagonal",),
              description="p_e(n) - p_o(n) = h(n) by enumeration"),
    CheckSpec("thm1gf", _thm1gf, 0, BudgetKind.table, needs=(Resource.euler,),
              aliases=("pentagonal_gf",),
              description="coefficients of prod (1 - q^j) equal h(n)"),
    CheckSpec("thm2", _thm2, 1, BudgetKind.table, needs=(Resource.p,),
              aliases=("euler", "euler_recurrence"),
              description="Euler's pentagonal recurrence for p(n)"),
    CheckSpec("reciprocal", _reciprocal, 0, BudgetKind.table,
              needs=(Resource.p, Resource.euler),
              description="partition series times prod (1 - q^j) is 1"),
    CheckSpec("thm3", _thm3, 1, BudgetKind.enumeration, aliases=("uchimura",),
              description="sp_o(n) - sp_e(n) = d(n) by enumeration"),
    CheckSpec("thm3gf", _thm3gf, 1, BudgetKind.table,
              needs=(Resource.divisor, Resource.uchimura), aliases=("uchimura_gf",),
              description="divisor series against the smallest-part series"),
    CheckSpec("thm4", _thm4, 1, BudgetKind.divisor,
              aliases=("sylvester", "mason", "thm9"),
              description="consecutive partition counts and their length parity split"),
    CheckSpec("thm5", _thm5, 1, BudgetKind.divisor,
              aliases=("smallest_consecutive", "thm8"),
              description="sc_o(n) - sc_e(n) from sigma and the sqrt(2n) split"),
    CheckSpec("thm6", _thm6, 3, BudgetKind.enumeration, offset=1, aliases=("main",),
              description="weighted sums over almost consecutive partitions"),
    CheckSpec("thm7", _thm7, 1, BudgetKind.table, needs=(Resource.almost,),
              aliases=("triplets",),
              description="triplet count against p_a(n)"),
    CheckSpec("thm12", _thm12, 3, BudgetKind.table, offset=1,
              needs=(Resource.pd, Resource.lone),
              aliases=("pa_closed",), description="closed form for p_a(n)"),
    CheckSpec("thm13", _thm13, 3, BudgetKind.table, offset=1, needs=(Resource.lone,),
              aliases=("sign_sum",), description="sum of (-1)^length over P_a(n)"),
    CheckSpec("thm14", _thm14, 3, BudgetKind.table, offset=2, needs=(Resource.lone,),
              aliases=("signed_smallest",),
              description="sum of (-1)^length * smallest over P_a(n)"),
    CheckSpec("lemmas", _lemmas, 1, BudgetKind.lemma, offset=1,
              description="preimage classification of g"),
    CheckSpec("h_map", _h_map, 3, BudgetKind.lemma,
              description="h is a bijection from S2 and the regions cover P_d(n)"),
    CheckSpec("derivation", _derivation, 3, BudgetKind.lemma, offset=1,
              description="S1 and S2 sums from the proof of the main identity"),
    CheckSpec("sigma", _sigma, 1, BudgetKind.divisor,
              description="sigma(2^b m) = (2^(b+1) - 1) sigma(m)"),
    CheckSpec("pd", _pd, 1, BudgetKind.enumeration,
              needs=(Resource.pd, Resource.distinct_product),
              description="p_d table against enumeration and prod (1 + q^j)"),
]

CHECKS: dict[str, CheckSpec] = {spec.name: spec for spec in _CHECKS}
CHECK_ALIASES: dict[str, str] = {
    alias: spec.name for spec in _CHECKS for alias in (spec.name,) + spec.aliases
}
ALL_SELECTOR = "all"


def resolve_checks(selector: str) -> list[CheckSpec]:
    if selector == ALL_SELECTOR:
        return list(CHECKS.values())
    return [CHECKS[CHECK_ALIASES[selector]]]


@dataclass(frozen=True)
class SequenceSpec:
    name: str
    value: Callable[[int, CheckContext], int]
    min_n: int
    budget: BudgetKind
    needs: tuple[Resource, ...] = ()


SEQUENCES: dict[str, SequenceSpec] = {
    spec.name: spec
    for spec in [
        SequenceSpec("p", lambda n, ctx: ctx.tables[Resource.p][n], 0,
                     BudgetKind.table, needs=(Resource.p,)),
        SequenceSpec("pd", lambda n, ctx: ctx.tables[Resource.pd][n], 0,
                     BudgetKind.table, needs=(Resource.pd,)),
        SequenceSpec("pa", lambda n, ctx: class_size(n, PartitionClass.almost), 1,
                     BudgetKind.divisor),
        SequenceSpec("pc", lambda n, ctx: class_size(n, PartitionClass.consecutive), 1,
                     BudgetKind.divisor),
        SequenceSpec("d", lambda n, ctx: divisor_count(n), 1, BudgetKind.divisor),
        SequenceSpec("sigma", lambda n, ctx: divisor_sigma(n), 1, BudgetKind.divisor),
        SequenceSpec("h", lambda n, ctx: pentagonal_h(n), 0, BudgetKind.divisor),
        SequenceSpec("t", lambda n, ctx: triangular(n), 0, BudgetKind.divisor),
        SequenceSpec("triplets", lambda n, ctx: count_triplets(n).triplets, 1,
                     BudgetKind.divisor),
    ]
}

ASYMPTOTIC_MIN_N = {"pa": 3, "pd": 1}


def selector_min_n(command: str, selector: str) -> int:
    if command == "verify":
        return min(spec.min_n for spec in resolve_checks(selector))
    if command == "seq":
        return SEQUENCES[selector].min_n
    if command == "enumerate":
        return 1
    if command == "gf":
        return 0
    if command == "asymptotic":
        return ASYMPTOTIC_MIN_N[selector]
    raise ValueError(f"Unknown command {command}")


def known_selectors(command: str) -> list[str]:
    if command == "verify":
        return [ALL_SELECTOR] + list(CHECK_ALIASES)
    if command == "seq":
        return list(SEQUENCES)
    if command == "enumerate":
        return [c.value for c in PartitionClass]
    if command == "gf":
        return [g.value for g in GeneratingFunction]
    if command == "asymptotic":
        return list(ASYMPTOTIC_MIN_N)
    raise ValueError(f"Unknown command {command}")
