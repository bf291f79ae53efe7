"""
Coordinator for range sweeps. Shared tables are built (or read from the
cache) once, then per-n work fans out to a worker pool that returns results
in n order.
"""

import logging
import multiprocessing as mp
from typing import Callable, Iterable, Iterator, NamedTuple, TypeVar

from rich.console import Console
from rich.progress import track

from partlab import RejectedInputError, ResourceBudgetError
from partlab.args import RunConfig
from partlab.bijection import lone_tables
from partlab.data_types import CheckRecord
from partlab.divisor_arith import (
    SequenceTable,
    distinct_count_table,
    partition_count_table,
)
from partlab.file_util import read_table_cache, write_table_cache
from partlab.identities import (
    almost_leading_term,
    asymptotic_ratio,
    distinct_asymptotic_ratio,
    distinct_leading_term,
    pa_closed_form,
)
from partlab.partition_core import Partition, PartitionClass, class_size, enumerate_class
from partlab.qseries import GeneratingFunction, QSeries, gf_build
from partlab.registry import (
    ASYMPTOTIC_MIN_N,
    ALL_SELECTOR,
    CheckContext,
    CheckSpec,
    Resource,
    SEQUENCES,
    resolve_checks,
    selector_min_n,
)
from partlab.weights import BUILTIN_WEIGHTS, sample_table_weights

logger = logging.getLogger()

T = TypeVar("T")

_SERIES_BUILDERS = {
    Resource.euler: GeneratingFunction.euler_product,
    Resource.divisor: GeneratingFunction.divisor,
    Resource.uchimura: GeneratingFunction.uchimura,
    Resource.almost: GeneratingFunction.almost_consecutive,
    Resource.distinct_product: GeneratingFunction.distinct_product,
}

# Set in each worker by _init_worker
_WORKER_CONTEXT: CheckContext | None = None


class SweepRange(NamedTuple):
    start: int
    stop: int
    step: int = 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.start, self.stop + 1, self.step))

    @property
    def empty(self) -> bool:
        return self.start > self.stop


class AsymptoticRow(NamedTuple):
    n: int
    # enumerated count
    exact: int
    # the count formula the leading term is derived from
    formula: int
    leading: float
    ratio: float


def requested_range(config: RunConfig) -> SweepRange:
    start = config.from_n
    if start is None:
        start = selector_min_n(config.command.value, config.selector)
    stop = config.to_n if config.to_n is not None else start
    if start > stop:
        raise RejectedInputError(f"--from {start} is larger than --to {stop}")
    return SweepRange(start, stop, config.step)


def check_range(
    requested: SweepRange,
    *,
    name: str,
    min_n: int,
    max_n: int,
    clip: bool,
) -> SweepRange:
    """
    Fits the requested range into [min_n, max_n]. With clip=False an out of
    range request is an error: too small is rejected input, too large is over
    budget.
    """
    if clip:
        start = max(requested.start, min_n)
        # keep the step grid anchored at the requested start
        if start > requested.start and requested.step > 1:
            start += (requested.start - start) % requested.step
        return SweepRange(start, min(requested.stop, max_n), requested.step)
    if requested.start < min_n:
        raise RejectedInputError(f"{name} is defined for n >= {min_n}, got {requested.start}")
    if requested.stop > max_n:
        raise ResourceBudgetError(
            f"{name} up to n={requested.stop} exceeds the budget (largest n is {max_n})"
        )
    return requested


def load_pd_table(order: int, cache_path: str | None = None) -> SequenceTable:
    """p_d(0..order), served from the cache when it is long enough."""
    if cache_path is not None:
        cached = read_table_cache(cache_path)
        if cached is not None and cached.order >= order:
            logger.info("Cache hit: pd table of order %d from %s", cached.order, cache_path)
            return SequenceTable(name="pd", values=cached.values[: order + 1])
    table = distinct_count_table(order)
    if cache_path is not None:
        write_table_cache(cache_path, table)
    return table


def build_context(
    config: RunConfig, orders: dict[Resource, int], weight_max: int = 0
) -> CheckContext:
    ctx = CheckContext(variant=config.variant, budgets=config.budgets())
    for resource, order in orders.items():
        if resource == Resource.p:
            ctx.tables[resource] = partition_count_table(order)
        elif resource == Resource.pd:
            ctx.tables[resource] = load_pd_table(order, config.resolved_cache_path)
        elif resource == Resource.lone:
            ctx.lone = lone_tables(order)
        else:
            ctx.series[resource] = gf_build(_SERIES_BUILDERS[resource], order)
    if weight_max > 0:
        ctx.weights = list(BUILTIN_WEIGHTS) + sample_table_weights(
            config.weight_count, seed=config.seed, max_weight=weight_max
        )
    return ctx


def _init_worker(ctx: CheckContext):
    global _WORKER_CONTEXT
    _WORKER_CONTEXT = ctx


def _run_check(task: tuple[CheckSpec, int]) -> list[CheckRecord]:
    spec, n = task
    return spec.run(n, _WORKER_CONTEXT)


def _ordered_map(
    fn: Callable[[T], list[CheckRecord]],
    tasks: list[T],
    ctx: CheckContext,
    jobs: int,
    progress: bool,
) -> Iterator[list[CheckRecord]]:
    stderr = Console(stderr=True)
    if jobs == 1 or len(tasks) <= 1:
        _init_worker(ctx)
        results: Iterable = map(fn, tasks)
        yield from track(results, total=len(tasks), console=stderr, disable=not progress)
        return
    # forkserver keeps workers clean of the coordinator's state
    pool_ctx = mp.get_context("forkserver")
    chunksize = max(1, len(tasks) // (4 * jobs))
    with pool_ctx.Pool(jobs, initializer=_init_worker, initargs=(ctx,)) as pool:
        results = pool.imap(fn, tasks, chunksize=chunksize)
        yield from track(results, total=len(tasks), console=stderr, disable=not progress)


def plan_checks(config: RunConfig) -> list[tuple[CheckSpec, SweepRange]]:
    requested = requested_range(config)
    clip = config.selector == ALL_SELECTOR
    budgets = config.budgets()
    plan = []
    for spec in resolve_checks(config.selector):
        sweep = check_range(
            requested,
            name=spec.name,
            min_n=spec.min_n,
            max_n=budgets[spec.budget] - spec.offset,
            clip=clip,
        )
        if sweep.empty:
            logger.info("Skipping %s: nothing left of the range after clipping", spec.name)
            continue
        logger.info("Checking %s on n=%d..%d", spec.name, sweep.start, sweep.stop)
        plan.append((spec, sweep))
    return plan


def iter_check_records(config: RunConfig) -> Iterator[CheckRecord]:
    """All records of a verify run, theorem by theorem, each ordered by n."""
    plan = plan_checks(config)
    orders: dict[Resource, int] = {}
    weight_max = 0
    for spec, sweep in plan:
        for resource in spec.needs:
            orders[resource] = max(orders.get(resource, 0), sweep.stop + spec.offset)
        if spec.name == "thm6":
            # sized by the budget so a weight does not depend on the range
            weight_max = config.enumeration_budget
    ctx = build_context(config, orders, weight_max=weight_max)
    tasks = [(spec, n) for spec, sweep in plan for n in sweep]
    for records in _ordered_map(_run_check, tasks, ctx, config.jobs, config.progress):
        yield from records


def iter_sequence(config: RunConfig) -> Iterator[tuple[int, int]]:
    spec = SEQUENCES[config.selector]
    sweep = check_range(
        requested_range(config),
        name=spec.name,
        min_n=spec.min_n,
        max_n=config.budgets()[spec.budget],
        clip=False,
    )
    ctx = build_context(config, {resource: sweep.stop for resource in spec.needs})
    for n in sweep:
        yield n, spec.value(n, ctx)


def iter_enumeration(config: RunConfig) -> Iterator[tuple[int, Partition]]:
    sweep = check_range(
        requested_range(config),
        name=config.selector,
        min_n=1,
        max_n=config.enumeration_budget,
        clip=False,
    )
    family = PartitionClass(config.selector)
    for n in sweep:
        for partition in enumerate_class(n, family):
            yield n, partition


def iter_series(config: RunConfig) -> Iterator[tuple[int, int]]:
    sweep = check_range(
        requested_range(config),
        name=config.selector,
        min_n=0,
        max_n=config.table_budget,
        clip=False,
    )
    series: QSeries = gf_build(config.selector, sweep.stop, variant=config.variant)
    for i in sweep:
        yield i, series[i]


def iter_asymptotic(config: RunConfig) -> Iterator[AsymptoticRow]:
    offset = 1 if config.selector == "pa" else 0
    sweep = check_range(
        requested_range(config),
        name=f"{config.selector} asymptotic",
        min_n=ASYMPTOTIC_MIN_N[config.selector],
        max_n=config.table_budget - offset,
        clip=False,
    )
    pd_table = load_pd_table(sweep.stop + offset, config.resolved_cache_path)
    for n in sweep:
        if config.selector == "pa":
            exact = class_size(n, PartitionClass.almost)
            formula = pa_closed_form(n, pd_table)
            ratio = asymptotic_ratio(n, pd_table, budget=config.table_budget)
            yield AsymptoticRow(n, exact, formula, almost_leading_term(n), ratio)
        else:
            exact = pd_table[n]
            ratio = distinct_asymptotic_ratio(n, pd_table, budget=config.table_budget)
            yield AsymptoticRow(n, exact, exact, distinct_leading_term(n), ratio)
