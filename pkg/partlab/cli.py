import logging
import sys
from collections import defaultdict
from typing import Any, Callable, Iterable

import click
import orjson
import typer
from omegaconf.errors import OmegaConfBaseException
from pydantic import ValidationError

from partlab import RejectedInputError, ResourceBudgetError
from partlab.args import Command, OutputFormat, RunConfig
from partlab.config_parser import overrides_to_cli_config, parse_args_to_pydantic_model
from partlab.data_types import CheckRecord, Variant
from partlab.logger import init_logger
from partlab.partition_core import Partition
from partlab.runner import (
    AsymptoticRow,
    iter_asymptotic,
    iter_check_records,
    iter_enumeration,
    iter_sequence,
    iter_series,
)

logger = logging.getLogger()

app = typer.Typer(add_completion=False, no_args_is_help=True)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _dumps(obj: dict[str, Any]) -> str:
    return orjson.dumps(obj).decode()


def format_record(record: CheckRecord, fmt: OutputFormat | str) -> str:
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.json:
        if record.has_variants:
            rhs: str | dict[str, str] = {k: str(v) for k, v in record.rhs.items()}
        else:
            rhs = str(record.rhs_canonical)
        return _dumps(
            {
                "theorem": record.theorem,
                "n": record.n,
                "lhs": str(record.lhs),
                "rhs": rhs,
                "pass": record.passed,
            }
        )
    elif fmt == OutputFormat.csv:
        passed = "true" if record.passed else "false"
        return f"{record.theorem},{record.n},{record.lhs},{record.rhs_canonical},{passed}"
    elif fmt == OutputFormat.text:
        status = "PASS" if record.passed else "FAIL"
        if record.has_variants:
            rhs_text = " ".join(f"rhs[{k}]={v}" for k, v in record.rhs.items())
            rhs_text += f" canonical={record.canonical}"
        else:
            rhs_text = f"rhs={record.rhs_canonical}"
        line = f"{status} {record.theorem} n={record.n} lhs={record.lhs} {rhs_text}"
        broken = [f"{k}:{a}!={b}" for k, (a, b) in record.auxiliary.items() if a != b]
        if broken:
            line += " aux " + " ".join(broken)
        return line
    else:
        raise NotImplementedError(f"{fmt} is not a known format")


class Tally:
    """
    Pass/fail totals plus, per theorem with variants, how often each matched.
    Weighted families such as thm6:w003 are tallied under their prefix.
    """

    def __init__(self):
        self.total = 0
        self.passed = 0
        self.variants: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
        self.variant_totals: dict[str, int] = defaultdict(int)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    def add(self, record: CheckRecord):
        self.total += 1
        self.passed += int(record.passed)
        if record.has_variants:
            family = record.theorem.partition(":")[0]
            self.variant_totals[family] += 1
            matching = record.matching_variants()
            for label in record.rhs:
                self.variants[family][label] += int(label in matching)

    def variant_counts(self) -> dict[str, dict[str, str]]:
        return {
            theorem: {
                label: f"{count}/{self.variant_totals[theorem]}"
                for label, count in labels.items()
            }
            for theorem, labels in self.variants.items()
        }

    def erratum_candidates(self) -> list[tuple[str, int, int]]:
        out = []
        for theorem, labels in self.variants.items():
            total = self.variant_totals[theorem]
            matched = labels.get(Variant.paper.value, 0)
            if matched < total:
                out.append((theorem, total - matched, total))
        return out


def format_summary(fields: dict[str, Any], fmt: OutputFormat) -> str:
    if fmt == OutputFormat.json:
        return _dumps({"summary": fields})
    parts = []
    for key, value in fields.items():
        if isinstance(value, dict):
            for theorem, labels in value.items():
                parts.extend(f"{theorem}[{label}]={count}" for label, count in labels.items())
        else:
            parts.append(f"{key}={value}")
    return "# summary " + " ".join(parts)


def _emit_rows(
    rows: Iterable, fmt: OutputFormat, formatter: Callable[[Any, OutputFormat], str]
) -> int:
    count = 0
    for row in rows:
        typer.echo(formatter(row, fmt))
        count += 1
    return count


def run_verify(config: RunConfig) -> int:
    tally = Tally()
    for record in iter_check_records(config):
        tally.add(record)
        typer.echo(format_record(record, config.output_format))
    summary: dict[str, Any] = {
        "total": tally.total,
        "passed": tally.passed,
        "failed": tally.failed,
        "seed": config.seed,
    }
    if tally.variants:
        summary["variants"] = tally.variant_counts()
    typer.echo(format_summary(summary, config.output_format))
    for theorem, failures, total in tally.erratum_candidates():
        logger.warning(
            "Erratum candidate: %s as printed fails on %d of %d records",
            theorem,
            failures,
            total,
        )
    return EXIT_OK if tally.failed == 0 else EXIT_FAILED


def _format_value(name: str) -> Callable[[tuple[int, int], OutputFormat], str]:
    def formatter(row: tuple[int, int], fmt: OutputFormat) -> str:
        n, value = row
        if fmt == OutputFormat.json:
            return _dumps({"sequence": name, "n": n, "value": str(value)})
        elif fmt == OutputFormat.csv:
            return f"{n},{value}"
        else:
            return f"{name}({n}) = {value}"

    return formatter


def _format_partition(
    name: str,
) -> Callable[[tuple[int, Partition], OutputFormat], str]:
    def formatter(row: tuple[int, Partition], fmt: OutputFormat) -> str:
        n, partition = row
        if fmt == OutputFormat.json:
            return _dumps({"class": name, "n": n, "parts": list(partition.parts)})
        elif fmt == OutputFormat.csv:
            return f"{n},{partition}"
        else:
            return f"{n} = {partition}"

    return formatter


def _format_coefficient(name: str) -> Callable[[tuple[int, int], OutputFormat], str]:
    def formatter(row: tuple[int, int], fmt: OutputFormat) -> str:
        index, coeff = row
        if fmt == OutputFormat.json:
            return _dumps({"series": name, "index": index, "coefficient": str(coeff)})
        elif fmt == OutputFormat.csv:
            return f"{index},{coeff}"
        else:
            return f"[q^{index}] {name} = {coeff}"

    return formatter


def _format_asymptotic(row: AsymptoticRow, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.json:
        return _dumps(
            {
                "n": row.n,
                "exact": str(row.exact),
                "formula": str(row.formula),
                "leading": repr(row.leading),
                "ratio": repr(row.ratio),
            }
        )
    elif fmt == OutputFormat.csv:
        return f"{row.n},{row.exact},{row.formula},{row.leading!r},{row.ratio!r}"
    else:
        return (
            f"n={row.n} exact={row.exact} formula={row.formula} "
            f"leading={row.leading!r} ratio={row.ratio!r}"
        )


def run_listing(config: RunConfig) -> int:
    name = config.selector
    if config.command == Command.seq:
        rows, formatter = iter_sequence(config), _format_value(name)
    elif config.command == Command.enumerate:
        rows, formatter = iter_enumeration(config), _format_partition(name)
    elif config.command == Command.gf:
        rows, formatter = iter_series(config), _format_coefficient(name)
    elif config.command == Command.asymptotic:
        rows, formatter = iter_asymptotic(config), _format_asymptotic
    else:
        raise NotImplementedError(f"{config.command} is not a listing command")
    count = _emit_rows(rows, config.output_format, formatter)
    typer.echo(
        format_summary(
            {"command": config.command.value, "selector": name, "count": count},
            config.output_format,
        )
    )
    return EXIT_OK if count > 0 else EXIT_FAILED


def _usage_error(message: str) -> int:
    ctx = click.get_current_context(silent=True)
    if ctx is not None:
        typer.echo(ctx.get_usage(), err=True)
    typer.echo(f"Error: {message}", err=True)
    return EXIT_USAGE


def execute(
    command: Command,
    selector: str | None,
    overrides: dict[str, Any],
    config: str | None,
) -> int:
    overrides = {
        k: (v.value if isinstance(v, (OutputFormat, Variant)) else v)
        for k, v in overrides.items()
    }
    overrides["command"] = command.value
    overrides["selector"] = selector
    try:
        cli_cfg = overrides_to_cli_config(overrides, config_path=config)
        run_config = parse_args_to_pydantic_model(RunConfig, cli_args=cli_cfg)
        init_logger(run_config.log_file, level=run_config.log_level)
    except ValidationError as e:
        errors = "; ".join(err["msg"] for err in e.errors())
        return _usage_error(errors)
    except (OmegaConfBaseException, OSError, ValueError) as e:
        return _usage_error(str(e))

    logger.info("Running with config %s", run_config.model_dump_json())
    try:
        if run_config.command == Command.verify:
            return run_verify(run_config)
        return run_listing(run_config)
    except RejectedInputError as e:
        return _usage_error(str(e))
    except ResourceBudgetError as e:
        logger.error("Resource budget exceeded: %s", e)
        return EXIT_BUDGET


@app.command()
def verify(
    selector: str | None = typer.Argument(
        None, help="Theorem name, alias or 'all' (the default)."
    ),
    from_n: int | None = typer.Option(None, "--from"),
    to_n: int | None = typer.Option(None, "--to"),
    step: int | None = typer.Option(None, "--step"),
    output_format: OutputFormat | None = typer.Option(None, "--format"),
    jobs: int | None = typer.Option(None, "--jobs"),
    cache_path: str | None = typer.Option(None, "--cache"),
    variant: Variant | None = typer.Option(None, "--variant"),
    seed: int | None = typer.Option(None, "--seed"),
    weight_count: int | None = typer.Option(None, "--weights"),
    progress: bool = typer.Option(False, "--progress", help="Progress bar on stderr."),
    log_level: str | None = typer.Option(None, "--log-level"),
    config: str | None = typer.Option(None, "--config"),
) -> int:
    """Check identities on a range of n; exits 1 if any record fails."""
    return execute(
        Command.verify,
        selector,
        _shared_overrides(
            from_n=from_n,
            to_n=to_n,
            output_format=output_format,
            jobs=jobs,
            cache_path=cache_path,
            variant=variant,
            seed=seed,
            log_level=log_level,
            step=step,
            weight_count=weight_count,
            # unset flags must not shadow the config file
            progress=progress or None,
        ),
        config,
    )


def _shared_overrides(
    *,
    from_n: int | None,
    to_n: int | None,
    output_format: OutputFormat | None,
    jobs: int | None,
    cache_path: str | None,
    variant: Variant | None,
    seed: int | None,
    log_level: str | None,
    **extra: Any,
) -> dict[str, Any]:
    # every command takes the shared grammar; flags a command has no use
    # for are validated and recorded in the config, nothing more
    return dict(
        from_n=from_n,
        to_n=to_n,
        output_format=output_format,
        jobs=jobs,
        cache_path=cache_path,
        variant=variant,
        seed=seed,
        log_level=log_level,
        **extra,
    )


@app.command()
def seq(
    selector: str = typer.Argument(..., help="Sequence name."),
    from_n: int | None = typer.Option(None, "--from"),
    to_n: int | None = typer.Option(None, "--to"),
    step: int | None = typer.Option(None, "--step"),
    output_format: OutputFormat | None = typer.Option(None, "--format"),
    jobs: int | None = typer.Option(None, "--jobs", help="Accepted, sequences run serially."),
    cache_path: str | None = typer.Option(None, "--cache", help="p_d table cache."),
    variant: Variant | None = typer.Option(None, "--variant", help="Accepted, unused."),
    seed: int | None = typer.Option(None, "--seed", help="Accepted, unused."),
    log_level: str | None = typer.Option(None, "--log-level"),
    config: str | None = typer.Option(None, "--config"),
) -> int:
    """Print an integer sequence on a range of n."""
    return execute(
        Command.seq,
        selector,
        _shared_overrides(
            from_n=from_n,
            to_n=to_n,
            output_format=output_format,
            jobs=jobs,
            cache_path=cache_path,
            variant=variant,
            seed=seed,
            log_level=log_level,
            step=step,
        ),
        config,
    )


@app.command("enumerate")
def enumerate_partitions(
    selector: str = typer.Argument(..., help="Partition class: distinct, consecutive or almost."),
    from_n: int | None = typer.Option(None, "--from"),
    to_n: int | None = typer.Option(None, "--to"),
    output_format: OutputFormat | None = typer.Option(None, "--format"),
    jobs: int | None = typer.Option(None, "--jobs", help="Accepted, listings run serially."),
    cache_path: str | None = typer.Option(None, "--cache", help="Accepted, unused."),
    variant: Variant | None = typer.Option(None, "--variant", help="Accepted, unused."),
    seed: int | None = typer.Option(None, "--seed", help="Accepted, unused."),
    log_level: str | None = typer.Option(None, "--log-level"),
    config: str | None = typer.Option(None, "--config"),
) -> int:
    """List the partitions of a class for each n."""
    return execute(
        Command.enumerate,
        selector,
        _shared_overrides(
            from_n=from_n,
            to_n=to_n,
            output_format=output_format,
            jobs=jobs,
            cache_path=cache_path,
            variant=variant,
            seed=seed,
            log_level=log_level,
        ),
        config,
    )


@app.command()
def gf(
    selector: str = typer.Argument(..., help="Generating function name."),
    from_n: int | None = typer.Option(None, "--from"),
    to_n: int | None = typer.Option(None, "--to"),
    output_format: OutputFormat | None = typer.Option(None, "--format"),
    jobs: int | None = typer.Option(None, "--jobs", help="Accepted, series build serially."),
    cache_path: str | None = typer.Option(None, "--cache", help="Accepted, unused."),
    variant: Variant | None = typer.Option(
        None, "--variant", help="paper prints the uchimura series with its printed sign."
    ),
    seed: int | None = typer.Option(None, "--seed", help="Accepted, unused."),
    log_level: str | None = typer.Option(None, "--log-level"),
    config: str | None = typer.Option(None, "--config"),
) -> int:
    """Print coefficients of a truncated generating function."""
    return execute(
        Command.gf,
        selector,
        _shared_overrides(
            from_n=from_n,
            to_n=to_n,
            output_format=output_format,
            jobs=jobs,
            cache_path=cache_path,
            variant=variant,
            seed=seed,
            log_level=log_level,
        ),
        config,
    )


@app.command()
def asymptotic(
    selector: str = typer.Argument("pa", help="pa or pd."),
    from_n: int | None = typer.Option(None, "--from"),
    to_n: int | None = typer.Option(None, "--to"),
    step: int | None = typer.Option(None, "--step"),
    output_format: OutputFormat | None = typer.Option(None, "--format"),
    jobs: int | None = typer.Option(None, "--jobs", help="Accepted, rows run serially."),
    cache_path: str | None = typer.Option(None, "--cache", help="p_d table cache."),
    variant: Variant | None = typer.Option(None, "--variant", help="Accepted, unused."),
    seed: int | None = typer.Option(None, "--seed", help="Accepted, unused."),
    log_level: str | None = typer.Option(None, "--log-level"),
    config: str | None = typer.Option(None, "--config"),
) -> int:
    """Exact counts against their leading asymptotic term."""
    return execute(
        Command.asymptotic,
        selector,
        _shared_overrides(
            from_n=from_n,
            to_n=to_n,
            output_format=output_format,
            jobs=jobs,
            cache_path=cache_path,
            variant=variant,
            seed=seed,
            log_level=log_level,
            step=step,
        ),
        config,
    )


def run_command(argv: list[str]) -> int:
    """Runs the CLI on argv and returns the exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=list(argv), prog_name="partlab", standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_FAILED
    if isinstance(result, int):
        return result
    return EXIT_OK


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
