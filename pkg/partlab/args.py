from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from partlab.constants import MAX_PARTITION_WEIGHT, default_cache_path
from partlab.data_types import Variant
from partlab.registry import BudgetKind, known_selectors


class Command(str, Enum):
    verify = "verify"
    seq = "seq"
    enumerate = "enumerate"
    gf = "gf"
    asymptotic = "asymptotic"


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"
    text = "text"


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    command: Command = Command.verify
    selector: str = "all"
    # None means the selector's smallest legal n
    from_n: int | None = None
    # None means from_n
    to_n: int | None = None
    step: int = Field(default=1, ge=1)
    output_format: OutputFormat = OutputFormat.text
    jobs: int = Field(default=1, ge=1)
    # Falls back to $PARTLAB_CACHE
    cache_path: str | None = None
    variant: Variant = Variant.derived
    seed: int = Field(default=0, ge=0)
    # Seeded table weights checked by thm6 on top of the built-in ones
    weight_count: int = Field(default=200, ge=0)

    enumeration_budget: int = Field(default=120, ge=1)
    # lemmas on n <= 60 enumerate P_d(61)
    lemma_budget: int = Field(default=61, ge=1)
    table_budget: int = Field(default=5000, ge=1)
    divisor_budget: int = Field(default=MAX_PARTITION_WEIGHT, ge=1)

    progress: bool = False
    log_level: str = "WARNING"
    log_file: str | None = None

    @model_validator(mode="after")
    def check_selector_and_range(self):
        valid = known_selectors(self.command.value)
        if self.selector not in valid:
            raise ValueError(
                f"Unknown {self.command.value} selector {self.selector!r}, "
                f"expected one of {valid}"
            )
        if self.from_n is not None and self.to_n is not None and self.from_n > self.to_n:
            raise ValueError(f"--from {self.from_n} is larger than --to {self.to_n}")
        if self.divisor_budget > MAX_PARTITION_WEIGHT:
            raise ValueError(
                f"divisor_budget is capped at {MAX_PARTITION_WEIGHT}, got {self.divisor_budget}"
            )
        return self

    @property
    def resolved_cache_path(self) -> str | None:
        if self.cache_path is not None:
            return self.cache_path
        return default_cache_path()

    def budgets(self) -> dict[BudgetKind, int]:
        return {
            BudgetKind.enumeration: self.enumeration_budget,
            BudgetKind.lemma: self.lemma_budget,
            BudgetKind.table: self.table_budget,
            BudgetKind.divisor: self.divisor_budget,
        }
