from enum import Enum

from pydantic import BaseModel, ConfigDict, computed_field, model_validator


class Variant(str, Enum):
    # formula as printed
    paper = "paper"
    # formula the brute-force oracle forces
    derived = "derived"


SINGLE_VARIANT = "value"


class CheckRecord(BaseModel):
    """
    One theorem check at one n. ``rhs`` maps variant labels to closed-form
    values; ``auxiliary`` holds side conditions (label -> (lhs, rhs)) that
    must also agree for the record to pass.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)
    theorem: str
    n: int
    lhs: int
    rhs: dict[str, int]
    canonical: str = SINGLE_VARIANT
    auxiliary: dict[str, tuple[int, int]] = {}

    @model_validator(mode="after")
    def check_canonical(self):
        if self.canonical not in self.rhs:
            raise ValueError(
                f"Canonical variant {self.canonical!r} missing from rhs {list(self.rhs)}"
            )
        return self

    @classmethod
    def single(
        cls,
        theorem: str,
        n: int,
        lhs: int,
        rhs: int,
        auxiliary: dict[str, tuple[int, int]] | None = None,
    ) -> "CheckRecord":
        return cls(
            theorem=theorem,
            n=n,
            lhs=lhs,
            rhs={SINGLE_VARIANT: rhs},
            auxiliary=auxiliary or {},
        )

    @computed_field
    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs[self.canonical] and all(
            a == b for a, b in self.auxiliary.values()
        )

    @property
    def rhs_canonical(self) -> int:
        return self.rhs[self.canonical]

    @property
    def has_variants(self) -> bool:
        return len(self.rhs) > 1

    def matching_variants(self) -> list[str]:
        return [label for label, value in self.rhs.items() if value == self.lhs]
