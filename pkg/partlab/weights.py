import abc
import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict


class StatWeight(abc.ABC):
    """F(length, smallest) -> exact integer; a statistic of a distinct partition."""

    name: str

    @abc.abstractmethod
    def __call__(self, length: int, smallest: int) -> int:
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class OneWeight(StatWeight):
    name = "one"

    def __call__(self, length: int, smallest: int) -> int:
        return 1


class SignWeight(StatWeight):
    name = "sign"

    def __call__(self, length: int, smallest: int) -> int:
        return -1 if length % 2 else 1


class SignedSmallestWeight(StatWeight):
    name = "signed_smallest"

    def __call__(self, length: int, smallest: int) -> int:
        return -smallest if length % 2 else smallest


class TableWeight(StatWeight):
    def __init__(self, name: str, table: list[list[int]]):
        self.name = name
        self.table = table

    def __call__(self, length: int, smallest: int) -> int:
        if length < 1 or smallest < 1:
            raise ValueError("Weights are defined for length, smallest >= 1")
        if length >= len(self.table) or smallest >= len(self.table[length]):
            raise ValueError(
                f"{self.name} covers length < {len(self.table)}, "
                f"smallest < {len(self.table[0])}; got ({length}, {smallest})"
            )
        return self.table[length][smallest]


ONE = OneWeight()
SIGN = SignWeight()
SIGNED_SMALLEST = SignedSmallestWeight()
BUILTIN_WEIGHTS: list[StatWeight] = [ONE, SIGN, SIGNED_SMALLEST]


class StatWeightKind(str, Enum):
    one = "one"
    sign = "sign"
    signed_smallest = "signed_smallest"
    table = "table"


class StatWeightArgs(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: StatWeightKind = StatWeightKind.one
    # Only used by table weights
    seed: int = 0
    index: int = 0
    max_weight: int = 128
    low: int = -9
    high: int = 9

    def build(self) -> StatWeight:
        if self.kind == StatWeightKind.one:
            return ONE
        elif self.kind == StatWeightKind.sign:
            return SIGN
        elif self.kind == StatWeightKind.signed_smallest:
            return SIGNED_SMALLEST
        elif self.kind == StatWeightKind.table:
            rng = np.random.default_rng((self.seed, self.index))
            # k parts need weight >= k(k+1)/2; row and column 0 are unused
            rows = math.isqrt(2 * self.max_weight) + 2
            cols = self.max_weight + 1
            table = rng.integers(self.low, self.high + 1, size=(rows, cols)).tolist()
            return TableWeight(name=f"w{self.index:03d}", table=table)
        else:
            raise NotImplementedError(f"{self.kind} weight is not implemented")


def sample_table_weights(count: int, *, seed: int, max_weight: int) -> list[StatWeight]:
    return [
        StatWeightArgs(
            kind=StatWeightKind.table, seed=seed, index=i, max_weight=max_weight
        ).build()
        for i in range(count)
    ]
