"""Integer partitions and the counting helpers built on them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Tuple


@dataclass(frozen=True)
class Partition:
    """A partition ``l_1 >= l_2 >= ... >= l_m >= 1`` of ``n = sum l_i``."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> dict:
        """``a_i`` = number of parts equal to ``i``."""
        return dict(Counter(self.parts))

    @property
    def automorphisms(self) -> int:
        """``|S_lambda| = prod a_i!``."""
        return math.prod(math.factorial(a) for a in self.multiplicities.values())

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int, largest: int = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    for parts in _parts(n, n if largest is None else largest):
        yield Partition(parts)


def _parts(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _parts(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in _parts(n, n))
