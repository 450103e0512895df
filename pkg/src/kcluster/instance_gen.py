"""Seeded random realizations and exhaustive enumeration of normal forms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import factorial
from typing import Iterator

from .errors import BudgetError
from .interval_model import IntervalRealization, NirForm

__all__ = ["GenSpec", "gen_random", "enumerate_canonical", "count_canonical", "MAX_ENUM_N"]

MAX_ENUM_N = 10


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random realization.

    ``hi`` defaults to ``2 * n``.  Proper instances use intervals of common
    length ``unit`` with integer left endpoints in ``[lo, hi]``.
    """

    n: int
    cls: str = "interval"
    seed: int = 0
    lo: int = 0
    hi: int | None = None
    unit: int = 4

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.cls not in ("interval", "proper"):
            raise ValueError(f"unknown class {self.cls!r}")
        if self.upper < self.lo:
            raise ValueError("empty coordinate range")
        if self.unit < 0:
            raise ValueError("unit length must be non-negative")

    @property
    def upper(self) -> int:
        return 2 * self.n if self.hi is None else self.hi


def gen_random(spec: GenSpec) -> IntervalRealization:
    rng = random.Random(spec.seed)
    lo, hi = spec.lo, spec.upper
    pairs = []
    if spec.cls == "interval":
        for _ in range(spec.n):
            a, b = rng.randint(lo, hi), rng.randint(lo, hi)
            pairs.append((min(a, b), max(a, b)))
    else:
        for _ in range(spec.n):
            left = rng.randint(lo, hi)
            pairs.append((left, left + spec.unit))
    return IntervalRealization.from_pairs(pairs)


def enumerate_canonical(n: int, proper_only: bool = False) -> Iterator[NirForm]:
    """Every reach vector on ``n`` nodes, in lexicographic order.

    There are ``n!`` of them.  With ``proper_only`` only stair-shaped vectors
    are produced.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUM_N:
        raise BudgetError(f"exhaustive enumeration capped at n <= {MAX_ENUM_N}")
    for reach in itertools.product(*(range(n - i + 1) for i in range(1, n + 1))):
        f = NirForm(reach)
        if proper_only and not f.is_stair():
            continue
        yield f


def count_canonical(n: int) -> int:
    return factorial(n)
