"""Maximal cliques read straight off the reach vector.

Row ``i`` of the NIR matrix anchors a maximal clique when some element of the
row has no 1 directly below it: a column ``j < i`` whose chain ends at ``i``
(``j + x_j == i``), the diagonal of a node with ``x_i == 0``, or the last row.
The clique anchored at row ``a`` is ``{j <= a : j + x_j >= a}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import StructureError
from .interval_model import NirForm, SnirForm, nir_entry

__all__ = ["CliqueSequence", "StairSet", "maximal_cliques", "stairs", "anchor_rows"]


@dataclass(frozen=True)
class CliqueSequence:
    """Maximal cliques ``Q_1..Q_m`` in row order.

    ``anchors[i - 1]`` is the row ``a_i`` of clique ``Q_i``.  :meth:`anchor`
    accepts ``i = 0`` and returns the sentinel ``a_0 = 0``.
    """

    form: NirForm
    anchors: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.anchors)

    def anchor(self, i: int) -> int:
        if i == 0:
            return 0
        if not 1 <= i <= self.m:
            raise IndexError(f"clique index {i} out of range for m={self.m}")
        return self.anchors[i - 1]

    def size(self, i: int) -> int:
        if i == 0:
            return 0
        return self.sizes[i - 1]

    def members(self, i: int) -> tuple[int, ...]:
        """Nodes of ``Q_i`` in increasing order (empty for ``i = 0``)."""
        if i == 0:
            return ()
        a = self.anchor(i)
        f = self.form
        return tuple(j for j in range(1, a + 1) if f.end(j) >= a)

    def block(self, i: int) -> range:
        """``Q_i \\ Q_{i-1}``, always the rows ``a_{i-1}+1 .. a_i``."""
        return range(self.anchor(i - 1) + 1, self.anchor(i) + 1)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.members(i)) for i in range(1, self.m + 1)]

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        """``block_of[v - 1]`` is the index ``i`` with ``v`` in ``Q_i \\ Q_{i-1}``."""
        out = []
        for i, a in enumerate(self.anchors, start=1):
            out.extend([i] * (a - len(out)))
        return tuple(out)


@dataclass(frozen=True)
class StairSet:
    """Picks ``(a_i, b_i)`` of an SNIR matrix, top to bottom.

    Stair ``i`` covers nodes ``b_i..a_i``, which form the clique ``Q_i``.
    """

    form: SnirForm
    picks: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.picks)

    def a(self, i: int) -> int:
        return 0 if i == 0 else self.picks[i - 1][0]

    def b(self, i: int) -> int:
        if i == 0:
            raise IndexError("b_0 is undefined")
        return self.picks[i - 1][1]

    def size(self, i: int) -> int:
        a, b = self.picks[i - 1]
        return a - b + 1

    def members(self, i: int) -> tuple[int, ...]:
        a, b = self.picks[i - 1]
        return tuple(range(b, a + 1))

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.members(i)) for i in range(1, self.m + 1)]


def anchor_rows(f: NirForm) -> list[int]:
    n = f.n
    chain_stops = [False] * (n + 1)
    for j, x in enumerate(f.reach, start=1):
        if x > 0:
            chain_stops[j + x] = True
    return [
        i
        for i in range(1, n + 1)
        if i == n or f.reach[i - 1] == 0 or chain_stops[i]
    ]


def maximal_cliques(f: NirForm) -> CliqueSequence:
    """Ordered maximal cliques of the interval graph given by ``f``."""
    anchors = anchor_rows(f)
    # cover[r] = number of nodes j <= r with j + x_j >= r
    delta = [0] * (f.n + 2)
    for j, x in enumerate(f.reach, start=1):
        delta[j] += 1
        delta[j + x + 1] -= 1
    cover = []
    running = 0
    for r in range(f.n + 1):
        running += delta[r]
        cover.append(running)
    sizes = tuple(cover[a] for a in anchors)
    return CliqueSequence(f, tuple(anchors), sizes)


def stairs(f: NirForm) -> StairSet:
    """Picks and stairs of an SNIR matrix.

    Raises:
        StructureError: ``f`` is not stair-shaped.
    """
    if not f.is_stair():
        raise StructureError("stairs() needs non-decreasing right endpoints")
    snir = f if isinstance(f, SnirForm) else SnirForm(f.reach)
    picks = []
    b = 1
    for a in anchor_rows(snir):
        # ends are monotone, so the first node still reaching row a starts the stair
        while snir.end(b) < a:
            b += 1
        picks.append((a, b))
    return StairSet(snir, tuple(picks))


def is_pick(f: NirForm, i: int, j: int) -> bool:
    """Check the pick conditions entry by entry (slow; for tests and inspection)."""
    n = f.n
    if i < j:
        return False
    if i > j and nir_entry(f, i, j) != 1:
        return False
    if any(nir_entry(f, i, c) for c in range(1, j)):
        return False
    return not any(nir_entry(f, r, j) for r in range(i + 1, n + 1))
