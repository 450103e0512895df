"""k-cluster on general interval graphs.

Stage ``i`` splits ``G_i`` into six regions::

    x  Q_i \\ Q_{i-1}                 rows a_{i-1}+1 .. a_i
    y  (Q_i & Q_{i-1}) \\ Q_{i-2}      l in (a_{i-2}, a_{i-1}], end(l) >= a_i
    z  Q_{i-1} \\ (Q_i | Q_{i-2})      l in (a_{i-2}, a_{i-1}], end(l) <  a_i
    w  Q_i & Q_{i-2}                  l <= a_{i-2},  end(l) >= a_i
    u  (Q_{i-1} & Q_{i-2}) \\ Q_i      l <= a_{i-2},  a_{i-1} <= end(l) < a_i
    v  the rest of G_i

where ``end(l) = l + x_l``.  Only counts enter the recurrence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .clique_structure import CliqueSequence, maximal_cliques
from .dp import (
    NEG_INF,
    ClusterSolution,
    DpTable,
    Stage,
    build_table,
    comb2,
    empty_solution,
    solution_from_table,
)
from .interval_model import NirForm

__all__ = [
    "SplitBoundsInterval",
    "EndIndex",
    "split_bounds_interval",
    "split_bounds_naive",
    "region_members",
    "build_interval_table",
    "solve_interval",
    "solve_interval_all",
    "dp_value_interval",
    "reconstruct_interval",
]


@dataclass(frozen=True)
class SplitBoundsInterval:
    x_max: int
    y_max: int
    z_max: int
    w_max: int
    u_max: int
    v_max: int

    @property
    def total(self) -> int:
        return self.x_max + self.y_max + self.z_max + self.w_max + self.u_max + self.v_max

    @property
    def xp_max(self) -> int:
        """``|Q_i & Q_{i-1}|``."""
        return self.y_max + self.w_max


class _Fenwick:
    def __init__(self, n: int):
        self.tree = [0] * (n + 1)

    def add(self, i: int) -> None:
        while i < len(self.tree):
            self.tree[i] += 1
            i += i & -i

    def prefix(self, i: int) -> int:
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total


class EndIndex:
    """Answers ``count_ge(p, t) = #{l <= p : l + x_l >= t}`` for stage splits.

    Every query a stage needs, ``(a_{i-1}, a_i)``, ``(a_{i-2}, a_i)`` and
    ``(a_{i-2}, a_{i-1})``, is answered up front by one sweep over thresholds
    in decreasing order, inserting nodes into a Fenwick tree keyed by index.
    That is O((n + m) log n) overall.  Other queries fall back to a scan.
    """

    def __init__(self, f: NirForm, anchors: tuple[int, ...]):
        self._form = f
        padded = (0, 0) + tuple(anchors)
        wanted: set[tuple[int, int]] = set()
        for i in range(2, len(anchors) + 1):
            a_2, a_1, a_i = padded[i - 1], padded[i], padded[i + 1]
            wanted.update({(a_1, a_i), (a_2, a_i), (a_2, a_1)})

        by_end = sorted(range(1, f.n + 1), key=f.end, reverse=True)
        tree = _Fenwick(f.n)
        self._answers: dict[tuple[int, int], int] = {}
        pos = 0
        for p, t in sorted(wanted, key=lambda q: -q[1]):
            while pos < len(by_end) and f.end(by_end[pos]) >= t:
                tree.add(by_end[pos])
                pos += 1
            self._answers[(p, t)] = tree.prefix(p)

    def count_ge(self, p: int, t: int) -> int:
        hit = self._answers.get((p, t))
        if hit is None:
            end = self._form.end
            hit = sum(1 for l in range(1, p + 1) if end(l) >= t)
        return hit


def split_bounds_interval(
    c: CliqueSequence, i: int, index: EndIndex | None = None
) -> SplitBoundsInterval:
    """Region sizes of stage ``i`` (``2 <= i <= m``), with ``a_0 = 0``."""
    if not 2 <= i <= c.m:
        raise IndexError(f"stage {i} out of range 2..{c.m}")
    if index is None:
        index = EndIndex(c.form, c.anchors)
    a_i, a_1, a_2 = c.anchor(i), c.anchor(i - 1), c.anchor(i - 2)
    x = a_i - a_1
    y = index.count_ge(a_1, a_i) - index.count_ge(a_2, a_i)
    z = a_1 - a_2 - y
    w = index.count_ge(a_2, a_i)
    u = index.count_ge(a_2, a_1) - w
    v = a_2 - w - u
    return SplitBoundsInterval(x, y, z, w, u, v)


def _heaviside(t: int) -> int:
    return 1 if t >= 0 else 0


def split_bounds_naive(c: CliqueSequence, f: NirForm, i: int) -> SplitBoundsInterval:
    """Direct Heaviside sums over ``l``; O(n) per call, kept for cross-checks."""
    if not 2 <= i <= c.m:
        raise IndexError(f"stage {i} out of range 2..{c.m}")
    a_i, a_1, a_2 = c.anchor(i), c.anchor(i - 1), c.anchor(i - 2)
    end = f.end
    x = a_i - a_1
    y = sum(_heaviside(end(l) - a_i) for l in range(a_2 + 1, a_1 + 1))
    z = a_1 - a_2 - y
    w = sum(_heaviside(end(l) - a_i) for l in range(1, a_2 + 1))
    u = sum(_heaviside(end(l) - a_1) * _heaviside(a_i - end(l) - 1) for l in range(1, a_2 + 1))
    v = a_2 - w - u
    return SplitBoundsInterval(x, y, z, w, u, v)


def region_members(c: CliqueSequence, i: int) -> dict[str, tuple[int, ...]]:
    """The six regions of stage ``i`` as node sets."""
    f = c.form
    a_i, a_1, a_2 = c.anchor(i), c.anchor(i - 1), c.anchor(i - 2)
    end = f.end
    mid = range(a_2 + 1, a_1 + 1)
    low = range(1, a_2 + 1)
    return {
        "x": tuple(range(a_1 + 1, a_i + 1)),
        "y": tuple(l for l in mid if end(l) >= a_i),
        "z": tuple(l for l in mid if end(l) < a_i),
        "w": tuple(l for l in low if end(l) >= a_i),
        "u": tuple(l for l in low if a_1 <= end(l) < a_i),
        "v": tuple(l for l in low if end(l) < a_1),
    }


def _options(b: SplitBoundsInterval):
    y_max, z_max, w_max, u_max, v_max = b.y_max, b.z_max, b.w_max, b.u_max, b.v_max

    # x' = y + w, recurse to f_{i-1}(q, y + z, w + u)
    def options(q, xp):
        for y in range(min(y_max, xp) + 1):
            w = xp - y
            if w > w_max:
                continue
            for z in range(z_max + 1):
                rest = q - xp - z
                if rest < 0:
                    break
                for u in range(min(u_max, rest) + 1):
                    v = rest - u
                    if v <= v_max:
                        yield (y, z, w, u, v), y + z, w + u

    return options


def _stages(c: CliqueSequence) -> list[Stage]:
    index = EndIndex(c.form, c.anchors)
    stages: list[Stage] = [None, Stage(1, c.size(1), 0, c.size(1))]  # type: ignore[list-item]
    for i in range(2, c.m + 1):
        b = split_bounds_interval(c, i, index)
        stages.append(Stage(i, b.x_max, b.xp_max, c.size(i), _options(b)))
    return stages


def build_interval_table(f: NirForm, k: int, connected: bool = False) -> DpTable:
    cq = maximal_cliques(f)
    return build_table(cq, _stages(cq), k, connected)


def _check_k(f: NirForm, k: int) -> None:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > f.n:
        raise ValueError(f"k exceeds n ({k} > {f.n})")


def solve_interval(f: NirForm, k: int, connected: bool = False) -> ClusterSolution:
    """Densest ``k``-subgraph of an interval graph in NIR form.

    Raises:
        ValueError: ``k`` is negative or exceeds ``n``.
    """
    _check_k(f, k)
    if k == 0:
        return empty_solution(0, connected, "interval")
    started = time.perf_counter_ns()
    table = build_interval_table(f, k, connected)
    return solution_from_table(table, f, k, "interval", started)


def solve_interval_all(
    f: NirForm, connected: bool = False, strict: bool = True
) -> list[ClusterSolution]:
    """Solutions for every ``k`` in ``0..n`` from a single table.

    ``strict`` is passed on to :func:`~kcluster.dp.solution_from_table`.
    """
    table = build_interval_table(f, f.n, connected)
    return [empty_solution(0, connected, "interval")] + [
        solution_from_table(table, f, k, "interval", strict=strict)
        for k in range(1, f.n + 1)
    ]


def reconstruct_interval(table: DpTable, state: tuple[int, int, int]) -> tuple[int, ...]:
    return table.reconstruct(state)


def dp_value_interval(
    c: CliqueSequence, i: int, j: int, x: int, xp: int, connected: bool = False
):
    """Evaluate ``f_i(j, x, x')`` top-down straight from the recurrence.

    Uses the naive Heaviside sums; cross-checks :func:`build_table`.
    """
    f_form = c.form

    @lru_cache(maxsize=None)
    def f(i, j, x, xp):
        if i == 1:
            return comb2(j) if xp == 0 and x == j <= c.size(1) else NEG_INF
        b = split_bounds_naive(c, f_form, i)
        if not (0 <= x <= b.x_max and 0 <= xp <= b.xp_max and x + xp <= j):
            return NEG_INF
        if x + xp == j <= c.size(i):
            return comb2(j)
        best = NEG_INF
        for y in range(b.y_max + 1):
            for w in range(b.w_max + 1):
                if y + w != xp:
                    continue
                if connected and x > 0 and y + w < 1:
                    continue
                for z in range(b.z_max + 1):
                    for u in range(b.u_max + 1):
                        v = j - x - y - z - w - u
                        if not 0 <= v <= b.v_max:
                            continue
                        sub = f(i - 1, j - x, y + z, w + u)
                        if sub is NEG_INF:
                            continue
                        val = sub + comb2(x) + x * (y + w)
                        if best is NEG_INF or val > best:
                            best = val
        return best

    return f(i, j, x, xp)
