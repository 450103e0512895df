"""k-cluster on proper interval graphs (stair-shaped NIR matrices).

Stage ``i`` splits ``G_i`` around the pick ``(a_i, b_i)``.  When
``b_i <= a_{i-2}`` the clique ``Q_i`` still meets ``Q_{i-2}`` and the regions
are ``Q_{i-1} \\ Q_{i-2}``, ``Q_i & Q_{i-2}``, ``Q_{i-1} \\ Q_i`` and the rest;
otherwise they are ``Q_i & Q_{i-1}``, ``Q_{i-1} \\ (Q_i | Q_{i-2})``,
``Q_{i-1} & Q_{i-2}`` and the rest.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .clique_structure import StairSet, maximal_cliques, stairs
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
from .errors import StructureError
from .interval_model import NirForm

__all__ = [
    "SplitBoundsProper",
    "split_bounds_proper",
    "build_proper_table",
    "solve_proper",
    "solve_proper_all",
    "dp_value_proper",
    "reconstruct_proper",
]


@dataclass(frozen=True)
class SplitBoundsProper:
    case_flag: int  # 1 iff Q_i & Q_{i-2} is non-empty
    x_max: int
    y_max: int
    z_max: int
    w_max: int
    u_max: int

    @property
    def total(self) -> int:
        return self.x_max + self.y_max + self.z_max + self.w_max + self.u_max

    @property
    def xp_max(self) -> int:
        """``|Q_i & Q_{i-1}|``."""
        return self.y_max + self.z_max if self.case_flag else self.y_max


def split_bounds_proper(s: StairSet, i: int) -> SplitBoundsProper:
    """Region sizes of stage ``i`` (``2 <= i <= m``), with ``a_0 = 0``."""
    if not 2 <= i <= s.m:
        raise IndexError(f"stage {i} out of range 2..{s.m}")
    a_i, a_1, a_2 = s.a(i), s.a(i - 1), s.a(i - 2)
    b_i, b_1 = s.b(i), s.b(i - 1)
    if a_2 >= b_i:
        return SplitBoundsProper(1, a_i - a_1, a_1 - a_2, a_2 - b_i + 1, b_i - b_1, b_1 - 1)
    return SplitBoundsProper(0, a_i - a_1, a_1 - b_i + 1, b_i - a_2 - 1, a_2 - b_1 + 1, b_1 - 1)


def _options(bounds: SplitBoundsProper):
    y_max, z_max, w_max, u_max = bounds.y_max, bounds.z_max, bounds.w_max, bounds.u_max

    if bounds.case_flag:
        # x' = y + z, recurse to f_{i-1}(q, y, z + w)
        def options(q, xp):
            for y in range(min(y_max, xp) + 1):
                z = xp - y
                if z > z_max:
                    continue
                for w in range(w_max + 1):
                    u = q - xp - w
                    if u < 0:
                        break
                    if u <= u_max:
                        yield (y, z, w, u), y, z + w

    else:
        # x' = y, recurse to f_{i-1}(q, y + z, w)
        def options(q, xp):
            y = xp
            if y > y_max:
                return
            for z in range(z_max + 1):
                for w in range(w_max + 1):
                    u = q - xp - z - w
                    if u < 0:
                        break
                    if u <= u_max:
                        yield (y, z, w, u), y + z, w

    return options


def _stages(s: StairSet) -> list[Stage]:
    stages: list[Stage] = [None, Stage(1, s.size(1), 0, s.size(1))]  # type: ignore[list-item]
    for i in range(2, s.m + 1):
        bounds = split_bounds_proper(s, i)
        stages.append(Stage(i, bounds.x_max, bounds.xp_max, s.size(i), _options(bounds)))
    return stages


def build_proper_table(f: NirForm, k: int, connected: bool = False) -> DpTable:
    s = stairs(f)
    cq = maximal_cliques(s.form)
    return build_table(cq, _stages(s), k, connected)


def _check_k(f: NirForm, k: int) -> None:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > f.n:
        raise ValueError(f"k exceeds n ({k} > {f.n})")


def solve_proper(f: NirForm, k: int, connected: bool = False) -> ClusterSolution:
    """Densest ``k``-subgraph of a proper interval graph in SNIR form.

    Raises:
        ValueError: ``k`` is negative or exceeds ``n``.
        StructureError: ``f`` is not stair-shaped.
    """
    _check_k(f, k)
    if not f.is_stair():
        raise StructureError("solve_proper needs an SNIR form")
    if k == 0:
        return empty_solution(0, connected, "proper")
    started = time.perf_counter_ns()
    table = build_proper_table(f, k, connected)
    return solution_from_table(table, f, k, "proper", started)


def solve_proper_all(
    f: NirForm, connected: bool = False, strict: bool = True
) -> list[ClusterSolution]:
    """Solutions for every ``k`` in ``0..n`` from a single table.

    ``strict`` is passed on to :func:`~kcluster.dp.solution_from_table`.
    """
    table = build_proper_table(f, f.n, connected)
    return [empty_solution(0, connected, "proper")] + [
        solution_from_table(table, f, k, "proper", strict=strict)
        for k in range(1, f.n + 1)
    ]


def reconstruct_proper(table: DpTable, state: tuple[int, int, int]) -> tuple[int, ...]:
    return table.reconstruct(state)


def dp_value_proper(s: StairSet, i: int, j: int, x: int, xp: int, connected: bool = False):
    """Evaluate ``f_i(j, x, x')`` top-down straight from the recurrence.

    No tabulation of the inner maximum; used to cross-check :func:`build_table`.
    Returns an ``int`` or :data:`~kcluster.dp.NEG_INF`.
    """

    @lru_cache(maxsize=None)
    def f(i, j, x, xp):
        if i == 1:
            return comb2(j) if xp == 0 and x == j <= s.size(1) else NEG_INF
        bounds = split_bounds_proper(s, i)
        if not (0 <= x <= bounds.x_max and 0 <= xp <= bounds.xp_max and x + xp <= j):
            return NEG_INF
        if x + xp == j <= s.size(i):
            return comb2(j)
        flag = bounds.case_flag
        best = NEG_INF
        for y in range(bounds.y_max + 1):
            for z in range(bounds.z_max + 1):
                zeta1, zeta2 = z * flag, z * (1 - flag)
                if y + zeta1 != xp:
                    continue
                if connected and x > 0 and y + zeta1 < 1:
                    continue
                for w in range(bounds.w_max + 1):
                    u = j - x - y - z - w
                    if not 0 <= u <= bounds.u_max:
                        continue
                    sub = f(i - 1, j - x, y + zeta2, zeta1 + w)
                    if sub is NEG_INF:
                        continue
                    v = sub + comb2(x) + x * (y + zeta1)
                    if best is NEG_INF or v > best:
                        best = v
        return best

    return f(i, j, x, xp)
