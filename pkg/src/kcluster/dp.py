"""Stage-by-stage dynamic program shared by the proper and interval solvers.

Both recurrences have the same skeleton.  ``f_i(j, x, x')`` is the best edge
count of a ``j``-subset of ``G_i`` with exactly ``x`` nodes of
``Q_i \\ Q_{i-1}`` and ``x'`` nodes of ``Q_i & Q_{i-1}``.  Either every chosen
node lies in ``Q_i`` (value ``C(j, 2)``), or the value is

    f_{i-1}(j - x, r, r') + C(x, 2) + x * x'

maximized over a region split that the concrete solver enumerates.  The split
only depends on ``q = j - x`` and ``x'``, so the inner maximum is tabulated
once per ``(q, x')`` and shared by every ``x``.
"""

from __future__ import annotations

import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .clique_structure import CliqueSequence
from .errors import ReconstructionError
from .interval_model import NirForm, edge_count

__all__ = [
    "NEG_INF",
    "BASE",
    "Stage",
    "DpTable",
    "ClusterSolution",
    "build_table",
    "comb2",
]


class _Infeasible:
    """The -inf value of an infeasible DP state.

    Deliberately supports no arithmetic or ordering.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "NEG_INF"

    def __reduce__(self) -> str:
        return "NEG_INF"


NEG_INF = _Infeasible()


class _Base:
    __slots__ = ()

    def __repr__(self) -> str:
        return "BASE"


# Backlink of a state resolved by the all-inside-Q_i branch.
BASE = _Base()


@contextmanager
def _deep_recursion(depth: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, depth))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def comb2(x: int) -> int:
    return x * (x - 1) // 2


# options(q, x') -> (split tuple, r, r') for each admissible region split
Options = Callable[[int, int], Iterator[tuple[tuple[int, ...], int, int]]]


@dataclass(frozen=True)
class Stage:
    """What the engine needs to know about clique ``i``."""

    index: int
    x_max: int  # |Q_i \ Q_{i-1}|
    xp_max: int  # |Q_i & Q_{i-1}|
    clique_size: int
    options: Options | None = None  # None for the first stage


@dataclass
class DpTable:
    """Memo of ``f_i(j, x, x')`` with one backlink per finite state.

    ``values[i][(j, x, xp)]`` holds an ``int`` or :data:`NEG_INF`;
    ``links[i][(j, x, xp)]`` holds :data:`BASE` or the argmax split tuple.
    Index 0 is unused so stages are addressed 1..m.
    """

    cliques: CliqueSequence
    k: int
    connected: bool
    stages: list[Stage]
    values: list[dict[tuple[int, int, int], object]] = field(default_factory=list)
    links: list[dict[tuple[int, int, int], object]] = field(default_factory=list)
    prev_keys: list[dict[tuple[int, int, int], tuple[int, int, int]]] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.stages) - 1

    def value(self, i: int, j: int, x: int, xp: int) -> object:
        """Stored ``f_i(j, x, x')``; out-of-range states are infeasible."""
        if not 1 <= i <= self.m:
            raise IndexError(f"stage {i} out of range for m={self.m}")
        return self.values[i].get((j, x, xp), NEG_INF)

    def terminal_states(self, j: int) -> tuple[object, list[tuple[int, int, int]]]:
        """``f_m(j)`` and every maximizing ``(j, x, x')``.

        States are listed with ``x`` then ``x'`` descending, so ties go to
        nodes of later cliques, in line with the latest-end-first choice
        made inside each block.
        """
        if j > self.k:
            raise ValueError(f"table was built for j <= {self.k}")
        st = self.stages[self.m]
        best: object = NEG_INF
        args: list[tuple[int, int, int]] = []
        for x in range(min(st.x_max, j), -1, -1):
            for xp in range(min(st.xp_max, j - x), -1, -1):
                v = self.values[self.m].get((j, x, xp), NEG_INF)
                if v is NEG_INF:
                    continue
                if best is NEG_INF or v > best:
                    best, args = v, [(j, x, xp)]
                elif v == best:
                    args.append((j, x, xp))
        return best, args

    def terminal(self, j: int) -> tuple[object, tuple[int, int, int] | None]:
        """``f_m(j)`` and the first of :meth:`terminal_states`."""
        best, args = self.terminal_states(j)
        return best, (args[0] if args else None)

    def trace(self, state: tuple[int, int, int]) -> tuple[dict[int, int], int, tuple[int, int, int]]:
        """Follow backlinks from stage ``m``.

        Returns the number of nodes taken from each block ``Q_i \\ Q_{i-1}``
        above the base stage, the base stage index and the base state.
        """
        i = self.m
        counts: dict[int, int] = {}
        while True:
            if self.values[i].get(state, NEG_INF) is NEG_INF:
                raise ReconstructionError(f"state {state} at stage {i} is infeasible")
            link = self.links[i].get(state)
            if link is BASE:
                return counts, i, state
            if link is None:
                raise ReconstructionError(f"dangling backlink at stage {i}, state {state}")
            counts[i] = state[1]
            state = self.prev_keys[i][state]
            i -= 1
            if i < 1:
                raise ReconstructionError("backlink chain fell below the first stage")

    def argmax_moves(self, i: int, state: tuple[int, int, int]) -> Iterator[tuple[int, int, int]]:
        """Predecessor states of every split attaining ``f_i(state)``.

        The stored backlink comes first (splits are enumerated in the same
        lexicographic order); repeated predecessors are skipped.
        """
        j, x, xp = state
        target = self.values[i][state] - comb2(x) - x * xp
        prev = self.values[i - 1]
        seen = set()
        for _, r, rp in self.stages[i].options(j - x, xp):
            key = (j - x, r, rp)
            if key not in seen and prev.get(key, NEG_INF) == target:
                seen.add(key)
                yield key

    def reconstruct(self, state: tuple[int, int, int], max_expansions: int = 200_000) -> tuple[int, ...]:
        """Materialize a node set realizing the value of a stage-``m`` state.

        Inside every block ``Q_i \\ Q_{i-1}``, and inside ``Q_i & Q_{i-1}`` at
        the base stage, nodes are taken by decreasing chain end ``v + x_v``,
        then decreasing index: a node ending later belongs to every later
        clique the other one belongs to.

        The recurrence only tracks how many chosen nodes of ``G_{i-1}`` sit in
        ``Q_i``, not which ones, so a tied backlink may lead to a set that
        cannot supply them.  The walk therefore carries those counts down as
        requirements ``#{chosen v in G_{i-1} : v + x_v >= a_t} >= need`` and
        backtracks over tied splits (stored backlink first) when a
        requirement becomes unreachable.

        Raises:
            ReconstructionError: the state is infeasible, or no tied path
                satisfies the requirements within ``max_expansions`` steps.
        """
        i = self.m
        if self.values[i].get(state, NEG_INF) is NEG_INF:
            raise ReconstructionError(f"state {state} at stage {i} is infeasible")
        ctx = _Materializer(self.cliques)
        failed: set[tuple] = set()
        budget = [max_expansions]

        def visit(i: int, state: tuple[int, int, int], needs: tuple[tuple[int, int], ...]):
            memo_key = (i, state, needs)
            if memo_key in failed:
                return None
            budget[0] -= 1
            if budget[0] < 0:
                raise ReconstructionError("reconstruction search budget exhausted")
            j, x, xp = state
            link = self.links[i].get(state)
            picked = ctx.top_block(i, x)
            if link is BASE:
                picked = picked + ctx.top_shared(i, xp)
                if all(ctx.count_ending(picked, a) >= need for a, need in needs):
                    return picked
                failed.add(memo_key)
                return None
            if link is None:
                raise ReconstructionError(f"dangling backlink at stage {i}, state {state}")

            rest = []
            for a, need in needs:
                need -= ctx.count_ending(picked, a)
                if need > 0:
                    if need > min(xp, ctx.shared_ending(i, a)):
                        failed.add(memo_key)
                        return None
                    rest.append((a, need))
            if x > 0 and xp > 0:
                rest.append((ctx.anchor(i), xp))
            rest_key = tuple(sorted(rest))
            for prev_state in self.argmax_moves(i, state):
                below = visit(i - 1, prev_state, rest_key)
                if below is not None:
                    return picked + below
            failed.add(memo_key)
            return None

        with _deep_recursion(4 * self.m + 100):
            chosen = visit(i, state, ())
        if chosen is None:
            raise ReconstructionError(f"no tied path realizes state {state}")
        return tuple(sorted(chosen))


class _Materializer:
    """Greedy node choice inside blocks and shared parts of cliques."""

    def __init__(self, cliques: CliqueSequence):
        self.cq = cliques
        self.form = cliques.form
        self._blocks: dict[int, list[int]] = {}
        self._shared: dict[int, list[int]] = {}

    def _rank(self, v: int) -> tuple[int, int]:
        return (self.form.end(v), v)

    def anchor(self, i: int) -> int:
        return self.cq.anchor(i)

    def top_block(self, i: int, count: int) -> list[int]:
        if i not in self._blocks:
            self._blocks[i] = sorted(self.cq.block(i), key=self._rank, reverse=True)
        nodes = self._blocks[i]
        if count > len(nodes):
            raise ReconstructionError(f"block {i} has fewer than {count} nodes")
        return nodes[:count]

    def _shared_sorted(self, i: int) -> list[int]:
        if i not in self._shared:
            prev_anchor = self.cq.anchor(i - 1)
            shared = [v for v in self.cq.members(i) if v <= prev_anchor]
            self._shared[i] = sorted(shared, key=self._rank, reverse=True)
        return self._shared[i]

    def top_shared(self, i: int, count: int) -> list[int]:
        nodes = self._shared_sorted(i)
        if count > len(nodes):
            raise ReconstructionError(f"Q_{i} & Q_{i - 1} has fewer than {count} nodes")
        return nodes[:count]

    def shared_ending(self, i: int, a: int) -> int:
        """Nodes of ``Q_i & Q_{i-1}`` whose chain reaches row ``a``."""
        return self.count_ending(self._shared_sorted(i), a)

    def count_ending(self, nodes: list[int], a: int) -> int:
        end = self.form.end
        return sum(1 for v in nodes if end(v) >= a)


def build_table(cliques: CliqueSequence, stages: list[Stage], k: int, connected: bool) -> DpTable:
    """Fill ``f_i(j, x, x')`` for every stage and every ``j <= k``."""
    table = DpTable(cliques, k, connected, stages)
    table.values.append({})
    table.links.append({})
    table.prev_keys.append({})

    first = stages[1]
    vals: dict[tuple[int, int, int], object] = {}
    links: dict[tuple[int, int, int], object] = {}
    for j in range(min(k, first.x_max) + 1):
        vals[(j, j, 0)] = comb2(j)
        links[(j, j, 0)] = BASE
    table.values.append(vals)
    table.links.append(links)
    table.prev_keys.append({})

    for st in stages[2:]:
        prev = table.values[-1]
        vals, links, back = {}, {}, {}

        # inner[(q, xp)] = (best f_{i-1} value, split, prev key)
        inner: dict[tuple[int, int], tuple[int, tuple[int, ...], tuple[int, int, int]]] = {}
        for q in range(k + 1):
            for xp in range(min(st.xp_max, q) + 1):
                best = None
                for split, r, rp in st.options(q, xp):
                    v = prev.get((q, r, rp), NEG_INF)
                    if v is NEG_INF:
                        continue
                    if best is None or v > best[0]:
                        best = (v, split, (q, r, rp))
                if best is not None:
                    inner[(q, xp)] = best

        for j in range(k + 1):
            for x in range(min(st.x_max, j) + 1):
                gain_x = comb2(x)
                for xp in range(min(st.xp_max, j - x) + 1):
                    key = (j, x, xp)
                    if x + xp == j:
                        # j <= |Q_i| holds automatically here
                        vals[key] = comb2(j)
                        links[key] = BASE
                        continue
                    if connected and x > 0 and xp == 0:
                        continue
                    hit = inner.get((j - x, xp))
                    if hit is None:
                        continue
                    v, split, prev_key = hit
                    vals[key] = v + gain_x + x * xp
                    links[key] = split
                    back[key] = prev_key
        table.values.append(vals)
        table.links.append(links)
        table.prev_keys.append(back)
    return table


@dataclass(frozen=True)
class ClusterSolution:
    """Outcome of one k-cluster solve.

    ``nodes`` are NIR node indices.  ``value`` is the optimum reported by the
    solver (``None`` when infeasible); ``edges`` is recomputed from ``nodes``.
    """

    k: int
    value: int | None
    nodes: tuple[int, ...]
    edges: int
    connected: bool
    feasible: bool
    method: str
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def sound(self) -> bool:
        """``|nodes| == k`` and the witness realizes the reported value."""
        if not self.feasible:
            return not self.nodes
        return len(self.nodes) == self.k and self.edges == self.value


def solution_from_table(
    table: DpTable,
    f: NirForm,
    k: int,
    method: str,
    started: int | None = None,
    strict: bool = True,
) -> ClusterSolution:
    """Read ``f_m(k)`` off the table and reconstruct a witness.

    With ``strict=False`` a value that no node set realizes is returned with
    an empty witness (so ``sound`` is false) instead of raising; the fuzz
    harness uses this to keep comparing values.
    """
    best, states = table.terminal_states(k)
    stats = {"m": table.m, "states": sum(len(v) for v in table.values)}
    if best is NEG_INF:
        if started is not None:
            stats["elapsed_ns"] = time.perf_counter_ns() - started
        return ClusterSolution(k, None, (), 0, table.connected, False, method, stats)
    # A state's value only constrains counts, so a tied terminal state can
    # occasionally be unrealizable; fall through to the next one.
    error = None
    for state in states:
        try:
            nodes = table.reconstruct(state)
            break
        except ReconstructionError as exc:
            error = exc
    else:
        if strict:
            raise ReconstructionError(
                f"no node set realizes the DP value {best} for k={k} ({error})"
            )
        stats["error"] = str(error)
        return ClusterSolution(k, best, (), 0, table.connected, True, method, stats)
    if started is not None:
        stats["elapsed_ns"] = time.perf_counter_ns() - started
    return ClusterSolution(k, best, nodes, edge_count(f, nodes), table.connected, True, method, stats)


def empty_solution(k: int, connected: bool, method: str) -> ClusterSolution:
    return ClusterSolution(k, 0, (), 0, connected, True, method, {"m": 0, "states": 0})
