"""Exhaustive reference solvers.

These stay deliberately simple: subset enumeration, breadth-first search and
textbook Bron-Kerbosch.  :func:`subset_profile` is the one concession to speed,
tabulating every subset bitmask with numpy so the fuzz harness can afford
thousands of instances; it is itself checked against the plain enumerator.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .dp import ClusterSolution
from .errors import BudgetError
from .interval_model import NirForm, edge_count

__all__ = [
    "DEFAULT_MAX_N",
    "PROFILE_MAX_N",
    "OracleReport",
    "brute_force_kcluster",
    "brute_force_cliques",
    "connectivity_check",
    "subset_profile",
    "SubsetProfile",
    "instance_digest",
]

DEFAULT_MAX_N = 24
PROFILE_MAX_N = 22


def instance_digest(f: NirForm) -> str:
    text = " ".join(map(str, f.reach))
    return hashlib.sha1(text.encode()).hexdigest()[:12]


@dataclass
class OracleReport:
    """One DP-versus-oracle comparison."""

    digest: str
    reach: list[int]
    k: int
    connected: bool
    method: str
    oracle_value: int | None
    dp_value: int | None
    dp_witness: list[int]
    oracle_witness: list[int] | None = None
    witness_sound: bool = True
    elapsed_ns: dict[str, int] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.oracle_value == self.dp_value

    def to_json(self) -> dict:
        return {
            "digest": self.digest,
            "reach": self.reach,
            "k": self.k,
            "connected": self.connected,
            "method": self.method,
            "dp_value": self.dp_value,
            "oracle_value": self.oracle_value,
            "agree": self.agree,
            "witness_sound": self.witness_sound,
            "dp_witness": self.dp_witness,
            "oracle_witness": self.oracle_witness,
            "elapsed_ns": self.elapsed_ns,
        }


def connectivity_check(f: NirForm, nodes: Iterable[int]) -> bool:
    """True iff ``nodes`` induce a connected subgraph (empty sets count as connected)."""
    chosen = set(nodes)
    if len(chosen) <= 1:
        return True
    start = min(chosen)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in chosen:
            if u not in seen and f.adjacent(u, v):
                seen.add(u)
                queue.append(u)
    return len(seen) == len(chosen)


def brute_force_kcluster(
    f: NirForm, k: int, connected: bool = False, max_n: int = DEFAULT_MAX_N
) -> ClusterSolution:
    """Maximum edge count over all ``k``-subsets, by enumeration.

    The witness is the lexicographically smallest optimal subset.

    Raises:
        BudgetError: ``n > max_n``.
        ValueError: ``k`` outside ``0..n``.
    """
    n = f.n
    if n > max_n:
        raise BudgetError(f"brute force refused: n={n} exceeds budget {max_n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}")
    started = time.perf_counter_ns()
    best = None
    witness: tuple[int, ...] = ()
    for subset in itertools.combinations(range(1, n + 1), k):
        if connected and not connectivity_check(f, subset):
            continue
        e = edge_count(f, subset)
        if best is None or e > best:
            best, witness = e, subset
    stats = {"elapsed_ns": time.perf_counter_ns() - started}
    if best is None:
        return ClusterSolution(k, None, (), 0, connected, False, "oracle", stats)
    return ClusterSolution(k, best, witness, best, connected, True, "oracle", stats)


def brute_force_cliques(f: NirForm, max_n: int = DEFAULT_MAX_N) -> set[frozenset[int]]:
    """All maximal cliques of the graph, by Bron-Kerbosch on the adjacency relation."""
    n = f.n
    if n > max_n:
        raise BudgetError(f"clique enumeration refused: n={n} exceeds budget {max_n}")
    nbrs = {v: {u for u in range(1, n + 1) if f.adjacent(u, v)} for v in range(1, n + 1)}
    found: set[frozenset[int]] = set()

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.add(frozenset(r))
            return
        for v in list(p):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(1, n + 1)), set())
    return found


@dataclass(frozen=True)
class SubsetProfile:
    """Best edge counts for every ``k``, with and without connectivity.

    ``best[k]`` / ``best_connected[k]`` are ``None`` when no subset qualifies.
    """

    best: tuple[int | None, ...]
    best_connected: tuple[int | None, ...]

    def value(self, k: int, connected: bool) -> int | None:
        return (self.best_connected if connected else self.best)[k]


def subset_profile(f: NirForm, max_n: int = PROFILE_MAX_N) -> SubsetProfile:
    """Tabulate edge counts and connectivity of all ``2^n`` subsets.

    Bit ``v - 1`` of a mask stands for node ``v``.  A subset with at least two
    nodes is connected iff some member is adjacent to the rest and the rest is
    connected (drop a leaf of a spanning tree), so connectivity is filled
    layer by layer in subset size.
    """
    n = f.n
    if n > max_n:
        raise BudgetError(f"subset profile refused: n={n} exceeds budget {max_n}")
    adj = [0] * n
    for v in range(1, n + 1):
        for u in f.neighbors(v):
            adj[v - 1] |= 1 << (u - 1)

    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    card = np.bitwise_count(masks).astype(np.int64)
    edges = np.zeros(size, dtype=np.int64)
    for v in range(n):
        low = masks[: 1 << v]
        edges[1 << v : 1 << (v + 1)] = edges[: 1 << v] + np.bitwise_count(low & adj[v])

    conn = card == 1
    conn[0] = True
    by_card = [np.flatnonzero(card == p) for p in range(n + 1)]
    for p in range(2, n + 1):
        layer = by_card[p]
        hit = np.zeros(layer.size, dtype=bool)
        for v in range(n):
            bit = 1 << v
            has = (layer & bit) != 0
            rest = layer[has] ^ bit
            hit[has] |= conn[rest] & ((rest & adj[v]) != 0)
        conn[layer] = hit

    best: list[int | None] = []
    best_conn: list[int | None] = []
    for p in range(n + 1):
        layer = by_card[p]
        best.append(int(edges[layer].max()))
        ok = layer[conn[layer]]
        best_conn.append(int(edges[ok].max()) if ok.size else None)
    return SubsetProfile(tuple(best), tuple(best_conn))
