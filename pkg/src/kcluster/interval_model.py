"""Interval realizations and their normal (NIR / SNIR) forms.

A normal form on ``n`` nodes is a reach vector ``x_1..x_n``.  Node ``i`` stands
for the half-open interval ``[i-1, i+x_i)``, so two nodes ``j < i`` are adjacent
exactly when ``j + x_j >= i``.  The lower-triangular 0/1 matrix of those
adjacencies is never stored; :func:`nir_entry` computes entries on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotProperError, ParseError, StructureError

__all__ = [
    "IntervalRealization",
    "NirForm",
    "SnirForm",
    "parse_realization",
    "format_realization",
    "to_nir",
    "to_snir",
    "is_proper",
    "containment_witness",
    "nir_entry",
    "edge_count",
    "intervals_intersect",
]


@dataclass(frozen=True)
class IntervalRealization:
    """Closed intervals ``[left, right]`` with exact rational endpoints.

    Node ``i`` (1-based) is ``intervals[i - 1]``.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.intervals:
            raise ValueError("a realization needs at least one interval")
        for idx, (left, right) in enumerate(self.intervals, start=1):
            if left > right:
                raise ValueError(f"interval {idx} has left > right")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, object]]) -> IntervalRealization:
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in pairs))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def adjacent(self, u: int, v: int) -> bool:
        """Closed-interval intersection test for input nodes ``u != v``."""
        return intervals_intersect(self.intervals[u - 1], self.intervals[v - 1])


def intervals_intersect(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


@dataclass(frozen=True)
class NirForm:
    """Reach vector of a normal interval representation.

    ``reach[i - 1]`` is ``x_i``, the number of later nodes meeting node ``i``.
    """

    reach: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.reach)
        if n == 0:
            raise StructureError("a normal form needs at least one node")
        for i, x in enumerate(self.reach, start=1):
            if x < 0 or i + x > n:
                raise StructureError(f"reach x_{i}={x} out of range for n={n}")

    @classmethod
    def of(cls, reach: Iterable[int]) -> NirForm:
        return cls(tuple(int(x) for x in reach))

    @property
    def n(self) -> int:
        return len(self.reach)

    def end(self, i: int) -> int:
        """Last row reached by the chain under node ``i`` (``i + x_i``)."""
        return i + self.reach[i - 1]

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if u > v:
            u, v = v, u
        return u + self.reach[u - 1] >= v

    def neighbors(self, v: int) -> list[int]:
        lower = [j for j in range(1, v) if j + self.reach[j - 1] >= v]
        return lower + list(range(v + 1, v + self.reach[v - 1] + 1))

    def is_stair(self) -> bool:
        """True iff right endpoints ``i + x_i`` never decrease."""
        ends = [i + x for i, x in enumerate(self.reach, start=1)]
        return all(a <= b for a, b in zip(ends, ends[1:]))

    def intervals(self) -> list[tuple[int, int]]:
        """Half-open integer intervals ``(i-1, i+x_i)`` in node order."""
        return [(i - 1, i + x) for i, x in enumerate(self.reach, start=1)]

    def dense(self) -> list[list[int]]:
        """Materialize the lower-triangular 0/1 matrix (inspection only)."""
        n = self.n
        return [[nir_entry(self, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


@dataclass(frozen=True)
class SnirForm(NirForm):
    """A normal form whose right endpoints are non-decreasing."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_stair():
            raise StructureError("right endpoints i + x_i must be non-decreasing")


def parse_realization(text: str) -> IntervalRealization:
    """Parse the instance text format.

    First significant line is ``n``, then ``n`` lines ``left right``.  Endpoints
    are integers or rationals ``p/q``.  Lines starting with ``#`` and blank
    lines are ignored.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty instance: missing node count")

    lineno, head = rows[0]
    if len(head) != 1:
        raise ParseError("expected a single node count", lineno)
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(f"node count {head[0]!r} is not an integer", lineno) from None
    if n <= 0:
        raise ParseError("node count must be at least 1", lineno)

    body = rows[1:]
    if len(body) < n:
        last = body[-1][0] if body else lineno
        raise ParseError(f"expected {n} intervals, found {len(body)}", last)
    if len(body) > n:
        raise ParseError(f"unexpected extra content after {n} intervals", body[n][0])

    intervals = []
    for lineno, fields in body:
        if len(fields) != 2:
            raise ParseError("expected 'left right'", lineno)
        try:
            left, right = (_parse_coordinate(t) for t in fields)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coordinate in {' '.join(fields)!r}", lineno) from None
        if left > right:
            raise ParseError("left > right", lineno)
        intervals.append((left, right))
    return IntervalRealization(tuple(intervals))


def _parse_coordinate(token: str) -> Fraction:
    # Fraction() also accepts decimals like "1.5"; the format only allows p/q and integers.
    if any(c in token for c in ".eE_") or token.count("/") > 1:
        raise ValueError(token)
    return Fraction(token)


def format_realization(r: IntervalRealization) -> str:
    lines = [str(r.n)]
    lines.extend(f"{left} {right}" for left, right in r.intervals)
    return "\n".join(lines) + "\n"


def to_nir(r: IntervalRealization) -> tuple[NirForm, tuple[int, ...]]:
    """Convert a realization to NIR form.

    Returns the form and ``node_order`` where ``node_order[p - 1]`` is the input
    index of NIR node ``p``.

    Endpoints are ordered combinatorially: by coordinate, left endpoints before
    right endpoints on ties (touching closed intervals still meet), then by
    input index.  Node ``p`` starts at ``p - 1`` and its right endpoint snaps up
    to the next left endpoint, i.e. to the number of left endpoints preceding it.
    """
    return _convert(r)


def to_snir(r: IntervalRealization) -> tuple[SnirForm, tuple[int, ...]]:
    """Convert a proper realization to SNIR form.

    Raises:
        NotProperError: some interval strictly contains another.
    """
    witness = containment_witness(r)
    if witness is not None:
        raise NotProperError(witness)
    form, order = _convert(r)
    return SnirForm(form.reach), order


def _convert(r: IntervalRealization) -> tuple[NirForm, tuple[int, ...]]:
    n = r.n
    events = []
    for idx, (left, right) in enumerate(r.intervals, start=1):
        events.append((left, 0, idx))
        events.append((right, 1, idx))
    events.sort()

    rank: dict[int, int] = {}
    reach = [0] * n
    lefts_seen = 0
    for _, kind, idx in events:
        if kind == 0:
            lefts_seen += 1
            rank[idx] = lefts_seen
        else:
            p = rank[idx]
            reach[p - 1] = lefts_seen - p
    order = [0] * n
    for idx, p in rank.items():
        order[p - 1] = idx
    return NirForm(tuple(reach)), tuple(order)


def containment_witness(r: IntervalRealization) -> tuple[int, int] | None:
    """Find a strict containment, or ``None`` if the realization is proper.

    The witness is ``(container, contained)`` in 1-based input indices: the
    first container in left-endpoint order, paired with its innermost
    (smallest right endpoint, then largest left endpoint) contained interval.
    """
    ivs = r.intervals
    order = sorted(range(len(ivs)), key=lambda t: (ivs[t][0], -ivs[t][1], t))
    holder = None
    container = None
    for t in order:
        if holder is not None and ivs[t][1] <= ivs[holder][1] and ivs[t] != ivs[holder]:
            container = holder
            break
        if holder is None or ivs[t][1] > ivs[holder][1]:
            holder = t
    if container is None:
        return None

    outer = ivs[container]
    inside = [
        t
        for t in range(len(ivs))
        if outer[0] <= ivs[t][0] and ivs[t][1] <= outer[1] and ivs[t] != outer
    ]
    inner = min(inside, key=lambda t: (ivs[t][1], -ivs[t][0], t))
    return container + 1, inner + 1


def is_proper(r: IntervalRealization) -> bool:
    return containment_witness(r) is None


def nir_entry(f: NirForm, i: int, j: int) -> int:
    """Entry ``(i, j)`` of the implied NIR matrix."""
    n = f.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"matrix index ({i}, {j}) out of range for n={n}")
    return 1 if i > j and f.reach[j - 1] + j >= i else 0


def edge_count(f: NirForm, nodes: Iterable[int]) -> int:
    """Number of edges induced by ``nodes``."""
    chosen = sorted(set(nodes))
    if chosen and not (1 <= chosen[0] and chosen[-1] <= f.n):
        raise IndexError(f"node index out of range for n={f.n}")
    total = 0
    for a, j in enumerate(chosen):
        end = j + f.reach[j - 1]
        for i in chosen[a + 1 :]:
            if i > end:
                break
            total += 1
    return total


def relabel(nodes: Sequence[int], node_order: Sequence[int]) -> list[int]:
    """Map NIR node indices back to input indices, sorted."""
    return sorted(node_order[p - 1] for p in nodes)
