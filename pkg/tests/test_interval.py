from itertools import combinations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import K5, P3, STAR, form, reaches, stair_reaches
from kcluster.clique_structure import maximal_cliques
from kcluster.dp import NEG_INF
from kcluster.errors import ReconstructionError
from kcluster.interval import (
    EndIndex,
    build_interval_table,
    dp_value_interval,
    reconstruct_interval,
    region_members,
    solve_interval,
    solve_interval_all,
    split_bounds_interval,
    split_bounds_naive,
)
from kcluster.interval_model import edge_count
from kcluster.oracle import brute_force_kcluster, connectivity_check
from kcluster.proper import solve_proper_all

# Smallest instance found by the fuzz harness where the interval recurrence
# overestimates: the k=7 optimum is 11, the recurrence reports 12.
OVERESTIMATE = form(3, 2, 2, 2, 4, 0, 2, 1, 0)


def bounds_tuple(b):
    return (b.x_max, b.y_max, b.z_max, b.w_max, b.u_max, b.v_max)


def test_star_split():
    b = split_bounds_interval(maximal_cliques(STAR), 3)
    # [DERIVED] regions {4}, {}, {3}, {1}, {}, {2}
    assert bounds_tuple(b) == (1, 0, 1, 1, 0, 1)


def test_path_split():
    b = split_bounds_interval(maximal_cliques(P3), 2)
    # node 1 stops short of row 3, so it lands in the z region
    assert bounds_tuple(b) == (1, 1, 1, 0, 0, 0)


def test_split_index_range():
    c = maximal_cliques(STAR)
    for i in (1, 4):
        with pytest.raises(IndexError):
            split_bounds_interval(c, i)


def region_sets(c, i):
    q, q1, q2 = (set(c.members(t)) for t in (i, i - 1, i - 2))
    g = set(range(1, c.anchor(i) + 1))
    return {
        "x": q - q1,
        "y": (q & q1) - q2,
        "z": q1 - q - q2,
        "w": q & q2,
        "u": (q1 & q2) - q,
        "v": g - q - q1,
    }


@given(reaches(min_n=2, max_n=10))
def test_regions_match_set_algebra(f):
    c = maximal_cliques(f)
    index = EndIndex(f, c.anchors)
    for i in range(2, c.m + 1):
        fast = split_bounds_interval(c, i, index)
        assert fast == split_bounds_naive(c, f, i) == split_bounds_interval(c, i)
        assert fast.total == c.anchor(i)
        assert min(bounds_tuple(fast)) >= 0
        if i == 2:
            assert fast.w_max == fast.u_max == fast.v_max == 0
        regions = region_members(c, i)
        expected = region_sets(c, i)
        for name, nodes in regions.items():
            assert set(nodes) == expected[name]
            assert len(nodes) == getattr(fast, f"{name}_max")


def test_base_stage_value():
    c = maximal_cliques(K5)
    assert dp_value_interval(c, 1, 2, 2, 0) == 1  # [BASE CASE] C(2,2)


def test_more_nodes_than_prefix_is_infeasible():
    c = maximal_cliques(STAR)
    assert all(
        dp_value_interval(c, 1, 3, x, xp) is NEG_INF for x in range(4) for xp in range(4 - x)
    )


def test_star_values():
    assert solve_interval(STAR, 3).value == brute_force_kcluster(STAR, 3).value == 2  # [DERIVED]
    # ties between leaf 2 and leaf 3 go to the lexicographically smallest split
    assert solve_interval(STAR, 3).nodes == (1, 2, 4)
    sol = solve_interval(STAR, 2, connected=True)
    assert sol.value == 1 and 1 in sol.nodes and connectivity_check(STAR, sol.nodes)


def test_complete_graph():
    assert solve_interval(K5, 4).value == 6  # [TRIVIAL] C(4,2)
    assert solve_interval(K5, 3).nodes == (3, 4, 5)


def test_edge_cases():
    assert solve_interval(STAR, 0).nodes == ()
    with pytest.raises(ValueError, match="k exceeds n"):
        solve_interval(STAR, 5)
    table = build_interval_table(form(0, 0), 2, connected=True)
    with pytest.raises(ReconstructionError):
        reconstruct_interval(table, (2, 1, 0))
    assert not solve_interval(form(0, 0), 2, connected=True).feasible


def test_recurrence_overestimates_on_known_instance():
    # the harness' minimized counterexample; values are exhaustive
    assert brute_force_kcluster(OVERESTIMATE, 7).value == 11
    table = build_interval_table(OVERESTIMATE, 7, connected=False)
    assert table.terminal(7)[0] == 12
    with pytest.raises(ReconstructionError, match="no node set realizes the DP value 12"):
        solve_interval(OVERESTIMATE, 7)
    loose = solve_interval_all(OVERESTIMATE, strict=False)[7]
    assert loose.value == 12 and loose.nodes == () and not loose.sound


@given(reaches(max_n=8), st.booleans())
def test_matches_oracle(f, connected):
    for k, sol in enumerate(solve_interval_all(f, connected)):
        ref = brute_force_kcluster(f, k, connected)
        assert sol.value == ref.value
        assert sol.sound
        if connected and sol.feasible:
            assert connectivity_check(f, sol.nodes)


@given(stair_reaches(max_n=8), st.booleans())
def test_agrees_with_proper_solver(f, connected):
    a = [s.value for s in solve_interval_all(f, connected)]
    b = [s.value for s in solve_proper_all(f, connected)]
    assert a == b


@given(reaches(max_n=7), st.booleans())
def test_table_matches_direct_recursion(f, connected):
    c = maximal_cliques(f)
    table = build_interval_table(f, f.n, connected)
    for i in range(1, c.m + 1):
        for j in range(f.n + 1):
            for x in range(j + 1):
                for xp in range(j - x + 1):
                    assert table.value(i, j, x, xp) == dp_value_interval(c, i, j, x, xp, connected)


@given(reaches(max_n=8))
def test_value_grows_with_k(f):
    vals = [s.value for s in solve_interval_all(f)]
    assert vals == sorted(vals)


@given(reaches(min_n=2, max_n=8))
def test_witness_exchange_within_region(f):
    # swapping a chosen node for an unchosen one of the same region, when
    # neither lies in a later clique, never changes the edge count
    c = maximal_cliques(f)
    for k in range(2, f.n):
        nodes = set(solve_interval(f, k).nodes)
        value = edge_count(f, nodes)
        for i in range(2, c.m + 1):
            later = set().union(*(set(c.members(t)) for t in range(i + 1, c.m + 1)))
            for region in region_members(c, i).values():
                free = [v for v in region if v not in later]
                for a, b in combinations(free, 2):
                    if (a in nodes) == (b in nodes):
                        continue
                    if not _same_neighbors_outside(f, a, b, nodes):
                        continue
                    swapped = nodes ^ {a, b}
                    assert edge_count(f, swapped) == value


def _same_neighbors_outside(f, a, b, nodes):
    rest = nodes - {a, b}
    return {v for v in rest if f.adjacent(a, v)} == {v for v in rest if f.adjacent(b, v)}
