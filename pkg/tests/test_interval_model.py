from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import K3, P3, form, proper_realizations, realizations, reaches
from kcluster.errors import NotProperError, ParseError, StructureError
from kcluster.interval_model import (
    IntervalRealization,
    NirForm,
    SnirForm,
    edge_count,
    format_realization,
    is_proper,
    nir_entry,
    parse_realization,
    relabel,
    to_nir,
    to_snir,
)


def iv(*pairs):
    return IntervalRealization.from_pairs(pairs)


def adjacency_preserved(r, f, order):
    pos = {idx: p for p, idx in enumerate(order, start=1)}
    for u, v in combinations(range(1, r.n + 1), 2):
        if r.adjacent(u, v) != f.adjacent(pos[u], pos[v]):
            return False
    return True


# parsing


def test_parse_three_intervals():
    r = parse_realization("3\n0 10\n5 20\n15 25\n")
    assert r.intervals == ((0, 10), (5, 20), (15, 25))  # [TRIVIAL] echo


def test_parse_degenerate_point():
    assert parse_realization("1\n5 5").intervals == ((5, 5),)


def test_parse_rationals_and_comments():
    r = parse_realization("# two nodes\n2\n\n1/2 3/2\n# mid\n-1 0\n")
    assert r.intervals == ((Fraction(1, 2), Fraction(3, 2)), (-1, 0))


@pytest.mark.parametrize(
    "text, message",
    [
        ("2\n0 1\n2 1", "left > right at line 3"),
        ("0\n", "at line 1"),
        ("", "missing node count"),
        ("2\n0 1\n", "expected 2 intervals"),
        ("1\n0 1\n2 3\n", "extra content"),
        ("1\n0 1 2\n", "expected 'left right' at line 2"),
        ("1\n0 x\n", "bad coordinate"),
        ("1\n0 1.5\n", "bad coordinate"),
        ("a\n", "not an integer at line 1"),
    ],
)
def test_parse_errors_name_the_line(text, message):
    with pytest.raises(ParseError, match=message):
        parse_realization(text)


def test_format_roundtrip():
    r = iv((0, Fraction(7, 3)), (1, 1))
    assert parse_realization(format_realization(r)) == r


def test_realization_rejects_reversed():
    with pytest.raises(ValueError):
        iv((2, 1))


# conversion


def test_path_of_three():
    f, order = to_nir(iv((0, 10), (5, 20), (15, 25)))
    assert f.reach == (1, 1, 0)  # [DERIVED] pairwise intersection check below
    assert adjacency_preserved(iv((0, 10), (5, 20), (15, 25)), f, order)


def test_nested_is_complete():
    f, _ = to_nir(iv((0, 9), (1, 8), (2, 7)))
    assert f.reach == (2, 1, 0)  # [TRIVIAL] complete graph


def test_single_node():
    assert to_nir(iv((0, 1)))[0].reach == (0,)


def test_order_follows_left_endpoints():
    f, order = to_nir(iv((5, 6), (0, 1), (0, 2)))
    assert order == (2, 3, 1)
    assert relabel((1, 3), order) == [1, 2]


def test_unit_path_to_snir():
    # touching closed intervals meet, so unit steps of 1 give a path
    r = iv((0, 1), (1, 2), (2, 3), (3, 4))
    s, order = to_snir(r)
    assert isinstance(s, SnirForm)
    assert s.reach == (1, 1, 1, 0)
    assert adjacency_preserved(r, s, order)


def test_overlapping_unit_intervals_form_k4():
    # (0,3) and (3,6) share the point 3
    s, _ = to_snir(iv((0, 3), (1, 4), (2, 5), (3, 6)))
    assert s.reach == (3, 2, 1, 0)


def test_containment_witness():
    with pytest.raises(NotProperError) as exc:
        to_snir(iv((0, 9), (1, 8), (2, 7)))
    assert exc.value.witness == (1, 3)
    assert "interval 1 strictly contains interval 3" in str(exc.value)


def test_identical_intervals_are_proper():
    s, order = to_snir(iv((0, 1), (0, 1)))
    assert s.reach == (1, 0) and order == (1, 2)


def test_shared_left_endpoint_is_containment():
    assert not is_proper(iv((0, 1), (0, 2)))
    assert is_proper(iv((0, 1), (1, 2)))


@given(realizations())
def test_to_nir_preserves_adjacency(r):
    f, order = to_nir(r)
    assert sorted(order) == list(range(1, r.n + 1))
    assert adjacency_preserved(r, f, order)


@given(proper_realizations())
def test_to_snir_is_monotone_and_exact(r):
    s, order = to_snir(r)
    ends = [i + x for i, x in enumerate(s.reach, start=1)]
    assert ends == sorted(ends)
    assert adjacency_preserved(r, s, order)


@given(realizations(max_n=7))
def test_snir_succeeds_iff_no_strict_containment(r):
    ivs = r.intervals
    contained = any(
        a[0] <= b[0] and b[1] <= a[1] and a != b for a in ivs for b in ivs
    )
    if contained:
        with pytest.raises(NotProperError) as exc:
            to_snir(r)
        outer, inner = (ivs[t - 1] for t in exc.value.witness)
        assert outer[0] <= inner[0] and inner[1] <= outer[1] and outer != inner
    else:
        to_snir(r)


# normal forms


@pytest.mark.parametrize("reach", [(), (1,), (0, 2, 0), (-1, 0)])
def test_invalid_reach_rejected(reach):
    with pytest.raises(StructureError):
        NirForm(reach)


def test_snir_rejects_decreasing_ends():
    with pytest.raises(StructureError):
        SnirForm((2, 0, 0))


def test_nir_entries():
    assert nir_entry(P3, 2, 1) == 1  # [TRIVIAL] H(0)
    assert nir_entry(P3, 3, 1) == 0  # [TRIVIAL] H(-1)
    assert nir_entry(P3, 1, 1) == 0  # zero diagonal
    assert nir_entry(P3, 1, 2) == 0  # upper triangle
    with pytest.raises(IndexError):
        nir_entry(P3, 4, 1)


def test_dense_matches_entries():
    assert P3.dense() == [[0, 0, 0], [1, 0, 0], [0, 1, 0]]


def test_edge_count_examples():
    assert edge_count(K3, {1, 2, 3}) == 3  # [TRIVIAL] C(3,2)
    assert edge_count(P3, {1, 2, 3}) == 2  # [DERIVED] adjacency pairs
    assert edge_count(P3, set()) == 0
    with pytest.raises(IndexError):
        edge_count(P3, {4})


@given(reaches())
def test_full_edge_count_is_matrix_weight(f):
    ones = sum(nir_entry(f, i, j) for i in range(1, f.n + 1) for j in range(1, f.n + 1))
    assert edge_count(f, range(1, f.n + 1)) == ones


@given(reaches(), st.data())
def test_edge_count_monotone(f, data):
    big = data.draw(st.sets(st.integers(1, f.n)))
    small = data.draw(st.sets(st.sampled_from(sorted(big)))) if big else set()
    assert edge_count(f, small) <= edge_count(f, big)


def test_neighbors_and_intervals():
    f = form(2, 0, 0)
    assert f.neighbors(1) == [2, 3]
    assert f.intervals() == [(0, 3), (1, 2), (2, 3)]
    assert f.is_stair() is False and P3.is_stair() is True
