import pytest
from hypothesis import given
import hypothesis.strategies as st

from kcluster.errors import BudgetError
from kcluster.instance_gen import GenSpec, count_canonical, enumerate_canonical, gen_random
from kcluster.interval_model import is_proper, to_snir


def test_single_interval():
    assert gen_random(GenSpec(n=1, seed=99)).n == 1


@given(st.integers(1, 30), st.integers(0, 2**64 - 1), st.sampled_from(["interval", "proper"]))
def test_seed_determines_output(n, seed, cls):
    spec = GenSpec(n=n, cls=cls, seed=seed)
    assert gen_random(spec) == gen_random(spec)


@given(st.integers(1, 30), st.integers(0, 2**32), st.integers(0, 6))
def test_proper_class_converts(n, seed, unit):
    r = gen_random(GenSpec(n=n, cls="proper", seed=seed, unit=unit))
    assert is_proper(r)
    to_snir(r)


def test_coordinates_stay_in_range():
    r = gen_random(GenSpec(n=50, seed=1, lo=3, hi=9))
    assert all(3 <= a <= b <= 9 for a, b in r.intervals)


@pytest.mark.parametrize(
    "kwargs", [dict(n=0), dict(n=2, cls="circle"), dict(n=2, lo=5, hi=1), dict(n=2, unit=-1)]
)
def test_bad_specs(kwargs):
    with pytest.raises(ValueError):
        GenSpec(**kwargs)


def test_small_enumerations():
    assert [f.reach for f in enumerate_canonical(2)] == [(0, 0), (1, 0)]
    assert len(list(enumerate_canonical(3))) == 6  # 3 * 2 * 1


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_size_and_uniqueness(n):
    forms = [f.reach for f in enumerate_canonical(n)]
    assert len(forms) == len(set(forms)) == count_canonical(n)
    assert forms == sorted(forms)


@pytest.mark.parametrize("n", range(1, 7))
def test_proper_filter(n):
    proper = list(enumerate_canonical(n, proper_only=True))
    assert all(f.is_stair() for f in proper)
    assert len(proper) == sum(f.is_stair() for f in enumerate_canonical(n))


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        next(enumerate_canonical(11))
    with pytest.raises(ValueError):
        next(enumerate_canonical(0))
