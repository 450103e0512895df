from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from kcluster.interval_model import IntervalRealization, NirForm

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def form(*reach):
    return NirForm(tuple(reach))


K3 = form(2, 1, 0)
K5 = form(4, 3, 2, 1, 0)
P3 = form(1, 1, 0)
P4 = form(1, 1, 1, 0)
STAR = form(3, 0, 0, 0)  # center 1, leaves 2..4
TWO_TRIANGLES = form(2, 1, 0, 2, 1, 0)


@st.composite
def reaches(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    return NirForm(tuple(draw(st.integers(0, n - i)) for i in range(1, n + 1)))


@st.composite
def stair_reaches(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    reach, end = [], 0
    for i in range(1, n + 1):
        end = draw(st.integers(max(i, end), n))
        reach.append(end - i)
    return NirForm(tuple(reach))


@st.composite
def realizations(draw, min_n=1, max_n=10, span=6):
    """Integer/half-integer intervals on a tiny range, so ties are everywhere."""
    n = draw(st.integers(min_n, max_n))
    coord = st.integers(0, 2 * span).map(lambda t: Fraction(t, 2))
    pairs = []
    for _ in range(n):
        a, b = draw(coord), draw(coord)
        pairs.append((min(a, b), max(a, b)))
    return IntervalRealization(tuple(pairs))


@st.composite
def proper_realizations(draw, min_n=1, max_n=10, span=8):
    n = draw(st.integers(min_n, max_n))
    unit = draw(st.integers(0, 3))
    lefts = draw(st.lists(st.integers(0, span), min_size=n, max_size=n))
    return IntervalRealization.from_pairs((a, a + unit) for a in lefts)


# Acceptance criteria report, printed once at the end of the session.
ACCEPTANCE_LINES: list[str] = []


def record(criterion, passed, detail):
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
