from fractions import Fraction

from hypothesis import settings, strategies as st

from dispheres import Point

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

# pinned values are over-weighted: the pattern logic lives at 0 and 1
coordinate = st.one_of(
    st.just(Fraction(0)),
    st.just(Fraction(1)),
    st.fractions(min_value=0, max_value=1, max_denominator=12),
)


@st.composite
def points(draw, size=None):
    size = size if size is not None else draw(st.integers(2, 6))
    return Point(draw(st.lists(coordinate, min_size=size, max_size=size)))


@st.composite
def boundary_points(draw, size=None):
    p = draw(points(size))
    if any(c in (0, 1) for c in p):
        return p
    coords = list(p)
    coords[draw(st.integers(0, len(coords) - 1))] = draw(st.sampled_from([Fraction(0), Fraction(1)]))
    return Point(coords)


@st.composite
def ordered_boundary_pairs(draw, size=None):
    size = size if size is not None else draw(st.integers(2, 6))
    a = draw(st.lists(coordinate, min_size=size, max_size=size))
    b = draw(st.lists(coordinate, min_size=size, max_size=size))
    ties = draw(st.lists(st.booleans(), min_size=size, max_size=size))
    b = [ai if t else bi for ai, bi, t in zip(a, b, ties)]
    lo = [min(p, q) for p, q in zip(a, b)]
    hi = [max(p, q) for p, q in zip(a, b)]
    if not any(c in (0, 1) for c in lo):
        lo[draw(st.integers(0, size - 1))] = Fraction(0)
    if not any(c in (0, 1) for c in hi):
        hi[draw(st.integers(0, size - 1))] = Fraction(1)
    return Point(lo), Point(hi)


def P(*coords):
    """Point shorthand: ``P(0, "1/2", 1)``."""
    return Point(coords)
