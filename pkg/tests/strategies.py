"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from mukai_enriques.lattice import RANK, ClassVector
from mukai_enriques.mukai import MukaiVector


def vectors(lo=-4, hi=4, size=RANK):
    return st.lists(st.integers(lo, hi), min_size=size, max_size=size).map(ClassVector)


def e8_vectors(lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=8, max_size=8).map(
        lambda xs: ClassVector((0, 0, *xs)))


@st.composite
def mukai_vectors(draw, r=st.integers(-8, 8), lo=-3, hi=3):
    rr = draw(r)
    s = draw(st.integers(-12, 12))
    if (rr - s) % 2:
        s += 1
    return MukaiVector(rr, draw(vectors(lo, hi)), s)
