from fractions import Fraction

from hypothesis import strategies as st

from burau_image.laurent import LaurentPoly
from burau_image.quaternionic import GenWord

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def laurent(draw, max_terms=5, lo=-4, hi=4, rational=False):
    n = draw(st.integers(0, max_terms))
    coeffs = {}
    for _ in range(n):
        k = draw(st.integers(lo, hi))
        if rational:
            v = Fraction(draw(small_ints), draw(st.integers(1, 4)))
        else:
            v = draw(small_ints)
        coeffs[k] = v
    return LaurentPoly(coeffs)


def nonzero_laurent(**kw):
    return laurent(**kw).filter(lambda p: not p.is_zero())


@st.composite
def rationals(draw, height=5, nonzero=False):
    num = draw(st.integers(-height, height).filter(lambda x: x != 0 or not nonzero))
    return Fraction(num, draw(st.integers(1, height)))


braid_words = st.lists(st.sampled_from([1, 2, -1, -2]), max_size=12)


@st.composite
def reduced_words(draw, max_len=6, height=5, max_exp=2):
    n = draw(st.integers(0, max_len))
    letters = []
    while len(letters) < n:
        r = draw(rationals(height))
        if letters and letters[-1][0] == r:
            continue
        e = draw(st.sampled_from([x for x in range(-max_exp, max_exp + 1) if x]))
        letters.append((r, e))
    return GenWord(tuple(letters))


@st.composite
def coprime_pairs(draw, height=40):
    from math import gcd

    a = draw(st.integers(-height, height).filter(lambda x: x != 0))
    b = draw(st.integers(1, height))
    g = gcd(a, b)
    return a // g, b // g
