import io
import re
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burau_image.chains import (
    SearchConfig,
    _children_congruence,
    _children_naive,
    _icbrt,
    _iroot4_below,
    n_value,
    negate_word,
    flip_word,
    roots_fast,
    roots_naive,
    search,
    verify_candidates,
    words_for_sequence,
)
from burau_image.quaternionic import eval_word

from .strategies import coprime_pairs
from .words import M50_WORD


@pytest.fixture(scope="module")
def m50():
    res = search(50)
    return res, verify_candidates(res.candidates)


class TestRoots:
    @pytest.mark.parametrize("M", [1, 2, 5, 12, 19, 27])
    def test_fast_matches_naive(self, M):
        assert roots_fast(M) == roots_naive(M)

    def test_no_roots_below_19(self):
        assert roots_fast(18) == []
        assert roots_fast(19)

    def test_root_conditions(self):
        for a, b, c, d, r0 in roots_fast(30):
            assert b == max(abs(a), b, abs(c), d)
            assert gcd(a, b) == gcd(c, d) == 1 and (a, b) != (c, d)
            assert r0 * r0 >= max(n_value(a, b), n_value(c, d))


class TestChildren:
    @given(coprime_pairs(12), st.data())
    def test_congruence_matches_naive(self, ef, data):
        e, f = ef
        n = n_value(e, f)
        divs = [y for y in range(1, n + 1) if n % y == 0]
        y = data.draw(st.sampled_from(divs))
        B = data.draw(st.integers(1, 14))
        assert list(_children_congruence(e, f, y, B)) == list(_children_naive(e, f, y, B))

    @given(st.integers(0, 10**12))
    def test_integer_roots(self, x):
        m = _iroot4_below(x)
        assert m**4 < x or m == 0
        assert (m + 1) ** 4 >= x
        c = _icbrt(x)
        assert c**3 <= x < (c + 1) ** 3


class TestTree:
    @pytest.mark.parametrize("M", [19, 30, 50])
    def test_fast_tree_equals_literal_tree(self, M):
        fast = search(M)
        naive = search(M, SearchConfig(enumerator="naive"))
        assert fast.root.signature() == naive.root.signature()
        assert fast.candidates == naive.candidates
        assert naive.stats.inserted >= fast.stats.inserted

    def test_small_M_is_empty(self):
        for M in (1, 2):
            res = search(M)
            assert res.candidates == [] and res.root.children == []

    def test_rejects_bad_M(self):
        with pytest.raises(ValueError):
            search(0)

    def test_deterministic(self, m50):
        again = search(50)
        assert again.root.signature() == m50[0].root.signature()

    def test_parallel_matches_sequential(self):
        seq = search(40)
        par = search(40, SearchConfig(parallel=2))
        assert par.root.signature() == seq.root.signature()

    def test_ancestor_rfs_distinct(self, m50):
        res = m50[0]
        for top in res.root.children:
            for path in top.leaf_paths():
                rfs = [n.rf for n in path]
                assert len(rfs) == len(set(rfs))
                assert all(n.index == top.index for n in path)

    def test_dump_format(self, m50):
        out = io.StringIO()
        m50[0].dump_tree(out)
        lines = out.getvalue().splitlines()
        assert lines[0] == "(0, 0, 0, 0)"
        pat = re.compile(r"^( {2})*\(-?\d+, \d+, \d+, -?\d+\)$")
        assert all(pat.match(ln) for ln in lines)


class TestM50:
    def test_counts(self, m50):
        res, ver = m50
        assert len(res.candidates) == 2
        assert ver.raw_count == 4 and ver.rejected == 0
        assert ver.orbit_count() == 4
        assert ver.orbit_count(with_symmetries=True) == 1

    def test_found_word_is_in_the_output(self, m50):
        assert M50_WORD in m50[1].words()

    def test_certificates(self, m50):
        for c in m50[1].certificates:
            assert c.counterexample
            assert (c.rd, c.mrf) == (40, 3081)

    def test_orbit_under_symmetries(self, m50):
        words = set(m50[1].words())
        assert negate_word(M50_WORD) in words
        assert flip_word(M50_WORD) in words
        assert eval_word(flip_word(M50_WORD)).rd() == 40


def test_words_for_sequence():
    ws = words_for_sequence([(-1, 1), (2, 1), (-1, 3)])
    assert [str(w) for w in ws] == ["g[-1] g[2]^-1 g[-1/3]", "g[-1]^-1 g[2] g[-1/3]^-1"]
    assert ws[0].letters[2][0] == Fraction(-1, 3)
