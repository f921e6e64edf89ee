from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burau_image.laurent import LaurentPoly, parse_laurent
from burau_image.matrix import Matrix
from burau_image.quaternionic import (
    GenWord,
    NotQuaternionicError,
    QElement,
    balance_kind,
    balanced_companion,
    elementary_det,
    elementary_gen,
    elementary_matrix,
    eval_word,
    format_word,
    gen_power,
    gen_power_rep,
    in_integral_subgroup,
    parse_word,
    q_inv,
    q_mul,
    reduce_to_word,
    right_mul_g0_power,
    sextant_representatives,
    type_of,
)

from .strategies import rationals, reduced_words

P = parse_laurent
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()
PHI = P("t^-1 + 1 + t")
ID = QElement.identity()


def q(g1, g2):
    return QElement(P(g1), P(g2))


class TestGenerators:
    def test_g0(self):
        g = elementary_gen(0)
        assert (g.g1, g.g2) == (LaurentPoly.t(1), ZERO)
        assert g.matrix() == Matrix([[LaurentPoly.t(1), ZERO], [ZERO, LaurentPoly.t(-1)]])

    def test_g1(self):
        g = elementary_gen(1)
        assert g.matrix() == Matrix([[P("t - 1"), ONE], [-PHI, P("t^-1 - 1")]])
        assert g.det == 3
        assert elementary_det(1) == 3

    def test_generator_entries(self):
        r = Fraction(-2, 3)
        m = elementary_matrix(r)
        assert m[0, 0] == LaurentPoly({1: 1, 0: -r * r})
        assert m[0, 1] == LaurentPoly.constant(r)
        assert elementary_det(r) == 1 + r**2 + r**4

    def test_inverse_shape(self):
        r = Fraction(3, 2)
        inv = q_inv(elementary_gen(r))
        want = QElement(LaurentPoly({-1: 1, 0: -r * r}), LaurentPoly.constant(-r))
        assert inv == want

    def test_g0_powers(self):
        assert q_mul(elementary_gen(0), elementary_gen(0)) == QElement(LaurentPoly.t(2), ZERO)
        assert q_inv(elementary_gen(0)) == QElement(LaurentPoly.t(-1), ZERO)
        for m in range(-4, 5):
            assert gen_power(0, m) == QElement(LaurentPoly.t(m), ZERO)

    def test_not_quaternionic(self):
        with pytest.raises(NotQuaternionicError):
            QElement(ONE, ONE)
        with pytest.raises(NotQuaternionicError):
            QElement.from_matrix(Matrix([[ONE, ONE], [ONE, ONE]]))


class TestGroup:
    def test_identity(self):
        assert q_inv(ID) == ID
        assert ID.is_identity()
        assert eval_word(GenWord()) == ID

    @given(reduced_words(4), reduced_words(4), reduced_words(4))
    def test_associative(self, a, b, c):
        x, y, z = eval_word(a), eval_word(b), eval_word(c)
        assert (x * y) * z == x * (y * z)

    @given(reduced_words(5))
    def test_inverse(self, w):
        x = eval_word(w)
        assert q_mul(x, q_inv(x)).is_identity()
        assert eval_word(w.inverse()) == x.inverse()

    @given(reduced_words(5))
    def test_tracked_det_matches_recomputed(self, w):
        x = eval_word(w)
        again = QElement(x.g1, x.g2)
        assert again.det == x.det

    @given(reduced_words(4))
    def test_matrix_product_agrees(self, w):
        acc = Matrix.identity(2, ONE, ZERO)
        for r, e in w:
            acc = acc * gen_power(r, e).matrix()
        assert QElement.from_matrix(acc) == eval_word(w)


class TestPowers:
    @given(rationals(), st.integers(-6, 6))
    def test_power_matches_iterated(self, r, m):
        assert gen_power(r, m) == elementary_gen(r) ** m

    def test_power_one(self):
        r = Fraction(5, 7)
        assert gen_power(r, 1) == elementary_gen(r)
        g1, g2 = gen_power_rep(r, 1)
        assert (g1, g2) == (LaurentPoly({1: 1, 0: -r * r}), LaurentPoly.constant(r))

    @given(rationals(nonzero=True), st.integers(1, 6))
    def test_boundary_coefficients(self, r, m):
        g1, g2 = gen_power_rep(r, m)
        assert (g1.low, g1.lowest_coeff()) == (-m + 1, -r * r)
        assert (g1.high, g1.highest_coeff()) == (m, 1)
        assert (g2.low, g2.lowest_coeff()) == (-m + 1, r)
        assert (g2.high, g2.highest_coeff()) == (m - 1, r)
        g1, g2 = gen_power_rep(r, -m)
        assert (g1.low, g1.lowest_coeff()) == (-m, 1)
        assert (g1.high, g1.highest_coeff()) == (m - 1, -r * r)
        assert (g2.low, g2.lowest_coeff()) == (-m + 1, -r)
        assert (g2.high, g2.highest_coeff()) == (m - 1, -r)


class TestTypes:
    @given(rationals(nonzero=True))
    def test_generator_is_upper_balanced(self, r):
        g = elementary_gen(r)
        assert balance_kind(g) == "upper"
        assert balanced_companion(g) == (g, 0)
        assert type_of(g) == r

    @given(rationals(nonzero=True))
    def test_companion_undoes_g0(self, r):
        y, k = balanced_companion(elementary_gen(r) * elementary_gen(0))
        assert (y, k) == (elementary_gen(r), -1)

    @given(reduced_words(4))
    def test_exactly_one_balanced_shift(self, w):
        x = eval_word(w)
        if x.g2.is_zero():
            return
        _, k0 = balanced_companion(x)
        hits = [k for k in range(k0 - 10, k0 + 11) if balance_kind(right_mul_g0_power(x, k))]
        assert hits == [k0]

    def test_type_of_g0(self):
        assert type_of(elementary_gen(0)) == 0
        with pytest.raises(ValueError):
            balanced_companion(elementary_gen(0))

    @given(rationals(nonzero=True), rationals(nonzero=True), reduced_words(3),
           st.sampled_from([-3, -2, -1, 1, 2, 3]), st.sampled_from([-3, -2, -1, 1, 2, 3]))
    def test_ping_pong(self, r1, r2, prefix, m1, m):
        if r1 == r2 or (len(prefix) and prefix[-1][0] == r1):
            return
        x = eval_word(prefix) * gen_power(r1, m1)
        assert type_of(x) == r1
        assert type_of(x * gen_power(r2, m)) == r2


class TestWords:
    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            GenWord(((Fraction(-1), 1), (Fraction(-1), 1)))
        with pytest.raises(ValueError):
            GenWord(((Fraction(1), 0),))

    def test_free_reduction(self):
        w = GenWord.reduced([(1, 1), (2, 1), (2, -1), (1, 2)])
        assert w == GenWord(((Fraction(1), 3),))
        assert GenWord.reduced([(1, 1), (1, -1)]) == GenWord()

    def test_text_format(self):
        w = GenWord(((Fraction(-1), 1), (Fraction(2), -1), (Fraction(-1, 3), 2)))
        assert format_word(w) == "g[-1] g[2]^-1 g[-1/3]^2"
        assert parse_word(format_word(w)) == w
        assert parse_word('[{"r": "-1", "e": 1}, {"r": "2", "e": -1}, {"r": "-1/3", "e": 2}]') == w

    def test_parse_rejects(self):
        with pytest.raises(ValueError):
            parse_word("g[-1] g[-1]")
        with pytest.raises(ValueError):
            parse_word("h[2]")
        assert parse_word("g[-1] g[-1]", reduce=True) == GenWord(((Fraction(-1), 2),))

    @given(reduced_words(6))
    def test_text_and_json_round_trip(self, w):
        assert parse_word(str(w)) == w
        import json
        assert parse_word(json.dumps(w.to_json())) == w


class TestReduction:
    def test_generator(self):
        r = Fraction(-3, 4)
        assert reduce_to_word(elementary_gen(r)) == GenWord(((r, 1),))

    def test_identity(self):
        assert reduce_to_word(ID) == GenWord()

    def test_example_pair(self):
        assert str(reduce_to_word(q("t - 1", "1"))) == "g[1]"

    @given(reduced_words(8))
    def test_freeness_round_trip(self, w):
        assert reduce_to_word(eval_word(w)) == w


class TestIntegral:
    def test_identity(self):
        rep = in_integral_subgroup(ID)
        assert rep.member
        assert not rep.m12_nonzero

    def test_g_half(self):
        x = elementary_gen(Fraction(1, 2))
        assert x.g1 == P("4*t - 1")
        rep = in_integral_subgroup(x)
        assert not rep.member
        assert rep.det == 21
        assert not rep.det_is_square

    def test_square_det_non_member(self):
        # det 9 with content 1: a square but no unit-determinant integral rescaling
        x = elementary_gen(1) * elementary_gen(-1)
        rep = in_integral_subgroup(x)
        assert x.det == 9
        assert rep.det_is_square
        assert not rep.member

    def test_sextant_identity(self):
        assert sextant_representatives(ID) == [(1, 0)]
