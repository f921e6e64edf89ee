"""Seeded randomized invariant suites.

Each suite draws its own samples from ``random.Random(seed)`` and returns a
:class:`SuiteResult`; the CLI ``selftest`` and the acceptance tests both run
them, so a failing seed can be replayed exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .burau import (
    burau_word,
    f_values_at_one,
    eval_matrix,
    is_in_formal_burau,
    phi,
    rho,
)
from .chains import (
    mir_product_identity_check,
    n_value,
    reductive_factor,
)
from .laurent import LaurentPoly, LocalizedPoly
from .quaternionic import (
    GenWord,
    elementary_gen,
    eval_word,
    gen_power,
    gen_power_rep,
    reduce_to_word,
    type_of,
)


@dataclass
class SuiteResult:
    name: str
    samples: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.samples > 0

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.samples} samples{extra}"


def random_braid_word(rng: random.Random, max_len: int = 12) -> list[int]:
    n = rng.randint(0, max_len)
    return [rng.choice((1, 2, -1, -2)) for _ in range(n)]


def random_rational(rng: random.Random, height: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        r = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if not (nonzero and r == 0):
            return r


def random_reduced_word(rng: random.Random, max_len: int = 8, height: int = 5, max_exp: int = 2) -> GenWord:
    letters: list[tuple[Fraction, int]] = []
    n = rng.randint(0, max_len)
    while len(letters) < n:
        r = random_rational(rng, height)
        if letters and letters[-1][0] == r:
            continue
        e = rng.choice([x for x in range(-max_exp, max_exp + 1) if x])
        letters.append((r, e))
    return GenWord(tuple(letters))


def random_coprime_pair(rng: random.Random, height: int) -> tuple[int, int]:
    while True:
        a, b = rng.randint(-height, height), rng.randint(1, height)
        if a and gcd(a, b) == 1:
            return a, b


# -- suites ----------------------------------------------------------------------------

def homomorphism_suite(n: int = 1000, seed: int = 0, max_len: int = 12) -> SuiteResult:
    """phi and rho are multiplicative and keep determinants; membership; det exponent; f-values at t = 1."""
    rng = random.Random(seed)
    res = SuiteResult("homomorphisms")
    allowed_at_one = {(2, 0), (-2, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)}
    for _ in range(n):
        w1, w2 = random_braid_word(rng, max_len), random_braid_word(rng, max_len)
        a, b = burau_word(w1), burau_word(w2)
        ab = burau_word(w1 + w2)
        res.samples += 1
        if a * b != ab:
            res.fail(f"burau_word not multiplicative on {w1} {w2}")
        rep = is_in_formal_burau(ab)
        if not rep.member:
            res.fail(f"{w1 + w2}: failed {rep.failed()}")
            continue
        signed = sum(1 if x > 0 else -1 for x in w1 + w2)
        if ab.det() != LaurentPoly.monomial((-1) ** (signed % 2), signed):
            res.fail(f"{w1 + w2}: det is not (-t)^{signed}")
        pa, pb, pab = phi(a).matrix(), phi(b).matrix(), phi(ab).matrix()
        if pa * pb != pab:
            res.fail(f"phi not multiplicative on {w1} {w2}")
        if pab.det() != LocalizedPoly(ab.det()):
            res.fail(f"phi changes det on {w1 + w2}")
        ra, rb, rab = rho(a), rho(b), rho(ab)
        if ra * rb != rab:
            res.fail(f"rho not multiplicative on {w1} {w2}")
        if rab.det() != eval_matrix(ab, -1).det():
            res.fail(f"rho changes det on {w1 + w2}")
        if f_values_at_one(ab) not in allowed_at_one:
            res.fail(f"f-values at t = 1 {f_values_at_one(ab)} on {w1 + w2}")
    return res


def freeness_suite(n: int = 500, seed: int = 0, max_len: int = 8, height: int = 5) -> SuiteResult:
    """reduce_to_word(eval_word(w)) == w for reduced words."""
    rng = random.Random(seed)
    res = SuiteResult("freeness round trip")
    for _ in range(n):
        w = random_reduced_word(rng, max_len, height)
        res.samples += 1
        try:
            back = reduce_to_word(eval_word(w))
        except Exception as exc:  # reported, not raised
            res.fail(f"{w}: {exc!r}")
            continue
        if back != w:
            res.fail(f"{w} came back as {back}")
    return res


def pingpong_suite(n: int = 200, seed: int = 0, height: int = 5) -> SuiteResult:
    """type(x g[r2]^m) == r2 whenever x has nonzero type r1 != r2."""
    rng = random.Random(seed)
    res = SuiteResult("ping-pong types")
    while res.samples < n:
        r1 = random_rational(rng, height, nonzero=True)
        r2 = random_rational(rng, height, nonzero=True)
        if r1 == r2:
            continue
        prefix = random_reduced_word(rng, 3, height)
        if len(prefix) and prefix[-1][0] == r1:
            continue
        m1 = rng.choice([-3, -2, -1, 1, 2, 3])
        x = eval_word(prefix) * gen_power(r1, m1)
        if type_of(x) != r1:
            res.fail(f"{prefix} g[{r1}]^{m1} has type {type_of(x)}, expected {r1}")
            continue
        m = rng.choice([-3, -2, -1, 1, 2, 3])
        res.samples += 1
        got = type_of(x * gen_power(r2, m))
        if got != r2:
            res.fail(f"type(x g[{r2}]^{m}) = {got} with type(x) = {r1}")
    return res


def number_theory_suite(n: int = 1000, seed: int = 0, height: int = 30) -> SuiteResult:
    """rf formula vs brute-force mir products, the three equal gcds, and mir of g[a/b]^+-1."""
    rng = random.Random(seed)
    res = SuiteResult("reductive factor identities")
    while res.samples < n:
        a, b = random_coprime_pair(rng, height)
        c, d = random_coprime_pair(rng, height)
        if a * d == b * c:
            continue
        res.samples += 1
        s1 = rng.choice((1, -1))
        rep = mir_product_identity_check(Fraction(a, b), s1, Fraction(c, d), -s1)
        if not rep.ok:
            res.fail(f"({a}/{b}, {c}/{d}): {rep}")
        if n_value(a, b) % rep.rf or n_value(c, d) % rep.rf:
            res.fail(f"rf {rep.rf} does not divide both N values for ({a}/{b}, {c}/{d})")
        if reductive_factor(Fraction(c, d), -s1, Fraction(a, b), s1) != rep.rf:
            res.fail(f"rf not symmetric on ({a}/{b}, {c}/{d})")
        g1, g2 = gen_power_rep(Fraction(a, b), 1)
        x = elementary_gen(Fraction(a, b))
        if x.g1 != g1 * (b * b) or x.g2 != g2 * (b * b) or x.det != n_value(a, b):
            res.fail(f"mir(g[{a}/{b}]) is not b^2 g[{a}/{b}]")
        # mir(g^-1) = +-b^2 det(g) g^-1, i.e. +-(b^2 t^-1 - a^2, -ab)
        y = gen_power(Fraction(a, b), -1)
        want = (LaurentPoly({-1: b * b, 0: -a * a}), LaurentPoly.constant(-a * b))
        if (y.g1, y.g2) not in (want, (-want[0], -want[1])) or y.det != n_value(a, b):
            res.fail(f"mir(g[{a}/{b}]^-1) is not b^2 det g^-1")
    return res


def power_suite(seed: int = 0, rationals: int = 10, height: int = 5) -> SuiteResult:
    """gen_power matches iterated products for |m| <= 6, with the boundary coefficients of the power formula."""
    rng = random.Random(seed)
    res = SuiteResult("generator powers")
    rs = [Fraction(0), Fraction(1)] + [random_rational(rng, height, nonzero=True) for _ in range(rationals)]
    for r in rs:
        g = elementary_gen(r)
        acc_pos = elementary_gen(0) ** 0
        acc_neg = acc_pos
        for m in range(0, 7):
            for sgn, acc in ((1, acc_pos), (-1, acc_neg)):
                res.samples += 1
                if gen_power(r, sgn * m) != acc:
                    res.fail(f"g[{r}]^{sgn * m} differs from iterated product")
                if m == 0 or r == 0:
                    continue
                g1, g2 = gen_power_rep(r, sgn * m)
                if sgn > 0:
                    want = ((-m + 1, -r * r), (m, 1), (-m + 1, r), (m - 1, r))
                else:
                    want = ((-m, 1), (m - 1, -r * r), (-m + 1, -r), (m - 1, -r))
                got = ((g1.low, g1.lowest_coeff()), (g1.high, g1.highest_coeff()),
                       (g2.low, g2.lowest_coeff()), (g2.high, g2.highest_coeff()))
                if got != want:
                    res.fail(f"boundary terms of g[{r}]^{sgn * m}: {got} != {want}")
            acc_pos = acc_pos * g
            acc_neg = acc_neg * g.inverse()
    return res


def integrality_suite(n: int = 300, seed: int = 0, max_len: int = 12) -> SuiteResult:
    """On members, phi has Laurent (equivalently integral) entries iff rho(A)12 == 0."""
    rng = random.Random(seed)
    res = SuiteResult("phi integrality vs rho corner")
    for _ in range(n):
        a = burau_word(random_braid_word(rng, max_len))
        res.samples += 1
        p = phi(a)
        if p.is_integral() != (rho(a)[0, 1] == 0):
            res.fail(f"phi integral {p.is_integral()} but rho12 = {rho(a)[0, 1]}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "homomorphisms": homomorphism_suite,
    "freeness": freeness_suite,
    "pingpong": pingpong_suite,
    "number_theory": number_theory_suite,
    "powers": power_suite,
    "integrality": integrality_suite,
}


def run_all(seed: int = 0, quick: bool = False) -> list[SuiteResult]:
    if quick:
        return [
            homomorphism_suite(100, seed, 8),
            freeness_suite(100, seed, 6, 4),
            pingpong_suite(50, seed),
            number_theory_suite(200, seed),
            power_suite(seed, 4),
            integrality_suite(100, seed, 8),
        ]
    return [
        homomorphism_suite(1000, seed),
        freeness_suite(500, seed),
        pingpong_suite(200, seed),
        number_theory_suite(1000, seed),
        power_suite(seed),
        integrality_suite(300, seed),
    ]
