"""Minimal integral representatives, reductive factors, (k, l)-chains and the
tree search for biminimal chains.

Notation: ``N(a, b) = a^4 + a^2 b^2 + b^4 = b^4 det g[a/b]`` and
``F(a, b, c, d) = a^2 c^2 + abcd + b^2 d^2``.
"""
from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Callable, Iterable, Iterator, Sequence, TextIO

from .laurent import LaurentPoly
from .matrix import Matrix
from .quaternionic import (
    GenWord,
    QElement,
    elementary_gen,
    eval_word,
    fmt_rational,
    gen_power,
    in_integral_subgroup,
    sextant_representatives,
)


def n_value(a: int, b: int) -> int:
    return a**4 + a * a * b * b + b**4


def f_value(a: int, b: int, c: int, d: int) -> int:
    return a * a * c * c + a * b * c * d + b * b * d * d


def _frac(r) -> tuple[int, int]:
    r = Fraction(r)
    return r.numerator, r.denominator


# -- minimal integral representatives ----------------------------------------------

def mir_matrix(m: Matrix) -> tuple[Matrix, Fraction]:
    """Content-1 integral rescaling ``q * m`` of a matrix of rational Laurent polynomials.

    The sign makes the top coefficient of the first nonzero entry (row-major)
    positive. Returns ``(q * m, q)``.
    """
    entries = [LaurentPoly(x) if not isinstance(x, LaurentPoly) else x for r in m.rows for x in r]
    vals = [Fraction(v) for p in entries for _, v in p.items()]
    if not vals:
        raise ValueError("the zero matrix has no minimal integral representative")
    den = lcm(*(v.denominator for v in vals))
    num = gcd(*(int(v * den) for v in vals))
    q = Fraction(den, num)
    lead = next(p for p in entries if not p.is_zero())
    if lead.highest_coeff() < 0:
        q = -q
    return m.map(lambda x: LaurentPoly(x) * q if not isinstance(x, LaurentPoly) else x * q), q


def mir_det(x: QElement) -> int:
    """``det(mir(x))``; QElement already stores its mir."""
    return int(x.det)


def _raw_product_content(r1, e1: int, r2, e2: int) -> int:
    """Content of mir(g[r1]^e1) * mir(g[r2]^e2), computed on full 2x2 matrices."""
    m1 = gen_power(r1, e1).matrix()
    m2 = gen_power(r2, e2).matrix()
    prod = m1 * m2
    vals = [v for r in prod.rows for p in r for _, v in p.items()]
    return gcd(*(int(v) for v in vals))


# -- reductive factor ---------------------------------------------------------------

def _check_alternating(r1, sign1: int, r2, sign2: int) -> None:
    if sign1 not in (1, -1) or sign2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    if sign1 == sign2:
        raise ValueError("reductive factors are defined for alternating pairs only")
    if Fraction(r1) == Fraction(r2):
        raise ValueError("equal symbols: the word is not reduced")


def rf_int(a: int, b: int, c: int, d: int) -> int:
    return gcd(f_value(a, b, c, d), a * d - b * c)


def reductive_factor(r1, sign1: int, r2, sign2: int) -> int:
    """``rf(g[r1]^sign1, g[r2]^sign2)`` for an alternating pair, via gcd(F, ad - bc)."""
    _check_alternating(r1, sign1, r2, sign2)
    a, b = _frac(r1)
    c, d = _frac(r2)
    return rf_int(a, b, c, d)


def reductive_factor_brute(r1, sign1: int, r2, sign2: int) -> int:
    """Independent oracle: content of the product of the two mirs."""
    _check_alternating(r1, sign1, r2, sign2)
    return _raw_product_content(r1, sign1, r2, sign2)


@dataclass
class MirIdentityReport:
    rf: int
    rf_brute: int
    identity_holds: bool
    gcd_triple: tuple[int, int, int]

    @property
    def ok(self) -> bool:
        g = self.gcd_triple
        return self.identity_holds and self.rf == self.rf_brute and g[0] == g[1] == g[2]


def mir_product_identity_check(r1, sign1: int, r2, sign2: int) -> MirIdentityReport:
    """Check ``rf * mir(AB) = mir(A) mir(B)`` up to sign, and the three equal gcds."""
    rf = reductive_factor(r1, sign1, r2, sign2)
    a_m = gen_power(r1, sign1)
    b_m = gen_power(r2, sign2)
    lhs = (a_m * b_m).matrix() * rf
    rhs = a_m.matrix() * b_m.matrix()
    holds = lhs == rhs or lhs == -rhs
    a, b = _frac(r1)
    c, d = _frac(r2)
    m = a * d - b * c
    gcds = (gcd(f_value(a, b, c, d), m), gcd(n_value(a, b), m), gcd(n_value(c, d), m))
    return MirIdentityReport(rf, _raw_product_content(r1, sign1, r2, sign2), holds, gcds)


# -- chains -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Chain:
    """A (k, l)-chain with the bookkeeping of every prefix."""

    word: GenWord
    k: int
    ls: tuple[int, ...]
    rfs: tuple[int, ...] = ()

    @property
    def l(self) -> int:
        return self.ls[-1]

    def __len__(self) -> int:
        return len(self.word)

    def symbols(self) -> list[tuple[int, int]]:
        return [_frac(r) for r, _ in self.word]


@dataclass(frozen=True)
class ChainRejection:
    condition: str
    detail: str

    def __bool__(self) -> bool:
        return False


def base_chain(r, sign: int, k: int = 1) -> Chain:
    a, b = _frac(r)
    n = n_value(a, b)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if k <= 0 or n % k:
        raise ValueError(f"k = {k} does not divide {n}")
    return Chain(GenWord(((Fraction(r), sign),)), k, (n // k,))


class DenseMir:
    """mir of a word in the elementary generators, as dense integer coefficient lists.

    ``g1 = sum c1[i] t^(lo1 + i)`` and likewise ``g2``. Right multiplication
    by mir(g[a/b]^+-1) only needs scaled shifted copies of ``c1`` and ``c2``;
    the determinant is carried exactly through
    det(x * y / c) = det(x) det(y) / c^2 with ``c`` the content.
    """

    __slots__ = ("lo1", "c1", "lo2", "c2", "det")

    def __init__(self, lo1: int, c1: list[int], lo2: int, c2: list[int], det: int):
        self.lo1, self.c1, self.lo2, self.c2, self.det = lo1, c1, lo2, c2, det

    @classmethod
    def identity(cls) -> "DenseMir":
        return cls(0, [1], 0, [], 1)

    @staticmethod
    def _combo(terms) -> tuple[int, list[int]]:
        terms = [t for t in terms if t[2]]
        if not terms:
            return 0, []
        lo = min(t[1] for t in terms)
        hi = max(t[1] + len(t[2]) for t in terms)
        out = [0] * (hi - lo)
        for s, l, lst in terms:
            off = l - lo
            for i, v in enumerate(lst):
                out[off + i] += s * v
        a, b = 0, len(out)
        while a < b and out[a] == 0:
            a += 1
        while b > a and out[b - 1] == 0:
            b -= 1
        return lo + a, out[a:b]

    def times_generator(self, r: Fraction, sign: int) -> tuple["DenseMir", int]:
        """``mir(self * g[r]^sign)`` and the content that was divided out."""
        a, b = r.numerator, r.denominator
        bb, aa, ab = b * b, a * a, a * b
        lo1, c1, lo2, c2 = self.lo1, self.c1, self.lo2, self.c2
        if sign == 1:
            n1 = self._combo([(bb, lo1 + 1, c1), (-aa, lo1, c1),
                              (-ab, lo2 - 1, c2), (-ab, lo2, c2), (-ab, lo2 + 1, c2)])
            n2 = self._combo([(ab, lo1, c1), (bb, lo2 - 1, c2), (-aa, lo2, c2)])
        else:
            n1 = self._combo([(bb, lo1 - 1, c1), (-aa, lo1, c1),
                              (ab, lo2 - 1, c2), (ab, lo2, c2), (ab, lo2 + 1, c2)])
            n2 = self._combo([(-ab, lo1, c1), (bb, lo2 + 1, c2), (-aa, lo2, c2)])
        g = gcd(*n1[1], *n2[1])
        if n1[1][-1] < 0:
            g = -g
        num = self.det * n_value(a, b)
        if num % (g * g):
            raise ArithmeticError("determinant not divisible by the squared content")
        out = DenseMir(n1[0], [v // g for v in n1[1]], n2[0], [v // g for v in n2[1]], num // (g * g))
        return out, abs(g)

    @classmethod
    def from_qelement(cls, x: QElement) -> "DenseMir":
        def dense(p: LaurentPoly) -> tuple[int, list[int]]:
            if p.is_zero():
                return 0, []
            return p.low, [int(p[i]) for i in range(p.low, p.high + 1)]

        return cls(*dense(x.g1), *dense(x.g2), int(x.det))

    def rd(self) -> int:
        return len(self.c1) - 1

    def to_qelement(self) -> QElement:
        g1 = LaurentPoly({self.lo1 + i: v for i, v in enumerate(self.c1)})
        g2 = LaurentPoly({self.lo2 + i: v for i, v in enumerate(self.c2)})
        x = QElement(g1, g2, check=False)
        x.det = self.det
        return x


def _step(last: tuple[Fraction, int], l: int, k: int, x: DenseMir, r: Fraction, sign: int):
    """One extension step; returns ``(l', rf, x')`` or a :class:`ChainRejection`."""
    last_r, last_e = last
    if sign not in (1, -1):
        return ChainRejection("alternating", "sign must be +1 or -1")
    if sign == last_e:
        return ChainRejection("alternating", "adjacent symbols have the same sign")
    if r == last_r:
        return ChainRejection("reduced", f"symbol g[{fmt_rational(last_r)}] repeated")
    n = n_value(*_frac(r))
    rf = reductive_factor(last_r, last_e, r, sign)
    if rf % l:
        return ChainRejection("l_divides_rf", f"l = {l} does not divide rf = {rf}")
    if n % l:
        return ChainRejection("l_times_lprime", f"l = {l} does not divide {n}")
    l2 = n // l
    x2, _ = x.times_generator(r, sign)
    if k * l2 != x2.det:
        return ChainRejection("det_mir", f"k*l' = {k * l2} but det(mir) = {x2.det}")
    return l2, rf, x2


def _start(r: Fraction, sign: int, k: int):
    """Base step; returns ``(l, None, x)`` or a :class:`ChainRejection`."""
    if sign not in (1, -1):
        return ChainRejection("alternating", "exponents must be +1 or -1")
    n = n_value(*_frac(r))
    if k <= 0 or n % k:
        return ChainRejection("base", f"k = {k} does not divide {n}")
    x, _ = DenseMir.identity().times_generator(r, sign)
    if k * (n // k) != x.det:
        return ChainRejection("det_mir", "base determinant mismatch")
    return n // k, None, x


def extend_chain(c: Chain, r, sign: int, *, element: QElement | None = None) -> Chain | ChainRejection:
    """Append ``g[r]^sign`` and check the four conditions of a chain extension.

    ``element`` may carry ``eval_word(c.word)`` to avoid recomputing it.
    """
    x = element if element is not None else eval_word(c.word)
    res = _step(c.word[-1], c.l, c.k, DenseMir.from_qelement(x), Fraction(r), sign)
    if isinstance(res, ChainRejection):
        return res
    l2, rf, _ = res
    return Chain(GenWord(c.word.letters + ((Fraction(r), sign),)), c.k, c.ls + (l2,), c.rfs + (rf,))


@dataclass
class ChainCheck:
    """Full re-verification of a word as a (k, l)-chain."""

    chain: Chain | None
    rejection: ChainRejection | None
    position: int | None
    element: QElement | None

    @property
    def ok(self) -> bool:
        return self.chain is not None


def _finish(word: GenWord, k: int, states: Sequence) -> ChainCheck:
    for i, st in enumerate(states):
        if isinstance(st, ChainRejection):
            return ChainCheck(None, st, i, None)
    ls = tuple(st[0] for st in states)
    rfs = tuple(st[1] for st in states[1:])
    return ChainCheck(Chain(word, k, ls, rfs), None, None, states[-1][2].to_qelement())


def check_chain(word: GenWord, k: int = 1) -> ChainCheck:
    """Build the chain letter by letter with every prefix determinant computed exactly."""
    if len(word) == 0:
        return ChainCheck(None, ChainRejection("nonempty", "empty word"), 0, None)
    states = [_start(*word[0], k)]
    for i in range(1, len(word)):
        prev = states[-1]
        if isinstance(prev, ChainRejection):
            break
        states.append(_step(word[i - 1], prev[0], k, prev[2], *word[i]))
    return _finish(word, k, states)


def check_chains_shared(words: Iterable[GenWord], k: int = 1) -> Iterator[tuple[GenWord, ChainCheck]]:
    """:func:`check_chain` for many words, sharing the exact prefix computations.

    Words are visited in sorted order, so a prefix common to neighbours is
    evaluated once; every prefix of every word is still checked.
    """
    def key(w):
        return tuple((r.numerator, r.denominator, e) for r, e in w.letters)

    letters: list = []
    states: list = []
    for w in sorted(set(words), key=key):
        c = 0
        while c < min(len(letters), len(w)) and letters[c] == w[c]:
            c += 1
        del letters[c:], states[c:]
        for i in range(c, len(w)):
            if states and isinstance(states[-1], ChainRejection):
                st = states[-1]
            elif i == 0:
                st = _start(*w[0], k)
            else:
                st = _step(w[i - 1], states[-1][0], k, states[-1][2], *w[i])
            letters.append(w[i])
            states.append(st)
        if len(w) == 0:
            yield w, ChainCheck(None, ChainRejection("nonempty", "empty word"), 0, None)
            continue
        first_bad = next((i for i, st in enumerate(states) if isinstance(st, ChainRejection)), None)
        if first_bad is not None:
            yield w, ChainCheck(None, states[first_bad], first_bad, None)
        else:
            yield w, _finish(w, k, states)


def is_trivial_word(word: GenWord) -> bool:
    return len(word) == 1 and word[0][0] == 0 and abs(word[0][1]) == 1


@dataclass
class BiminimalCertificate:
    word: GenWord
    biminimal: bool
    trivial: bool
    k: int | None
    l: int | None
    element: QElement | None
    integral: dict | None
    mrf: int | None
    rd: int | None
    sextant: list[tuple[int, int]] = field(default_factory=list)
    burau_lift: Matrix | None = None
    rejection: ChainRejection | None = None
    rejection_position: int | None = None

    @property
    def counterexample(self) -> bool:
        """Nontrivial, integral and M12 != 0."""
        return (
            self.biminimal
            and not self.trivial
            and self.integral is not None
            and self.integral["member"]
            and self.integral["m12_nonzero"]
        )

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "word": self.word.to_json(),
            "word_text": str(self.word),
            "k": self.k,
            "l": self.l,
            "biminimal": self.biminimal,
            "trivial": self.trivial,
            "mrf": self.mrf,
            "rd": self.rd,
            "integral": bool(self.integral and self.integral["member"]),
            "m12_nonzero": bool(self.integral and self.integral["m12_nonzero"]),
            "counterexample": self.counterexample,
            "certificate": {
                "membership": self.integral,
                "element": self.element.to_json() if self.element is not None else None,
                "sextant": [{"sign": s, "t_power": -j} for s, j in self.sextant],
                "burau_lift": str(self.burau_lift) if self.burau_lift is not None else None,
            },
        }
        if self.rejection is not None:
            out["rejection"] = {
                "condition": self.rejection.condition,
                "detail": self.rejection.detail,
                "position": self.rejection_position,
            }
        return out


def burau_lift(x: QElement) -> Matrix | None:
    """A 3x3 formal Burau matrix whose phi image is a rescaling of ``x`` (det(x) = 1)."""
    from .burau import reconstruct_from_g

    hits = sextant_representatives(x)
    if len(hits) != 1:
        return None
    s, j = hits[0]
    res = reconstruct_from_g(x.g1.shift(-j) * s, x.g2.shift(-j) * s, LaurentPoly.t(-2 * j))
    return res.matrix


def is_biminimal(word: GenWord, *, lift: bool = False) -> BiminimalCertificate:
    """Chain check plus an independent evaluation of the whole word through QElement."""
    chk = check_chain(word, k=1)
    if chk.ok:
        full = eval_word(word)
        if full != chk.element or full.det != chk.element.det:
            raise AssertionError("dense and generic evaluations of the word disagree")
        chk.element = full
    return _certificate(word, chk, lift)


def _certificate(word: GenWord, chk: ChainCheck, lift: bool) -> BiminimalCertificate:
    trivial = is_trivial_word(word)
    if not chk.ok:
        return BiminimalCertificate(word, False, trivial, None, None, None, None, None, None,
                                    rejection=chk.rejection, rejection_position=chk.position)
    ch, x = chk.chain, chk.element
    bimin = ch.k == 1 and ch.l == 1
    integral = in_integral_subgroup(x).to_json()
    mrf = max(ch.rfs) if ch.rfs else None
    sextant = sextant_representatives(x) if x.det == 1 else []
    lifted = burau_lift(x) if (lift and x.det == 1) else None
    return BiminimalCertificate(word, bimin, trivial, ch.k, ch.l, x, integral, mrf, x.rd(),
                                sextant, lifted)


def max_reductive_factor(word: GenWord) -> int:
    if len(word) < 2:
        raise ValueError("maximal reductive factor needs at least two symbols")
    return max(reductive_factor(r1, e1, r2, e2) for (r1, e1), (r2, e2) in zip(word, word.letters[1:]))


def mrf_inequality(word: GenWord) -> bool:
    """``Mrf^2 >= max(N)`` of the two symbols at every position attaining the maximum."""
    mrf = max_reductive_factor(word)
    ok = True
    for (r1, e1), (r2, e2) in zip(word, word.letters[1:]):
        if reductive_factor(r1, e1, r2, e2) == mrf:
            ok &= mrf * mrf >= max(n_value(*_frac(r1)), n_value(*_frac(r2)))
    return ok


# -- search --------------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    #: "fast" skips children that provably die; "naive" inserts every candidate,
    #: then deletes the ones whose subtree comes out empty
    enumerator: str = "fast"
    parallel: int | None = None
    progress: bool = False
    progress_stream: TextIO | None = None

    def __post_init__(self):
        if self.enumerator not in ("fast", "naive"):
            raise ValueError(f"unknown enumerator {self.enumerator!r}")
        if self.parallel is not None and self.parallel < 1:
            raise ValueError("parallel worker count must be positive")


class SearchNode:
    __slots__ = ("a", "b", "rf", "index", "children")

    def __init__(self, a: int, b: int, rf: int, index: int):
        self.a, self.b, self.rf, self.index = a, b, rf, index
        self.children: list[SearchNode] = []

    def __repr__(self) -> str:
        return f"({self.a}, {self.b}, {self.rf}, {self.index})"

    def tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.rf, self.index)

    def walk(self, depth: int = 0) -> Iterator[tuple[int, "SearchNode"]]:
        yield depth, self
        for c in self.children:
            yield from c.walk(depth + 1)

    def leaf_paths(self) -> Iterator[list["SearchNode"]]:
        if not self.children:
            yield [self]
            return
        for c in self.children:
            for p in c.leaf_paths():
                yield [self] + p

    def signature(self):
        return (self.tuple(), tuple(c.signature() for c in self.children))


def _signed_range(m: int) -> list[int]:
    return list(range(-m, 0)) + list(range(1, m + 1))


def _divisors(n: int) -> list[int]:
    fac: dict[int, int] = {}
    x, p = n, 2
    while p * p <= x:
        while x % p == 0:
            fac[p] = fac.get(p, 0) + 1
            x //= p
        p += 1
    if x > 1:
        fac[x] = fac.get(x, 0) + 1
    ds = [1]
    for p, e in fac.items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _root_key(x):
    a, b, c, d, _ = x
    return (b, a, d, c)


def roots_naive(M: int) -> list[tuple[int, int, int, int, int]]:
    """All (a, b, c, d, rf0) of the root step passing the pruning inequality, by brute force."""
    out = []
    for b in range(1, M + 1):
        for a in _signed_range(b):
            if gcd(a, b) != 1:
                continue
            nab = n_value(a, b)
            for d in range(1, b + 1):
                for c in _signed_range(b):
                    if gcd(c, d) != 1 or (a, b) == (c, d):
                        continue
                    r0 = rf_int(a, b, c, d)
                    if r0 * r0 >= max(nab, n_value(c, d)):
                        out.append((a, b, c, d, r0))
    out.sort(key=_root_key)
    return out


def roots_fast(M: int) -> list[tuple[int, int, int, int, int]]:
    """Same set as :func:`roots_naive`.

    rf0 divides N(a, b) and ad - bc, and rf0^2 >= N(a, b); so ad - bc is a
    nonzero multiple of a divisor D of N(a, b) with D^2 >= N(a, b) and
    |ad - bc| <= 2 b^2.
    """
    out = []
    for b in range(1, M + 1):
        for a in _signed_range(b):
            if gcd(a, b) != 1:
                continue
            nab = n_value(a, b)
            found = set()
            for D in _divisors(nab):
                if D * D < nab or D > 2 * b * b:
                    continue
                for j in range(1, 2 * b * b // D + 1):
                    for m in (j * D, -j * D):
                        for d in range(1, b + 1):
                            s = a * d - m
                            if s % b:
                                continue
                            c = s // b
                            if c == 0 or abs(c) > b or gcd(c, d) != 1 or (c, d) == (a, b):
                                continue
                            found.add((c, d))
            for c, d in found:
                r0 = rf_int(a, b, c, d)
                if r0 * r0 >= max(nab, n_value(c, d)):
                    out.append((a, b, c, d, r0))
    out.sort(key=_root_key)
    return out


def _children_naive(e: int, f: int, y: int, M: int) -> Iterator[tuple[int, int]]:
    for h in range(1, M + 1):
        for g in _signed_range(M):
            if gcd(g, h) != 1 or (g, h) == (e, f):
                continue
            if rf_int(e, f, g, h) % y == 0:
                yield g, h


def _children_congruence(e: int, f: int, y: int, B: int) -> Iterator[tuple[int, int]]:
    """(g, h) with 0 < |g|, h <= B and y | eh - fg, in (h, g) order.

    Since y divides N(e, f), y | eh - fg already forces y | rf(e/f, g/h).
    """
    gd = gcd(f, y)
    mod = y // gd
    finv = pow(f // gd, -1, mod) if mod > 1 else 0
    for h in range(1, B + 1):
        if (e * h) % gd:
            continue
        if mod == 1:
            gs: Iterable[int] = range(-B, B + 1)
        else:
            g0 = ((e * h // gd) * finv) % mod
            gs = range(g0 - ((g0 + B) // mod) * mod, B + 1, mod)
        for g in gs:
            if g == 0 or gcd(g, h) != 1 or (g == e and h == f):
                continue
            yield g, h


def _iroot4_below(x: int) -> int:
    """Largest m with m^4 < x."""
    m = isqrt(isqrt(max(x - 1, 0)))
    while (m + 1) ** 4 < x:
        m += 1
    while m > 0 and m**4 >= x:
        m -= 1
    return m


def _icbrt(x: int) -> int:
    m = round(x ** (1 / 3))
    while m**3 > x:
        m -= 1
    while (m + 1) ** 3 <= x:
        m += 1
    return m


@dataclass
class SearchStats:
    roots: int = 0
    inserted: int = 0
    expanded: int = 0
    max_depth: int = 0


class _Explorer:
    def __init__(self, M: int, enumerator: str, stats: SearchStats):
        self.M = M
        self.naive = enumerator == "naive"
        self.stats = stats

    def explore(self, node: SearchNode, rf0: int, anc: frozenset, depth: int) -> bool:
        """Extension step for ``node``; returns whether the node keeps a child."""
        st = self.stats
        st.expanded += 1
        st.max_depth = max(st.max_depth, depth)
        e, f = node.a, node.b
        nef = n_value(e, f)
        y = nef // node.rf
        # the three child conditions; the last two do not depend on (g, h)
        if y < rf0 and y not in anc:
            anc2 = anc | {y}
            if self.naive:
                cands = _children_congruence(e, f, y, self.M)
            else:
                bound = max(_icbrt(abs(e) + f), _iroot4_below(rf0 * y))
                cands = _children_congruence(e, f, y, min(self.M, bound))
            for g, h in cands:
                ngh = n_value(g, h)
                leaf = ngh == rf_int(e, f, g, h)
                if not (self.naive or leaf):
                    y2 = ngh // y
                    if y2 >= rf0 or y2 in anc2:
                        continue  # would be inserted and deleted at once
                child = SearchNode(g, h, y, node.index)
                node.children.append(child)
                st.inserted += 1
                if leaf:
                    continue
                if not self.explore(child, rf0, anc2, depth + 1):
                    node.children.pop()
        return bool(node.children)


def _process_root(M: int, enumerator: str, i: int, root_tuple) -> tuple[list[SearchNode], SearchStats]:
    """Steps (d-2) onward for one root combination; returns surviving top nodes."""
    a, b, c, d, r0 = root_tuple
    stats = SearchStats()
    ex = _Explorer(M, enumerator, stats)
    p = SearchNode(a, b, r0, i)
    q = SearchNode(c, d, r0, -i)
    stats.inserted += 2
    anc = frozenset({r0})
    if r0 != n_value(a, b):
        if not ex.explore(p, r0, anc, 1):
            return [], stats
        if r0 == n_value(c, d):
            return [p, q], stats
        if not ex.explore(q, r0, anc, 1):
            return [], stats
        return [p, q], stats
    if r0 == n_value(c, d):
        return [p, q], stats
    if not ex.explore(q, r0, anc, 1):
        return [], stats
    return [p, q], stats


def _process_root_star(args):
    return _process_root(*args)


@dataclass
class SearchResult:
    M: int
    root: SearchNode
    stats: SearchStats
    seconds: float
    candidates: list[list[tuple[int, int]]]

    def dump_tree(self, out: TextIO) -> None:
        for depth, node in self.root.walk():
            out.write("  " * depth + repr(node) + "\n")


def candidate_sequences(root: SearchNode) -> list[list[tuple[int, int]]]:
    """Reverse of each leaf path under ``+i`` followed by each leaf path under ``-i``."""
    kids = root.children
    out = []
    for j in range(0, len(kids), 2):
        p, q = kids[j], kids[j + 1]
        for lp in p.leaf_paths():
            for lq in q.leaf_paths():
                out.append([(n.a, n.b) for n in reversed(lp)] + [(n.a, n.b) for n in lq])
    return out


def search(M: int, config: SearchConfig | None = None) -> SearchResult:
    """Run the tree search for candidate biminimal chains with denominators up to ``M``."""
    if M < 1:
        raise ValueError("M must be at least 1")
    cfg = config or SearchConfig()
    log = cfg.progress_stream or sys.stderr
    t0 = time.perf_counter()
    roots = roots_naive(M) if cfg.enumerator == "naive" else roots_fast(M)
    stats = SearchStats(roots=len(roots))
    root = SearchNode(0, 0, 0, 0)
    jobs = [(M, cfg.enumerator, i, rt) for i, rt in enumerate(roots, start=1)]
    if cfg.parallel and cfg.parallel > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel) as pool:
            results: Iterable = pool.map(_process_root_star, jobs, chunksize=1)
            results = list(results)
    else:
        results = map(_process_root_star, jobs)
    for n, (nodes, st) in enumerate(results, start=1):
        root.children.extend(nodes)
        stats.inserted += st.inserted
        stats.expanded += st.expanded
        stats.max_depth = max(stats.max_depth, st.max_depth)
        if cfg.progress:
            log.write(f"[search M={M}] root {n}/{len(roots)} kept={len(root.children) // 2} "
                      f"expanded={stats.expanded} t={time.perf_counter() - t0:.1f}s\n")
            log.flush()
    seconds = time.perf_counter() - t0
    return SearchResult(M, root, stats, seconds, candidate_sequences(root))


def words_for_sequence(seq: Sequence[tuple[int, int]]) -> list[GenWord]:
    """Both alternating sign patterns of a candidate symbol sequence."""
    out = []
    for first in (1, -1):
        letters = tuple((Fraction(a, b), first * (-1) ** i) for i, (a, b) in enumerate(seq))
        try:
            out.append(GenWord(letters))
        except ValueError:
            pass
    return out


def negate_word(w: GenWord) -> GenWord:
    """Image under r -> -r (conjugation by diag(1, -1))."""
    return GenWord(tuple((-r, e) for r, e in w.letters))


def flip_word(w: GenWord) -> GenWord:
    """Image under the automorphism t -> t^-1 composed with r -> -r: g[r] -> g[r]^-1."""
    return GenWord(tuple((r, -e) for r, e in w.letters))


def _orbit_key(w: GenWord, with_symmetries: bool) -> tuple:
    forms = [w, w.inverse()]
    if with_symmetries:
        forms += [negate_word(f) for f in forms]
        forms += [flip_word(f) for f in forms]
    return min(tuple((r.numerator, r.denominator, e) for r, e in f.letters) for f in forms)


@dataclass
class VerifiedChains:
    certificates: list[BiminimalCertificate]
    candidates: int
    rejected: int

    def words(self) -> list[GenWord]:
        return [c.word for c in self.certificates]

    @property
    def raw_count(self) -> int:
        return len(self.certificates)

    def orbit_count(self, with_symmetries: bool = False) -> int:
        """Classes under inversion, and optionally under r -> -r and g[r] -> g[r]^-1."""
        return len({_orbit_key(w, with_symmetries) for w in self.words()})

    def orbit_representatives(self, with_symmetries: bool = True) -> list[BiminimalCertificate]:
        reps: dict = {}
        for c in self.certificates:
            reps.setdefault(_orbit_key(c.word, with_symmetries), c)
        return list(reps.values())

    def min_rd(self) -> int | None:
        return min((c.rd for c in self.certificates), default=None)


def verify_candidates(seqs: Iterable[Sequence[tuple[int, int]]], *, lift: bool = False) -> VerifiedChains:
    """Re-verify every candidate with exact mir determinants; keep distinct biminimal words."""
    words = [w for seq in seqs for w in words_for_sequence(seq)]
    certs: list[BiminimalCertificate] = []
    rejected = 0
    for w, chk in check_chains_shared(words):
        cert = _certificate(w, chk, lift)
        if cert.biminimal and not cert.trivial:
            certs.append(cert)
        else:
            rejected += 1
    return VerifiedChains(certs, len(words), rejected)
