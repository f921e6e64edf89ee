"""The quaternionic group Q of projective 2x2 matrices

    [[g1, g2], [-Phi*bar(g2), bar(g1)]],   Phi = 1 + t^-1 + t,

its elementary generators g[r], balance/type bookkeeping, and the
constructive reduction of an element to its (unique) reduced word.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

from .laurent import (
    ONE,
    PHI,
    ZERO,
    LaurentPoly,
    eval_zeta3,
)
from .matrix import Matrix


class NotQuaternionicError(ValueError):
    """The pair (g1, g2) does not give an element of Q."""


class ReductionError(RuntimeError):
    pass


def _integral_primitive(g1: LaurentPoly, g2: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, Fraction]:
    """Scale ``(g1, g2)`` by a rational ``q`` to integer coefficients of content 1.

    Returns the scaled pair and ``q``; the sign makes the top coefficient of
    ``g1`` positive.
    """
    raw = [v for p in (g1, g2) for v in p._c.values()]
    if all(type(v) is int for v in raw):
        g = gcd(*raw)
        if g1.highest_coeff() < 0:
            g = -g
        if g == 1:
            return g1, g2, Fraction(1)
        return (LaurentPoly._raw({e: v // g for e, v in g1._c.items()}),
                LaurentPoly._raw({e: v // g for e, v in g2._c.items()}),
                Fraction(1, g))
    else:
        vals = [Fraction(v) for v in raw]
        den = lcm(*(v.denominator for v in vals))
        num = gcd(*(int(v * den) for v in vals))
        q = Fraction(den, num)
    if g1.highest_coeff() < 0:
        q = -q
    return g1 * q, g2 * q, q


class QElement:
    """An element of Q stored by the first row of its minimal integral representative.

    Two representatives of the same projective class with the unitary shape
    differ by a nonzero rational scalar only, so ``(g1, g2)`` scaled to
    integer coefficients with content 1 and positive top coefficient of
    ``g1`` is a complete normal form.
    """

    __slots__ = ("g1", "g2", "det", "scale")

    def __init__(self, g1: LaurentPoly, g2: LaurentPoly, *, check: bool = True):
        if g1.is_zero():
            raise NotQuaternionicError("g1 = 0 is impossible in Q")
        n1, n2, q = _integral_primitive(g1, g2)
        self.g1 = n1
        self.g2 = n2
        #: the rational ``q`` with (self.g1, self.g2) = q * (g1, g2)
        self.scale = q
        d = n1 * n1.bar() + PHI * n2 * n2.bar()
        if check and not d.is_constant():
            raise NotQuaternionicError(f"g1*bar(g1) + Phi*g2*bar(g2) = {d} is not constant")
        c = Fraction(d.constant_term())
        self.det = int(c) if c.denominator == 1 else c
        if check and self.det <= 0:
            raise NotQuaternionicError(f"determinant {self.det} is not positive")

    @classmethod
    def identity(cls) -> "QElement":
        return cls(ONE, ZERO)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "QElement":
        g1, g2 = m[0, 0], m[0, 1]
        if m[1, 0] != -(PHI * g2.bar()) or m[1, 1] != g1.bar():
            # a scalar multiple by a unit c*t^k with k != 0 is also accepted
            raise NotQuaternionicError("matrix does not have the shape [[g1, g2], [-Phi*bar(g2), bar(g1)]]")
        return cls(g1, g2)

    def matrix(self) -> Matrix:
        return Matrix([[self.g1, self.g2], [-(PHI * self.g2.bar()), self.g1.bar()]])

    # -- group structure -------------------------------------------------
    def __mul__(self, other: "QElement") -> "QElement":
        a1, a2 = self.g1, self.g2
        b1, b2 = other.g1, other.g2
        c1 = a1 * b1 - PHI * a2 * b2.bar()
        c2 = a1 * b2 + a2 * b1.bar()
        return QElement(c1, c2, check=False)._with_det(self.det * other.det)

    def _with_det(self, det_before_scaling) -> "QElement":
        # det of q*B is q^2 det B; skip recomputing the norm polynomial
        d = Fraction(det_before_scaling) * self.scale * self.scale
        self.det = int(d) if d.denominator == 1 else d
        return self

    def inverse(self) -> "QElement":
        # adjugate of the unitary-shaped representative keeps the shape
        return QElement(self.g1.bar(), -self.g2, check=False)._with_det(self.det)

    def __pow__(self, m: int) -> "QElement":
        base = self if m >= 0 else self.inverse()
        out = QElement.identity()
        for _ in range(abs(m)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QElement):
            return NotImplemented
        return self.g1 == other.g1 and self.g2 == other.g2

    def __hash__(self) -> int:
        return hash((self.g1, self.g2))

    def is_identity(self) -> bool:
        return self.g2.is_zero() and self.g1 == ONE

    def rd(self) -> int:
        """Relative degree of ``g1``."""
        return self.g1.relative_degree()

    def __repr__(self) -> str:
        return f"QElement(g1={self.g1}, g2={self.g2})"

    def to_json(self) -> dict:
        return {"g1": str(self.g1), "g2": str(self.g2), "det": self.det}


def q_mul(x: QElement, y: QElement) -> QElement:
    return x * y


def q_inv(x: QElement) -> QElement:
    return x.inverse()


# -- elementary generators -----------------------------------------------------

def elementary_rep(r) -> tuple[LaurentPoly, LaurentPoly]:
    """First row ``(t - r^2, r)`` of ``g[r]``."""
    r = Fraction(r)
    return LaurentPoly({1: 1, 0: -r * r}), LaurentPoly.constant(r)


def elementary_matrix(r) -> Matrix:
    r = Fraction(r)
    g1, g2 = elementary_rep(r)
    return Matrix([[g1, g2], [-(PHI * g2), g1.bar()]])


def elementary_det(r) -> Fraction:
    r = Fraction(r)
    return 1 + r**2 + r**4


def elementary_gen(r) -> QElement:
    return QElement(*elementary_rep(r))


def gen_power_rep(r, m: int) -> tuple[LaurentPoly, LaurentPoly]:
    """First row of ``g[r]^m`` (``m > 0``) or ``(d g[r]^-1)^|m|`` (``m < 0``).

    Uses Chebyshev-like polynomials chi_n with chi_0 = 0, chi_1 = 1,
    chi_{n+1} = x0 chi_n - d chi_{n-1}, where x0 = t + t^-1 - 2r^2 is the trace
    and d = 1 + r^2 + r^4.
    """
    r = Fraction(r)
    if m == 0:
        return ONE, ZERO
    n = abs(m)
    d = elementary_det(r)
    x0 = LaurentPoly({-1: 1, 0: -2 * r * r, 1: 1})
    chi_prev, chi = ZERO, ONE
    for _ in range(n - 1):
        chi_prev, chi = chi, x0 * chi - chi_prev * d
    g1 = LaurentPoly({1: 1, 0: -r * r}) * chi - chi_prev * d
    g2 = chi * r
    if m > 0:
        return g1, g2
    return g1.bar(), -g2


def gen_power(r, m: int) -> QElement:
    return QElement(*gen_power_rep(r, m))


# -- balance and type -------------------------------------------------------------

def balance_kind(x: QElement) -> str | None:
    """``"upper"``, ``"lower"`` or None (unbalanced, including g2 = 0)."""
    if x.g2.is_zero():
        return None
    m1, n1, m2, n2 = x.g1.low, x.g1.high, x.g2.low, x.g2.high
    if m1 == m2 and n1 == n2 + 1:
        return "upper"
    if m1 == m2 - 1 and n1 == n2:
        return "lower"
    return None


def right_mul_g0_power(x: QElement, k: int) -> QElement:
    """``x * g[0]^k``; on the first row this is ``(g1 t^k, g2 t^-k)``."""
    out = QElement(x.g1.shift(k), x.g2.shift(-k), check=False)
    out.det = x.det
    return out


def balanced_companion(x: QElement) -> tuple[QElement, int]:
    if x.g2.is_zero():
        raise ValueError("elements with g2 = 0 have no balanced companion")
    k = (x.g2.high - x.g1.high + 1) // 2
    y = right_mul_g0_power(x, k)
    assert balance_kind(y) is not None, "balanced companion failed to balance"
    return y, k


def type_of(x: QElement) -> Fraction:
    if x.g2.is_zero():
        return Fraction(0)
    y, _ = balanced_companion(x)
    a0 = Fraction(y.g1.lowest_coeff())
    b0 = Fraction(y.g2.lowest_coeff())
    if balance_kind(y) == "upper":
        return -a0 / b0
    return -b0 / a0


# -- words ---------------------------------------------------------------------------

def fmt_rational(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class GenWord:
    """A freely reduced word ``g[r1]^e1 g[r2]^e2 ...`` with adjacent ``r`` distinct."""

    letters: tuple[tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        letters = tuple((Fraction(r), int(e)) for r, e in self.letters)
        for (r, e) in letters:
            if e == 0:
                raise ValueError("zero exponent in a generator word")
        for (r1, _), (r2, _) in zip(letters, letters[1:]):
            if r1 == r2:
                raise ValueError(f"word is not freely reduced at g[{fmt_rational(r1)}]")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def reduced(cls, letters: Iterable[tuple[Fraction, int]]) -> "GenWord":
        """Freely reduce an arbitrary letter sequence."""
        stack: list[list] = []
        for r, e in letters:
            r = Fraction(r)
            if e == 0:
                continue
            if stack and stack[-1][0] == r:
                stack[-1][1] += e
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([r, e])
        return cls(tuple((r, e) for r, e in stack))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def inverse(self) -> "GenWord":
        return GenWord(tuple((r, -e) for r, e in reversed(self.letters)))

    def __mul__(self, other: "GenWord") -> "GenWord":
        return GenWord.reduced(self.letters + other.letters)

    def __str__(self) -> str:
        return format_word(self)

    def to_json(self) -> list[dict]:
        return [{"r": fmt_rational(r), "e": e} for r, e in self.letters]


def format_word(w: GenWord) -> str:
    out = []
    for r, e in w.letters:
        s = f"g[{fmt_rational(r)}]"
        if e != 1:
            s += f"^{e}"
        out.append(s)
    return " ".join(out)


_LETTER = re.compile(r"g\[\s*([+-]?\d+(?:\s*/\s*\d+)?)\s*\](?:\s*\^\s*\(?\s*([+-]?\d+)\s*\)?)?")


def parse_word(text: str, *, reduce: bool = False) -> GenWord:
    """Parse ``g[-1] g[2]^-1 g[-1/3]`` or the JSON form ``[{"r": "-1", "e": 1}, ...]``.

    Unless ``reduce`` is set, a word that is not freely reduced is rejected.
    """
    s = text.strip()
    if s.startswith("["):
        data = json.loads(s)
        letters = [(Fraction(str(d["r"]).replace(" ", "")), int(d.get("e", 1))) for d in data]
    else:
        letters = []
        pos = 0
        while pos < len(s):
            if s[pos].isspace():
                pos += 1
                continue
            m = _LETTER.match(s, pos)
            if not m:
                raise ValueError(f"cannot parse generator word at {s[pos:pos + 20]!r}")
            r = Fraction(m.group(1).replace(" ", ""))
            e = int(m.group(2)) if m.group(2) else 1
            letters.append((r, e))
            pos = m.end()
    if reduce:
        return GenWord.reduced(letters)
    return GenWord(tuple(letters))


def eval_word(w: GenWord) -> QElement:
    out = QElement.identity()
    for r, e in w.letters:
        out = out * gen_power(r, e)
    return out


def reduce_to_word(x: QElement) -> GenWord:
    """Write ``x`` as a reduced word in elementary generators.

    Each round balances ``x`` with a power of g[0], reads the type ``r`` and
    peels ``g[r]`` (upper-balanced) or ``g[r]^-1`` (lower-balanced) off the
    right, which strictly lowers the relative degree.
    """
    suffix: list[tuple[Fraction, int]] = []
    cur = x
    bound = cur.rd() + 1
    for _ in range(bound + 1):
        if cur.g2.is_zero():
            g1 = cur.g1
            if not g1.is_monomial():
                raise ReductionError(f"g2 = 0 but g1 = {g1} is not a monomial; not in Q")
            suffix.append((Fraction(0), g1.low))
            return GenWord.reduced(reversed(suffix))
        rd_before = cur.rd()
        y, k = balanced_companion(cur)
        r = type_of(y)
        if balance_kind(y) == "upper":
            nxt = y * elementary_gen(r).inverse()
            e = 1
        else:
            nxt = y * elementary_gen(r)
            e = -1
        if nxt.rd() >= rd_before:
            raise ReductionError(f"relative degree did not drop ({rd_before} -> {nxt.rd()})")
        # cur = nxt * g[r]^e * g[0]^-k ; collected right to left
        suffix.append((Fraction(0), -k))
        suffix.append((r, e))
        cur = nxt
    raise ReductionError("reduction did not terminate within its relative-degree bound")


# -- integral subgroup -------------------------------------------------------------

@dataclass
class IntegralReport:
    member: bool
    det_one_representative: bool
    det: int
    det_is_square: bool
    m12_nonzero: bool

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "det_one_representative": self.det_one_representative,
            "det": self.det,
            "det_is_square": self.det_is_square,
            "m12_nonzero": self.m12_nonzero,
        }


def in_integral_subgroup(x: QElement) -> IntegralReport:
    """Membership in U = Q intersected with PGL(2, Z[t, t^-1]).

    Integral representatives are integer multiples ``n * mir`` of the stored
    content-1 representative, with determinant ``n^2 * det``; a unit
    determinant is possible iff ``det`` is a square ``s^2`` with ``mir / s``
    still integral, which for content 1 means ``det == 1``.
    """
    d = x.det
    s = isqrt(d)
    square = s * s == d
    member = square and all(v % s == 0 for p in (x.g1, x.g2) for _, v in p.items())
    det_one = d == 1
    if member != det_one:
        raise AssertionError("U and U^1 membership disagree")
    return IntegralReport(member, det_one, d, square, not x.g2.is_zero())


def sextant_representatives(x: QElement) -> list[tuple[int, int]]:
    """Pairs ``(sign, j)`` such that ``sign * t^-j * B`` has ``B11(z3) = 1``, j in {0, 1, 2}.

    For an element of U^1 exactly one pair qualifies; that rescaled matrix
    lies in the image of the formal Burau group.
    """
    if x.det != 1:
        raise ValueError("only defined for elements with a determinant-one integral representative")
    hits = []
    for sign in (1, -1):
        for j in range(3):
            if eval_zeta3(x.g1.shift(-j) * sign) == 1:
                hits.append((sign, j))
    return hits
