"""Exact Laurent polynomials over Z and Q.

A :class:`LaurentPoly` is an immutable sparse map ``exponent -> coefficient``.
Coefficients are Python ``int`` whenever they are integral and
``fractions.Fraction`` otherwise, so integrality of a polynomial can be read
off the stored values directly.  No floating point is ever involved.

:class:`LocalizedPoly` extends this to the ring Z[t, t^-1, (1+t)^-1] (or its
rational counterpart), which is where the 2x2 images of 3x3 Burau matrices
live.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    """Return ``c`` as an int if it is integral, else as a Fraction."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"inexact coefficient {c!r}; only int and Fraction are allowed")


class LaurentPoly:
    """A Laurent polynomial in ``t`` with exact coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _norm(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        # trusted constructor: c already canonical
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c: Coeff) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Coeff, k: int) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def t(cls, k: int = 1) -> "LaurentPoly":
        return cls({k: 1})

    @classmethod
    def from_list(cls, coeffs: Iterable[Coeff], low: int = 0) -> "LaurentPoly":
        """Dense constructor: ``coeffs[i]`` is the coefficient of ``t^(low+i)``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_laurent(text)

    # -- inspection ---------------------------------------------------
    def coeffs(self) -> dict[int, Coeff]:
        return dict(self._c)

    def items(self) -> Iterator[tuple[int, Coeff]]:
        return iter(sorted(self._c.items()))

    def __getitem__(self, k: int) -> Coeff:
        return self._c.get(k, 0)

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self._c)

    @property
    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest exponent")
        return max(self._c)

    def lowest_coeff(self) -> Coeff:
        return self._c[self.low]

    def highest_coeff(self) -> Coeff:
        return self._c[self.high]

    def is_integral(self) -> bool:
        return all(type(v) is int for v in self._c.values())

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def constant_term(self) -> Coeff:
        return self._c.get(0, 0)

    def content(self) -> Fraction:
        """Positive rational ``q`` with ``self / q`` integral of content 1."""
        if not self._c:
            raise ValueError("content of the zero polynomial")
        vals = [Fraction(v) for v in self._c.values()]
        den = lcm(*(v.denominator for v in vals))
        num = gcd(*(int(v * den) for v in vals))
        return Fraction(num, den)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._c) > len(self._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        c = dict(a)
        for k, v in b.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = _norm(s)
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            other = _norm(other)
            return LaurentPoly._raw({k: _norm(v * other) for k, v in self._c.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, Coeff] = {}
        get = c.get
        for i, u in self._c.items():
            for j, v in other._c.items():
                k = i + j
                c[k] = get(k, 0) + u * v
        return LaurentPoly._raw({k: _norm(v) for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_monomial():
                (k, v), = self._c.items()
                return LaurentPoly({k * n: Fraction(1, 1) / Fraction(v) ** (-n)})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale(self, q: Coeff) -> "LaurentPoly":
        return self * q

    def __truediv__(self, other) -> "LaurentPoly":
        """Exact division; raises ``ValueError`` when not divisible."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a Laurent polynomial by 0")
            return self * (Fraction(1) / Fraction(other))
        q = exact_div(self, _coerce(other))
        if q is None:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def bar(self) -> "LaurentPoly":
        """The involution ``t -> t^-1``."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    # -- evaluation ---------------------------------------------------
    def __call__(self, x) -> Coeff:
        return eval_int(self, x)

    def relative_degree(self) -> int:
        return self.high - self.low

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: k * v for k, v in self._c.items()})

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly._raw({0: _norm(x)} if x else {})
    return NotImplemented


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
T = LaurentPoly._raw({1: 1})
T_INV = LaurentPoly._raw({-1: 1})
#: 1 + t^-1 + t, the palindromic polynomial appearing in every unitary form here.
PHI = LaurentPoly._raw({-1: 1, 0: 1, 1: 1})
ONE_PLUS_T = LaurentPoly._raw({0: 1, 1: 1})
CYCLOTOMIC3 = LaurentPoly._raw({0: 1, 1: 1, 2: 1})


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """Return ``p / q`` if ``q`` divides ``p`` in Q[t, t^-1], else ``None``.

    Long division from the lowest exponent upward; ``q`` is shifted so that
    its lowest exponent is 0 and the quotient carries the shift back.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    qlow, qhigh = q.low, q.high
    lead = Fraction(q[qlow])
    rem = {k: Fraction(v) for k, v in p._c.items()}
    quot: dict[int, Fraction] = {}
    span = qhigh - qlow
    hi = p.high
    while rem:
        k = min(rem)
        if k + span > hi:
            return None
        c = rem[k] / lead
        e = k - qlow
        quot[e] = c
        for j, v in q._c.items():
            kk = e + j
            s = rem.get(kk, 0) - c * v
            if s:
                rem[kk] = s
            else:
                rem.pop(kk, None)
    return LaurentPoly(quot)


# -- evaluation ---------------------------------------------------------

def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def eval_int(p: LaurentPoly, x) -> Coeff:
    """Exact value of ``p`` at ``t = x`` for a nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("t = 0 is outside the domain of a Laurent polynomial")
    total = Fraction(0)
    for k, v in p._c.items():
        total += v * x**k
    return _norm(total)


@dataclass(frozen=True)
class EisensteinValue:
    """``a + b*z`` in Q(z) with ``z^2 + z + 1 = 0``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: "EisensteinValue") -> "EisensteinValue":
        return EisensteinValue(self.a + other.a, self.b + other.b)

    def __neg__(self) -> "EisensteinValue":
        return EisensteinValue(-self.a, -self.b)

    def __mul__(self, other: "EisensteinValue") -> "EisensteinValue":
        # (a + bz)(c + dz) = ac + (ad + bc)z + bd z^2,  z^2 = -1 - z
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinValue(a * c - b * d, a * d + b * c - b * d)

    def norm(self) -> Fraction:
        """Complex absolute value squared: a^2 - ab + b^2."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, EisensteinValue):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*z3"


_ZETA_POWERS = {0: (1, 0), 1: (0, 1), 2: (-1, -1)}


def eval_zeta3(p: LaurentPoly) -> EisensteinValue:
    """Image of ``p`` under ``t -> z``, a primitive cube root of unity.

    Exponents reduce modulo 3 (``t^-1 = t^2 = -1 - t`` at ``z``), so no field
    extension of the coefficient ring is needed.
    """
    a = Fraction(0)
    b = Fraction(0)
    for k, v in p._c.items():
        x, y = _ZETA_POWERS[k % 3]
        a += x * v
        b += y * v
    return EisensteinValue(a, b)


def relative_degree(p: LaurentPoly) -> int:
    if p.is_zero():
        raise ValueError("relative degree of the zero polynomial is undefined")
    return p.high - p.low


def derivative_eval_neg1(p: LaurentPoly) -> Coeff:
    """Exact value of dp/dt at t = -1."""
    total = 0
    for k, v in p._c.items():
        if k:
            total += v * k * (1 if (k - 1) % 2 == 0 else -1)
    return _norm(total)


# -- text format --------------------------------------------------------

def _fmt_coeff(c: Coeff) -> str:
    return str(c)


def format_laurent(p: LaurentPoly) -> str:
    """Render as signed ``c*t^k`` terms in ascending exponent order."""
    if p.is_zero():
        return "0"
    parts = []
    for k, v in p.items():
        neg = v < 0
        a = -v if neg else v
        if k == 0:
            body = _fmt_coeff(a)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if a == 1 else f"{_fmt_coeff(a)}*{var}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?P<var>t(?:\s*\^\s*(?:\(\s*(?P<pexp>[+-]?\d+)\s*\)|(?P<exp>[+-]?\d+)))?)?
        \s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the text format produced by :func:`format_laurent`.

    Accepts terms like ``3``, ``-t``, ``2*t^-3``, ``1/2*t^(2)``, ``t^4``.
    Repeated exponents are summed.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    coeffs: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        sign, coef, var = m.group("sign"), m.group("coef"), m.group("var")
        if coef is None and var is None:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at {pos}")
        if m.group("star") and var is None:
            raise ValueError(f"dangling '*' in {text!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        if var is None:
            k = 0
        else:
            e = m.group("pexp") or m.group("exp")
            k = int(e) if e is not None else 1
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(coeffs)


# -- the ring Z[t, t^-1, (1+t)^-1] ----------------------------------------

class LocalizedPoly:
    """``num / (1+t)^den`` with ``num`` a Laurent polynomial.

    Stored reduced: ``num`` is not divisible by ``1+t`` unless ``den == 0``.
    Divisibility by ``1+t`` is detected exactly by evaluating at ``t = -1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | int | Fraction, den: int = 0):
        num = _coerce(num)
        if den < 0:
            num = num * ONE_PLUS_T ** (-den)
            den = 0
        while den > 0 and (num.is_zero() or eval_int(num, -1) == 0):
            if num.is_zero():
                den = 0
                break
            num = exact_div(num, ONE_PLUS_T)
            den -= 1
        self.num = num
        self.den = den

    def is_laurent(self) -> bool:
        return self.den == 0

    def to_laurent(self) -> LaurentPoly:
        if self.den:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_integral(self) -> bool:
        return self.den == 0 and self.num.is_integral()

    def __add__(self, other) -> "LocalizedPoly":
        other = _loc(other)
        if other is NotImplemented:
            return NotImplemented
        d = max(self.den, other.den)
        n = self.num * ONE_PLUS_T ** (d - self.den) + other.num * ONE_PLUS_T ** (d - other.den)
        return LocalizedPoly(n, d)

    __radd__ = __add__

    def __neg__(self) -> "LocalizedPoly":
        return LocalizedPoly(-self.num, self.den)

    def __sub__(self, other) -> "LocalizedPoly":
        other = _loc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LocalizedPoly":
        other = _loc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LocalizedPoly":
        other = _loc(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalizedPoly(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def bar(self) -> "LocalizedPoly":
        # 1/(1+t^-1)^e = t^e/(1+t)^e
        return LocalizedPoly(self.num.bar().shift(self.den), self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = _loc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == 0:
            return str(self.num)
        d = "(1 + t)" if self.den == 1 else f"(1 + t)^{self.den}"
        return f"({self.num})/{d}"

    __repr__ = __str__


def _loc(x):
    if isinstance(x, LocalizedPoly):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return LocalizedPoly(x)
    return NotImplemented


def divide_by_t_one_plus_t(p: LaurentPoly) -> LocalizedPoly:
    """``p / (t(1+t))`` in the localized ring."""
    return LocalizedPoly(p.shift(-1), 1)
