"""The 3x3 Burau picture: generators, formal Burau group membership, and the
two rank-reducing homomorphisms ``phi`` (to 2x2 over Z[t, t^-1, (1+t)^-1])
and ``rho`` (to GL(2, Z) through t = -1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import (
    CYCLOTOMIC3,
    ONE,
    ONE_PLUS_T,
    PHI,
    T,
    ZERO,
    LaurentPoly,
    LocalizedPoly,
    derivative_eval_neg1,
    eval_int,
    eval_zeta3,
    exact_div,
)
from .matrix import Matrix


class NotInFormalBurauError(ValueError):
    """Raised when an operation defined only on the formal Burau group gets a non-member."""


def lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x)


def burau_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = Matrix([[lp(x) for x in r] for r in rows])
    if m.n != 3:
        raise ValueError("Burau matrices are 3x3")
    return m


IDENTITY = burau_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
V = (T, T * T, T ** 3)
J3 = burau_matrix([
    [1, -T.bar(), -T.bar()],
    [-T, 1, -T.bar()],
    [-T, -T, 1],
])
XI = burau_matrix([
    [T + T * T, 0, -1],
    [-1, T, -1],
    [-1, -1, -1],
])

_SIGMA = {
    1: burau_matrix([[1 - T, T, 0], [1, 0, 0], [0, 0, 1]]),
    2: burau_matrix([[1, 0, 0], [0, 1 - T, T], [0, 1, 0]]),
}
_SIGMA_INV = {
    1: burau_matrix([[0, 1, 0], [T.bar(), 1 - T.bar(), 0], [0, 0, 1]]),
    2: burau_matrix([[1, 0, 0], [0, 0, 1], [0, T.bar(), 1 - T.bar()]]),
}


def burau_sigma(i: int) -> Matrix:
    if i not in _SIGMA:
        raise ValueError(f"B_3 has generators sigma_1, sigma_2; got {i}")
    return _SIGMA[i]


def burau_word(word: Iterable[int]) -> Matrix:
    """Product of generator images for a braid word such as ``[1, 2, -1]``."""
    out = IDENTITY
    for letter in word:
        if letter in (1, 2):
            out = out * _SIGMA[letter]
        elif letter in (-1, -2):
            out = out * _SIGMA_INV[-letter]
        else:
            raise ValueError(f"braid letters are +-1 or +-2; got {letter}")
    return out


DELTA = burau_word([1, 2, 1, 1, 2, 1])


def bar_matrix(a: Matrix) -> Matrix:
    return a.map(lambda x: x.bar())


def eval_matrix(a: Matrix, x) -> Matrix:
    return a.map(lambda p: eval_int(p, x))


def unit_exponent(p: LaurentPoly) -> tuple[int, int] | None:
    """``(sign, k)`` if ``p = sign * t^k``, else None."""
    if not p.is_monomial():
        return None
    (k, c), = p.items()
    if c not in (1, -1):
        return None
    return c, k


def inverse(a: Matrix) -> Matrix:
    """Inverse over Z[t, t^-1]; requires ``det(a) = +-t^k``."""
    d = a.det()
    if unit_exponent(d) is None:
        raise ValueError(f"determinant {d} is not a unit of Z[t, t^-1]")
    dinv = d ** -1
    return a.adjugate().map(lambda x: x * dinv)


# -- membership -----------------------------------------------------------

@dataclass
class MembershipReport:
    member: bool
    conditions: dict[str, bool | None]
    det: LaurentPoly
    det_exponent: int | None
    perm_at_1: tuple[tuple[int, ...], ...] | None = None
    consistency_error: str | None = None

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v is False]

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "conditions": dict(self.conditions),
            "det_exponent": self.det_exponent,
            "det": str(self.det),
            "consistency_error": self.consistency_error,
        }


def _all_laurent_integral(a: Matrix) -> bool:
    return all(x.is_integral() for r in a for x in r)


def is_in_formal_burau(a: Matrix) -> MembershipReport:
    """Check the defining conditions of the formal Burau group.

    ``row_sum``: A 1 = 1; ``v_fixed``: v A = v; ``unitary``:
    bar(A) J A^T = J; ``det_form``: det A = (-t)^k, which for integer
    entries also gives invertibility over Z[t, t^-1].
    """
    row_sum = all(r[0] + r[1] + r[2] == ONE for r in a)
    v_fixed = all(V[0] * a[0, j] + V[1] * a[1, j] + V[2] * a[2, j] == V[j] for j in range(3))
    unitary = bar_matrix(a) * J3 * a.transpose() == J3
    d = a.det()
    ue = unit_exponent(d)
    det_form = ue is not None and ue[0] == (-1) ** (ue[1] % 2)
    conditions = {
        "row_sum": row_sum,
        "v_fixed": v_fixed,
        "unitary": unitary,
        "det_form": det_form,
        "perm_at_1": None,
    }
    member = row_sum and v_fixed and unitary and det_form and _all_laurent_integral(a)
    return MembershipReport(member, conditions, d, ue[1] if ue else None)


def _permutation_rows(b: Matrix) -> bool:
    vals = [[int(x) for x in r] for r in b]
    if any(x not in (0, 1) for r in vals for x in r):
        return False
    return all(sum(r) == 1 for r in vals) and all(sum(c) == 1 for c in zip(*vals))


def check_gamma(a: Matrix) -> MembershipReport:
    """Formal Burau membership plus ``A|_{t=1}`` in the permutation copy of S_3.

    On members the extra condition is automatic; a member failing it is
    reported through ``consistency_error`` instead of silently disagreeing.
    """
    rep = is_in_formal_burau(a)
    at1 = eval_matrix(a, 1)
    perm = _permutation_rows(at1)
    rep.conditions["perm_at_1"] = perm
    rep.perm_at_1 = tuple(tuple(int(x) for x in r) for r in at1)
    if rep.member and not perm:
        rep.consistency_error = "member of the formal Burau group with A(1) outside S_3"
    rep.member = rep.member and perm
    return rep


def commutes_with_delta(a: Matrix) -> bool:
    """Cross-check only: commutation with beta(Delta), an alternative to v A = v."""
    return a * DELTA == DELTA * a


def require_member(a: Matrix) -> MembershipReport:
    rep = is_in_formal_burau(a)
    if not rep.member:
        raise NotInFormalBurauError(f"not in the formal Burau group; failed {rep.failed()}")
    return rep


# -- f / g coordinates ------------------------------------------------------

def _g(f: LaurentPoly) -> LocalizedPoly:
    return LocalizedPoly(f.shift(-1), 1)


@dataclass(frozen=True)
class FCoords:
    f11: LaurentPoly
    f12: LaurentPoly
    f21: LaurentPoly
    f22: LaurentPoly
    g11: LocalizedPoly = field(init=False)
    g12: LocalizedPoly = field(init=False)
    g21: LocalizedPoly = field(init=False)
    g22: LocalizedPoly = field(init=False)

    def __post_init__(self):
        for name in ("11", "12", "21", "22"):
            object.__setattr__(self, "g" + name, _g(getattr(self, "f" + name)))


def f_coords(a: Matrix) -> FCoords:
    """Upper-left 2x2 block of ``A xi``, checked against the functional equations."""
    ax = a * XI
    fc = FCoords(ax[0, 0], ax[0, 1], ax[1, 0], ax[1, 1])
    for k in range(2):
        if ax[k, 0] != a[k, 0] * CYCLOTOMIC3 - 1 or ax[k, 1] != a[k, 0] + a[k, 1] * ONE_PLUS_T - 1:
            raise NotInFormalBurauError("row sums are not 1; f-coordinates undefined")
    rhs9 = LaurentPoly({-1: 1, 0: 2, 1: 1})
    for fk1, fk2 in ((fc.f11, fc.f12), (fc.f21, fc.f22)):
        if fk1 * fk1.bar() + PHI * fk2 * fk2.bar() != rhs9:
            raise NotInFormalBurauError("norm equation for an f-row fails")
    if ONE_PLUS_T + T * T * (fc.f11.bar() * fc.f21 + PHI * fc.f12.bar() * fc.f22) != ZERO:
        raise NotInFormalBurauError("orthogonality equation between f-rows fails")
    if fc.f11 * fc.f22 - fc.f12 * fc.f21 != a.det() * T * T * ONE_PLUS_T:
        raise NotInFormalBurauError("determinant identity for f-coordinates fails")
    return fc


# -- phi --------------------------------------------------------------------

@dataclass(frozen=True)
class PhiImage:
    """``phi(A)`` stored as ``(g11, g12, det)``; the second row is implied."""

    g11: LocalizedPoly
    g12: LocalizedPoly
    det: LaurentPoly

    def matrix(self) -> Matrix:
        d = LocalizedPoly(self.det)
        return Matrix([
            [self.g11, self.g12],
            [-(d * LocalizedPoly(PHI) * self.g12.bar()), d * self.g11.bar()],
        ])

    def is_laurent(self) -> bool:
        return self.g11.is_laurent() and self.g12.is_laurent()

    def is_integral(self) -> bool:
        return self.g11.is_integral() and self.g12.is_integral()


def phi_matrix_definition(a: Matrix) -> Matrix:
    """``phi`` straight from its defining formula, without the unitary shortcut."""
    fc = f_coords(a)
    tinv = LocalizedPoly(T.bar())
    opt = LocalizedPoly(ONE_PLUS_T)
    return Matrix([
        [fc.g11, fc.g12],
        [tinv * fc.g11 + opt * fc.g21, tinv * fc.g12 + opt * fc.g22],
    ])


def phi(a: Matrix) -> PhiImage:
    require_member(a)
    fc = f_coords(a)
    return PhiImage(fc.g11, fc.g12, a.det())


# -- rho --------------------------------------------------------------------

def rho(a: Matrix) -> Matrix:
    """2x2 integer matrix from the corner entries of ``A`` at ``t = -1``."""
    require_member(a)
    b = eval_matrix(a, -1)
    return Matrix([[1 - b[0, 2], 1 - b[0, 0]], [1 - b[2, 2], 1 - b[2, 0]]])


# -- reconstruction -----------------------------------------------------------

@dataclass
class ReconstructionResult:
    matrix: Matrix | None
    non_integral: list[str]
    zeta3_ok: bool

    @property
    def ok(self) -> bool:
        return self.matrix is not None


def _div_c3(x: LocalizedPoly) -> LocalizedPoly | None:
    q = exact_div(x.num, CYCLOTOMIC3)
    return None if q is None else LocalizedPoly(q, x.den)


def reconstruct_from_g(g11, g12, det: LaurentPoly) -> ReconstructionResult:
    """Rebuild the 3x3 matrix whose ``phi`` image has first row ``(g11, g12)``.

    Succeeds iff all nine entries come out as integer Laurent polynomials.
    """
    ue = unit_exponent(det)
    if ue is None or ue[0] != (-1) ** (ue[1] % 2):
        raise ValueError(f"determinant must be (-t)^k, got {det}")
    g11 = g11 if isinstance(g11, LocalizedPoly) else LocalizedPoly(g11)
    g12 = g12 if isinstance(g12, LocalizedPoly) else LocalizedPoly(g12)
    d = LocalizedPoly(det)
    t = LocalizedPoly(T)
    c3 = LocalizedPoly(CYCLOTOMIC3)
    inv_tt1 = LocalizedPoly(T.bar(), 1)
    tt1 = LocalizedPoly(T + T * T)
    g21 = -(g11 + g12.bar() * c3 * d) * inv_tt1
    g22 = (-g12 + g11.bar() * t * d) * inv_tt1

    zeta_ok = g11.is_laurent() and eval_zeta3(g11.num) == 1
    entries = {}
    bad = []
    for name, num, extra in (
        ("A11", 1 + g11 * tt1, None),
        ("A12", t * (1 - g11), t * g12),
        ("A21", 1 + g21 * tt1, None),
        ("A22", t * (1 - g21), t * g22),
    ):
        q = _div_c3(num)
        if q is None:
            bad.append(name)
            continue
        if extra is not None:
            q = q + extra
        if not q.is_integral():
            bad.append(name)
            continue
        entries[name] = q.to_laurent()
    if bad:
        return ReconstructionResult(None, bad, zeta_ok)

    a11, a12, a21, a22 = (entries[k] for k in ("A11", "A12", "A21", "A22"))
    tinv2 = LaurentPoly.t(-2)
    a13 = 1 - a11 - a12
    a23 = 1 - a21 - a22
    a31 = tinv2 * (1 - a11 - T * a21)
    a32 = tinv2 * (T - a12 - T * a22)
    a33 = tinv2 * (-1 - T + T * T + a11 + a12 + T * a21 + T * a22)
    for name, x in (("A31", a31), ("A32", a32), ("A33", a33)):
        if not x.is_integral():
            bad.append(name)
    if bad:
        return ReconstructionResult(None, bad, zeta_ok)
    m = burau_matrix([[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]])
    return ReconstructionResult(m, [], zeta_ok)


# -- identities used as checks --------------------------------------------------

def f_values_at_one(a: Matrix) -> tuple[int, int]:
    """``(f11(1), f12(1))``; these satisfy x^2 + 3y^2 = 4 on members."""
    fc = f_coords(a)
    return eval_int(fc.f11, 1), eval_int(fc.f12, 1)


def corner_identity_sides(a: Matrix) -> tuple[Fraction, Fraction]:
    """Both sides of the t = -1 identity for ``1 - A33`` when ``phi(A)`` is integral.

    rhs = 2 g11'(-1) - 2 g12'(-1) + d'(-1) (g12(-1) - g11(-1)).
    """
    ph = phi(a)
    if not ph.is_laurent():
        raise ValueError("identity only applies when phi(A) has Laurent entries")
    g11, g12 = ph.g11.to_laurent(), ph.g12.to_laurent()
    lhs = 1 - eval_int(a[2, 2], -1)
    rhs = (
        2 * derivative_eval_neg1(g11)
        - 2 * derivative_eval_neg1(g12)
        + derivative_eval_neg1(ph.det) * (eval_int(g12, -1) - eval_int(g11, -1))
    )
    return Fraction(lhs), Fraction(rhs)


def format_matrix(a: Matrix) -> str:
    return "; ".join(", ".join(str(x) for x in r) for r in a)


def parse_matrix(text: str, n: int | None = None) -> Matrix:
    """Parse ``"a, b, c; d, e, f; g, h, i"`` into a matrix of Laurent polynomials."""
    rows = [r for r in text.strip().split(";") if r.strip()]
    m = Matrix([[LaurentPoly.parse(x) for x in r.split(",")] for r in rows])
    if n is not None and m.n != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    return m
