"""Small square matrices over any commutative ring of Python objects."""
from __future__ import annotations

from itertools import permutations
from typing import Any, Callable, Sequence


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


class Matrix:
    """Immutable n x n matrix; entries only need ``+``, ``-``, ``*`` and ``==``."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence[Any]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int, one: Any = 1, zero: Any = 0) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def map(self, fn: Callable[[Any], Any]) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def __mul__(self, other) -> "Matrix":
        if not isinstance(other, Matrix):
            return self.map(lambda x: x * other)
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for k in range(1, n):
                    acc = acc + r[k] * c[k]
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __rmul__(self, scalar) -> "Matrix":
        return self.map(lambda x: scalar * x)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def det(self) -> Any:
        """Leibniz expansion; fine for n <= 3, which is all this package needs."""
        n = self.n
        total = None
        for p in permutations(range(n)):
            term = self.rows[0][p[0]]
            for i in range(1, n):
                term = term * self.rows[i][p[i]]
            if _perm_sign(p) < 0:
                term = -term
            total = term if total is None else total + term
        return total

    def minor(self, i: int, j: int) -> "Matrix":
        return Matrix([[x for c, x in enumerate(r) if c != j] for k, r in enumerate(self.rows) if k != i])

    def adjugate(self) -> "Matrix":
        n = self.n
        if n == 1:
            return Matrix([[self.rows[0][0] ** 0]])
        if n == 2:
            (a, b), (c, d) = self.rows
            return Matrix([[d, -b], [-c, a]])
        cof = [[self.minor(i, j).det() for j in range(n)] for i in range(n)]
        return Matrix([[cof[j][i] if (i + j) % 2 == 0 else -cof[j][i] for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    __str__ = __repr__
