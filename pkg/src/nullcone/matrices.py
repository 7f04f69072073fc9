"""Immutable rational matrices and affine maps.

Column ``j`` of a matrix is the image of the basis vector ``e_j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg


def _frac(v) -> Fraction:
    if type(v) is Fraction:
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


_ZERO = Fraction(0)


class Matrix:
    __slots__ = ("n", "rows", "_hash", "_nz")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_frac(v) for v in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = rows
        self._hash = None
        self._nz = None

    @classmethod
    def _raw(cls, rows) -> "Matrix":
        """Wrap rows that already hold Fractions (or ints), without validation."""
        self = object.__new__(cls)
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        self._hash = None
        self._nz = None
        return self

    def nonzero_rows(self) -> tuple:
        """Per row, the ``(column, value)`` pairs with nonzero value."""
        if self._nz is None:
            self._nz = tuple(tuple((j, v) for j, v in enumerate(r) if v) for r in self.rows)
        return self._nz

    @classmethod
    def zero(cls, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "Matrix":
        """The matrix with a single nonzero entry at row ``i``, column ``j``."""
        return cls([[value if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])

    @classmethod
    def from_sparse(cls, n: int, entries: Iterable) -> "Matrix":
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, j, v in entries:
            rows[i][j] += _frac(v)
        return cls(rows)

    @classmethod
    def from_vector(cls, n: int, vec: dict) -> "Matrix":
        """Inverse of :meth:`vector` (keys are flat row-major indices)."""
        rows = [[Fraction(0)] * n for _ in range(n)]
        for k, v in vec.items():
            rows[k // n][k % n] = v
        return cls(rows)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def vector(self) -> dict:
        """Sparse row-major flattening."""
        n = self.n
        return {i * n + j: v for i, r in enumerate(self.nonzero_rows()) for j, v in r}

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows])

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n = self.n
        theirs = other.nonzero_rows()
        out = []
        for row in self.nonzero_rows():
            acc = [_ZERO] * n
            for k, a in row:
                for j, b in theirs[k]:
                    acc[j] += a * b
            out.append(acc)
        return Matrix._raw(out)

    def apply(self, v: Sequence) -> list:
        return [sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix) or other.n != self.n:
            raise ValueError(f"matrix dimensions differ: {self.n} vs {getattr(other, 'n', None)}")

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def is_zero(self) -> bool:
        return not any(self.nonzero_rows())

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def __pow__(self, k: int) -> "Matrix":
        out = Matrix.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def rank(self) -> int:
        return linalg.rank({j: v for j, v in enumerate(r) if v} for r in self.rows)

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def to_strings(self) -> list:
        return [[str(v) for v in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"Matrix({self.to_strings()})"


def bracket(A: Matrix, B: Matrix) -> Matrix:
    """``[A, B] = AB - BA``."""
    A._check(B)
    n = A.n
    out = [[_ZERO] * n for _ in range(n)]
    a_rows, b_rows = A.nonzero_rows(), B.nonzero_rows()
    for i in range(n):
        acc = out[i]
        for k, a in a_rows[i]:
            for j, b in b_rows[k]:
                acc[j] += a * b
        for k, b in b_rows[i]:
            for j, a in a_rows[k]:
                acc[j] -= b * a
    return Matrix._raw(out)


class AffineMap:
    """``v ↦ linear·v + translation``."""

    __slots__ = ("linear", "translation")

    def __init__(self, linear: Matrix, translation: Sequence | None = None):
        n = linear.n
        t = tuple(_frac(v) for v in translation) if translation is not None else (Fraction(0),) * n
        if len(t) != n:
            raise ValueError(f"translation has length {len(t)}, expected {n}")
        self.linear = linear
        self.translation = t

    @property
    def n(self) -> int:
        return self.linear.n

    def is_linear(self) -> bool:
        return not any(self.translation)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineMap) and self.linear == other.linear
                and self.translation == other.translation)

    def __hash__(self) -> int:
        return hash((self.linear, self.translation))

    def __repr__(self) -> str:
        return f"AffineMap({self.linear!r}, {[str(v) for v in self.translation]})"


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending ``e_j`` to ``e_{perm[j]}``."""
    n = len(perm)
    return Matrix.from_sparse(n, [(perm[j], j, 1) for j in range(n)])
