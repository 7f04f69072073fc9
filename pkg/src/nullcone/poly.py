"""Exact multivariate polynomials over Q and the derivation action of End(V).

A polynomial is a sparse map from exponent tuples to nonzero Fractions.
Monomials of a fixed degree are ordered graded-lexicographically
(``x^2, x*y, y^2``); :func:`column_key` extends this to a single order on
all monomials with higher degrees first, which is the column order used by
every elimination in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product as _product
from typing import Iterable, Sequence

from .matrices import AffineMap, Matrix

Monomial = tuple


class DimensionError(ValueError):
    pass


def column_key(m: Monomial) -> tuple:
    """Sort key: higher degree first, then lexicographically larger first."""
    return (-sum(m),) + tuple(-e for e in m)


def key_monomial(key: tuple) -> Monomial:
    return tuple(-e for e in key[1:])


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent vectors of length ``n`` and total degree ``d`` in grlex order."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def monomials_up_to(n: int, d: int) -> list:
    out = []
    for k in range(d, -1, -1):
        out.extend(monomials_of_degree(n, k))
    return out


def default_names(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(n))


class Polynomial:
    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != n:
                    raise DimensionError(f"monomial {m} has length {len(m)}, expected {n}")
                if c:
                    clean[tuple(m)] = Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for {n} variables")
        return cls(n, {tuple(int(k == i) for k in range(n)): 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Polynomial":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def from_vector(cls, n: int, vec: dict) -> "Polynomial":
        """Inverse of :meth:`vector`."""
        return cls(n, {key_monomial(k): c for k, c in vec.items()})

    def vector(self) -> dict:
        """Sparse coefficient vector keyed by :func:`column_key`."""
        return {column_key(m): c for m, c in self.terms.items()}

    # basic queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.n, {m: c for m, c in self.terms.items() if sum(m) == d})

    def leading_form(self) -> "Polynomial":
        return self.homogeneous_part(self.degree())

    def homogeneous_parts(self) -> dict:
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.n, t) for d, t in sorted(out.items())}

    def multidegree(self, blocks: Sequence[Sequence[int]]) -> set:
        """Set of degree vectors with respect to groups of variable indices."""
        return {tuple(sum(m[i] for i in b) for b in blocks) for m in self.terms}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: column_key(t[0]))

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(self.n, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.n, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution
    def diff(self, i: int) -> "Polynomial":
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for {self.n} variables")
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                terms[tuple(mm)] = c * m[i]
        return Polynomial(self.n, terms)

    def gradient(self) -> list:
        return [self.diff(i) for i in range(self.n)]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise DimensionError(f"point has length {len(point)}, expected {self.n}")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` (all images share one ring)."""
        if len(images) != self.n:
            raise DimensionError(f"need {self.n} images, got {len(images)}")
        if not images:
            return self
        m_out = images[0].n
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        out = Polynomial.zero(m_out)
        for m, c in self.terms.items():
            t = Polynomial.constant(m_out, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            out = out + t
        return out

    def compose(self, M) -> "Polynomial":
        """``(f∘M)(v) = f(Mv + t)`` for a Matrix or AffineMap ``M``."""
        if isinstance(M, Matrix):
            M = AffineMap(M)
        if M.n != self.n:
            raise DimensionError(f"map acts on dimension {M.n}, polynomial on {self.n}")
        return self.substitute(affine_forms(M))

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def affine_forms(M: AffineMap) -> list:
    """The affine-linear forms ``x_i ↦ (M x + t)_i``."""
    n = M.n
    out = []
    for i in range(n):
        terms = {tuple(int(k == j) for k in range(n)): M.linear[i, j] for j in range(n)}
        terms[(0,) * n] = M.translation[i]
        out.append(Polynomial(n, terms))
    return out


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    return f.diff(i)


def derivation_apply(A: Matrix, f: Polynomial) -> Polynomial:
    """``D_A f = sum_{i,j} A[i,j] x_j ∂f/∂x_i``, i.e. ``v ↦ df(v)(Av)``."""
    if A.n != f.n:
        raise DimensionError(f"matrix is {A.n}x{A.n}, polynomial has {f.n} variables")
    n = f.n
    out: dict = {}
    for i in range(n):
        row = [(j, A[i, j]) for j in range(n) if A[i, j]]
        if not row:
            continue
        for m, c in f.terms.items():
            if not m[i]:
                continue
            base = list(m)
            base[i] -= 1
            for j, a in row:
                mm = list(base)
                mm[j] += 1
                mm = tuple(mm)
                out[mm] = out.get(mm, 0) + a * c * m[i]
    return Polynomial(n, out)


def vector_field_apply(A: Matrix, b: Sequence, f: Polynomial) -> Polynomial:
    """Action of the affine vector field ``x ↦ A x + b`` on ``f``."""
    out = derivation_apply(A, f)
    for i, bi in enumerate(b):
        if bi:
            out = out + f.diff(i).scale(Fraction(bi))
    return out


# ---------------------------------------------------------------- text format


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text: terms in grlex order, e.g. ``x^2*z - 3/2*y^4``."""
    names = names or default_names(f.n)
    if not f.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mon = format_monomial(m, names)
        if not mon:
            body = _format_coeff(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_format_coeff(a)}*{mon}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class PolynomialSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            break
        if mt.group(1):
            toks.append(("num", int(mt.group(1)), mt.start(1)))
        elif mt.group(2):
            toks.append(("name", mt.group(2), mt.start(2)))
        elif mt.group(3):
            toks.append(("op", mt.group(3), mt.start(3)))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, names: Sequence[str]) -> Polynomial:
    """Parse the text format written by :func:`format_poly`.

    Accepts ``+ - * / ^`` and parentheses; ``/`` must divide by a nonzero
    rational constant.
    """
    names = list(names)
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def fail(msg, tok=None):
        tok = tok or peek()
        raise PolynomialSyntaxError(msg, text, tok[2])

    def expr():
        sign = 1
        if peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        val = term().scale(sign)
        while peek()[:2] in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            val = val + t if op == "+" else val - t
        return val

    def term():
        val = factor()
        while peek()[:2] in (("op", "*"), ("op", "/")):
            op = take()
            f = factor()
            if op[1] == "*":
                val = val * f
            else:
                if f.degree() > 0 or f.is_zero():
                    fail("division by a non-constant or zero", op)
                val = val.scale(1 / f.coefficient((0,) * n))
        return val

    def factor():
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            tok = take()
            if tok[0] != "num":
                fail("expected a non-negative integer exponent", tok)
            base = base ** tok[1]
        return base

    def atom():
        tok = take()
        if tok[0] == "num":
            return Polynomial.constant(n, tok[1])
        if tok[0] == "name":
            if tok[1] not in index:
                fail(f"unknown variable {tok[1]!r}", tok)
            return Polynomial.variable(n, index[tok[1]])
        if tok[:2] == ("op", "("):
            val = expr()
            if take()[:2] != ("op", ")"):
                fail("expected ')'", toks[pos - 1])
            return val
        if tok[:2] == ("op", "-"):
            return -factor()
        fail("unexpected token", tok)

    if not text.strip():
        raise PolynomialSyntaxError("empty polynomial", text, 0)
    result = expr()
    if peek()[0] != "end":
        fail("trailing input")
    return result


def poly_matrix_mul(A: list, B: list) -> list:
    """Product of two square matrices with Polynomial entries."""
    size = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(size)), Polynomial.zero(A[0][0].n))
             for j in range(size)] for i in range(size)]


def poly_matrix_trace(A: list) -> Polynomial:
    return sum((A[i][i] for i in range(1, len(A))), A[0][0])


def poly_det(A: list) -> Polynomial:
    """Determinant by cofactor expansion along the first row (small sizes only)."""
    size = len(A)
    if size == 1:
        return A[0][0]
    total = Polynomial.zero(A[0][0].n)
    for j in range(size):
        if A[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def poly_adjugate(A: list) -> list:
    size = len(A)
    adj = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            cof = poly_det(minor) if minor else Polynomial.constant(A[0][0].n, 1)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def all_exponents(n: int, bound: int) -> Iterable:
    """Every exponent vector with entries in ``0..bound`` (for tests and oracles)."""
    return _product(range(bound + 1), repeat=n)
