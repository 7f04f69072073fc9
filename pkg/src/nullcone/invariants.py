"""Invariant generator sets.

Diagonalizable actions (a torus times finite cyclic groups) are handled
exactly: the invariant ring is spanned by weight-zero monomials, and its
minimal generators are the indecomposable ones.  The non-abelian examples
(contractions, adjoint trace powers, det/adjugate on S^2 + vector, the
Pfaffian) come from closed formulas, together with the matrices of the
corresponding Lie algebra actions so that invariance can be checked by
derivations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .matrices import Matrix
from .poly import (Polynomial, default_names, derivation_apply, format_poly, monomials_of_degree,
                   poly_adjugate, poly_det, poly_matrix_mul, poly_matrix_trace)


@dataclass(frozen=True)
class WeightSystem:
    """Characters of ``(C*)^k × Z/m_1 × ... × Z/m_s``, one per coordinate.

    Each weight is a tuple of ``k + s`` integers; the last ``s`` entries are
    reduced modulo the cyclic orders on construction.
    """

    torus_rank: int
    cyclic_orders: tuple
    weights: tuple

    def __post_init__(self):
        k, orders = self.torus_rank, tuple(self.cyclic_orders)
        if k < 0:
            raise ValueError("torus rank must be non-negative")
        if any(m < 2 for m in orders):
            raise ValueError("cyclic orders must be at least 2")
        reduced = []
        for w in self.weights:
            w = tuple(int(v) for v in (w if isinstance(w, (tuple, list)) else (w,)))
            if len(w) != k + len(orders):
                raise ValueError(f"weight {w} should have {k + len(orders)} components")
            reduced.append(w[:k] + tuple(v % m for v, m in zip(w[k:], orders)))
        object.__setattr__(self, "cyclic_orders", orders)
        object.__setattr__(self, "weights", tuple(reduced))

    @classmethod
    def torus(cls, *weights) -> "WeightSystem":
        """Rank-one torus with integer weights."""
        return cls(1, (), tuple((w,) for w in weights))

    @classmethod
    def cyclic(cls, order: int, *weights) -> "WeightSystem":
        return cls(0, (order,), tuple((w,) for w in weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def zero(self) -> tuple:
        return (0,) * (self.torus_rank + len(self.cyclic_orders))


def weight_of_monomial(ws: WeightSystem, m: Sequence[int]) -> tuple:
    if len(m) != ws.n:
        raise ValueError(f"monomial has length {len(m)}, weight system has {ws.n} coordinates")
    k = ws.torus_rank
    total = [sum(e * w[c] for e, w in zip(m, ws.weights)) for c in range(len(ws.zero()))]
    for c, order in enumerate(ws.cyclic_orders):
        total[k + c] %= order
    return tuple(total)


def weight_zero_monomials(ws: WeightSystem, bound: int) -> list:
    """Weight-zero monomials of degrees ``1..bound``, degree by degree in grlex order."""
    zero = ws.zero()
    return [m for d in range(1, bound + 1) for m in monomials_of_degree(ws.n, d)
            if weight_of_monomial(ws, m) == zero]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    generators: tuple
    names: tuple = None
    blocks: tuple = field(default=None, compare=False)  # variable groups for multidegrees

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.n != self.n:
                raise ValueError(f"generator in {g.n} variables, expected {self.n}")
            if g.is_zero():
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"generator {format_poly(g)} is not homogeneous")
        for a, b in combinations(gens, 2):
            if _proportional(a, b):
                raise ValueError(f"generators {format_poly(a)} and {format_poly(b)} are proportional")
        gens = tuple(sorted(gens, key=lambda g: g.degree()))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "names", tuple(self.names) if self.names else default_names(self.n))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Polynomial:
        return self.generators[i]

    @property
    def degrees(self) -> tuple:
        return tuple(g.degree() for g in self.generators)

    def format(self) -> list:
        return [format_poly(g, self.names) for g in self.generators]


def _proportional(a: Polynomial, b: Polynomial) -> bool:
    if a.terms.keys() != b.terms.keys():
        return False
    m = next(iter(a.terms))
    return a.scale(b.terms[m] / a.terms[m]) == b


def minimal_monomial_generators(ws: WeightSystem, degree_bound: int,
                                names: Sequence[str] | None = None) -> GeneratorSet:
    """Indecomposable weight-zero monomials of degree at most ``degree_bound``.

    A weight-zero monomial is decomposable exactly when a proper nonconstant
    weight-zero monomial divides it (the quotient then has weight zero too).
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    found: list = []
    for m in weight_zero_monomials(ws, degree_bound):
        if not any(_divides(g, m) for g in found):
            found.append(m)
    return GeneratorSet(ws.n, tuple(Polynomial.monomial(m) for m in found), names)


def generated_up_to(ws: WeightSystem, gens: GeneratorSet, bound: int) -> bool:
    """Whether every weight-zero monomial of degree <= bound is a product of generator monomials."""
    exps = [next(iter(g.terms)) for g in gens]
    reachable = {(0,) * ws.n}
    for d in range(1, bound + 1):
        for m in monomials_of_degree(ws.n, d):
            if any(_divides(e, m) and tuple(a - b for a, b in zip(m, e)) in reachable for e in exps):
                reachable.add(m)
    return all(m in reachable for m in weight_zero_monomials(ws, bound))


def invariants_equal_up_to(ws1: WeightSystem, ws2: WeightSystem, bound: int) -> bool:
    if ws1.n != ws2.n:
        raise ValueError(f"weight systems act on dimensions {ws1.n} and {ws2.n}")
    return weight_zero_monomials(ws1, bound) == weight_zero_monomials(ws2, bound)


# ------------------------------------------------------------ contractions


def contraction_names(n: int, p: int, q: int) -> tuple:
    if n == 1:
        return tuple(f"x{a}" for a in range(1, p + 1)) + tuple(f"y{b}" for b in range(1, q + 1))
    return (tuple(f"x{a}_{i}" for a in range(1, p + 1) for i in range(1, n + 1))
            + tuple(f"y{b}_{i}" for b in range(1, q + 1) for i in range(1, n + 1)))


def contraction_generators(n: int, p: int, q: int) -> GeneratorSet:
    """The ``pq`` pairings ``<x^(a), y^(b)>`` on ``pW ⊕ qW*``, ``W = C^n``.

    Coordinates: the ``p`` copies of ``W`` first (``n`` each), then the
    ``q`` copies of ``W*``.
    """
    if min(n, p, q) < 1:
        raise ValueError("n, p, q must be positive")
    dim = (p + q) * n
    gens = []
    for a in range(p):
        for b in range(q):
            g = Polynomial.zero(dim)
            for i in range(n):
                g = g + Polynomial.variable(dim, a * n + i) * Polynomial.variable(dim, (p + b) * n + i)
            gens.append(g)
    blocks = (tuple(range(p * n)), tuple(range(p * n, dim)))
    return GeneratorSet(dim, tuple(gens), contraction_names(n, p, q), blocks)


def contraction_rep(n: int, p: int, q: int, Y: Matrix) -> Matrix:
    """Image of ``Y ∈ gl(W)``: ``Y`` on each copy of W, ``-Y^T`` on each copy of W*."""
    dim = (p + q) * n
    entries = []
    for c in range(p + q):
        block = Y if c < p else -Y.transpose()
        entries += [(c * n + i, c * n + j, block[i, j]) for i in range(n) for j in range(n) if block[i, j]]
    return Matrix.from_sparse(dim, entries)


# ------------------------------------------------------------- adjoint


def adjoint_coordinates(n: int, include_trace: bool) -> list:
    """Matrix positions used as coordinates: row-major, dropping ``(n-1, n-1)`` for sl_n."""
    pos = [(i, j) for i in range(n) for j in range(n)]
    return pos if include_trace else pos[:-1]


def adjoint_names(n: int, include_trace: bool) -> tuple:
    if n == 2 and not include_trace:
        return ("h", "e", "f")
    return tuple(f"x{i + 1}{j + 1}" for i, j in adjoint_coordinates(n, include_trace))


def generic_matrix(n: int, include_trace: bool) -> list:
    """The symbolic matrix ``X`` whose entries are the coordinate functions."""
    coords = adjoint_coordinates(n, include_trace)
    dim = len(coords)
    X = [[Polynomial.zero(dim) for _ in range(n)] for _ in range(n)]
    for k, (i, j) in enumerate(coords):
        X[i][j] = Polynomial.variable(dim, k)
    if not include_trace:
        X[n - 1][n - 1] = -sum((X[i][i] for i in range(1, n - 1)), X[0][0]) if n > 1 else X[0][0]
    return X


def adjoint_trace_generators(n: int, include_trace: bool) -> GeneratorSet:
    """``tr(X^k)`` for ``k = 1..n`` on gl_n, or ``k = 2..n`` on sl_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    X = generic_matrix(n, include_trace)
    gens = []
    power = X
    for k in range(1, n + 1):
        if k > 1:
            power = poly_matrix_mul(power, X)
        if k == 1 and not include_trace:
            continue
        gens.append(poly_matrix_trace(power))
    return GeneratorSet(X[0][0].n, tuple(gens), adjoint_names(n, include_trace))


def _coords_to_matrix(n: int, include_trace: bool, vec: Sequence) -> Matrix:
    coords = adjoint_coordinates(n, include_trace)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in zip(coords, vec):
        rows[i][j] = Fraction(v)
    if not include_trace:
        rows[n - 1][n - 1] = -sum((rows[i][i] for i in range(n - 1)), Fraction(0))
    return Matrix(rows)


def _matrix_to_coords(n: int, include_trace: bool, M: Matrix) -> list:
    return [M[i, j] for i, j in adjoint_coordinates(n, include_trace)]


def adjoint_rep(n: int, Y: Matrix, include_trace: bool) -> Matrix:
    """Matrix of ``X ↦ [Y, X]`` in the adjoint coordinates."""
    coords = adjoint_coordinates(n, include_trace)
    dim = len(coords)
    cols = []
    for k in range(dim):
        X = _coords_to_matrix(n, include_trace, [int(c == k) for c in range(dim)])
        cols.append(_matrix_to_coords(n, include_trace, Y @ X - X @ Y))
    return Matrix([[cols[j][i] for j in range(dim)] for i in range(dim)])


def transposition_map(n: int, include_trace: bool) -> Matrix:
    """``X ↦ X^T`` in the adjoint coordinates."""
    coords = adjoint_coordinates(n, include_trace)
    dim = len(coords)
    index = {c: k for k, c in enumerate(coords)}
    return Matrix.from_sparse(dim, [(index[(j, i)], k, 1) for k, (i, j) in enumerate(coords)])


# ------------------------------------------------------- S^2 C^n + C^n


def sym2_coordinates(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym2_names(n: int) -> tuple:
    return (tuple(f"s{i + 1}{j + 1}" for i, j in sym2_coordinates(n))
            + tuple(f"v{i + 1}" for i in range(n)))


def sym2_vector_generators(n: int) -> GeneratorSet:
    """``p = det S`` and ``q = v^T adj(S) v`` on ``S^2(C^n) ⊕ C^n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    coords = sym2_coordinates(n)
    dim = len(coords) + n
    index = {c: k for k, c in enumerate(coords)}
    S = [[Polynomial.variable(dim, index[(min(i, j), max(i, j))]) for j in range(n)] for i in range(n)]
    v = [Polynomial.variable(dim, len(coords) + i) for i in range(n)]
    p = poly_det(S)
    adj = poly_adjugate(S)
    q = Polynomial.zero(dim)
    for i in range(n):
        for j in range(n):
            q = q + v[i] * adj[i][j] * v[j]
    blocks = (tuple(range(len(coords))), tuple(range(len(coords), dim)))
    return GeneratorSet(dim, (p, q), sym2_names(n), blocks)


def sym2_vector_rep(n: int, Y: Matrix) -> Matrix:
    """Image of ``Y ∈ gl_n`` acting by ``S ↦ YS + SY^T`` and ``v ↦ Yv``."""
    coords = sym2_coordinates(n)
    m = len(coords)
    dim = m + n
    cols = []
    for k, (a, b) in enumerate(coords):
        S = Matrix.from_sparse(n, [(a, b, 1)] + ([(b, a, 1)] if a != b else []))
        T = Y @ S + S @ Y.transpose()
        cols.append([T[i, j] for i, j in coords] + [0] * n)
    for k in range(n):
        cols.append([0] * m + [Y[i, k] for i in range(n)])
    return Matrix([[cols[j][i] for j in range(dim)] for i in range(dim)])


# ------------------------------------------------- wedge^2 C^4 + C^4


WEDGE_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def pfaffian_names() -> tuple:
    return tuple(f"w{i + 1}{j + 1}" for i, j in WEDGE_PAIRS) + tuple(f"u{i + 1}" for i in range(4))


def pfaffian_scenario_generators() -> GeneratorSet:
    """``Pf = w12 w34 - w13 w24 + w14 w23`` on ``Λ²C⁴ ⊕ C⁴`` (10 coordinates)."""
    w = {pair: Polynomial.variable(10, k) for k, pair in enumerate(WEDGE_PAIRS)}
    pf = w[(0, 1)] * w[(2, 3)] - w[(0, 2)] * w[(1, 3)] + w[(0, 3)] * w[(1, 2)]
    return GeneratorSet(10, (pf,), pfaffian_names(), (tuple(range(6)), tuple(range(6, 10))))


def antisymmetric_matrix(vec: Sequence) -> Matrix:
    """The 4×4 antisymmetric matrix with upper entries given in ``WEDGE_PAIRS`` order."""
    entries = []
    for (i, j), v in zip(WEDGE_PAIRS, vec):
        entries += [(i, j, v), (j, i, -Fraction(v))]
    return Matrix.from_sparse(4, entries)


def pfaffian_rep(Y: Matrix) -> Matrix:
    """Image of ``Y ∈ gl_4``: ``W ↦ YW + WY^T`` on Λ², ``u ↦ Yu`` on the vector part."""
    cols = []
    for k in range(6):
        W = antisymmetric_matrix([int(c == k) for c in range(6)])
        T = Y @ W + W @ Y.transpose()
        cols.append([T[i, j] for i, j in WEDGE_PAIRS] + [0] * 4)
    for k in range(4):
        cols.append([0] * 6 + [Y[i, k] for i in range(4)])
    return Matrix([[cols[j][i] for j in range(10)] for i in range(10)])


def sl_basis(n: int) -> list:
    """Elementary basis of sl_n: off-diagonal units, then ``E_ii - E_{i+1,i+1}``."""
    out = [Matrix.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        out.append(Matrix.unit(n, i, i) - Matrix.unit(n, i + 1, i + 1))
    return out


def is_annihilated(gens: GeneratorSet, A: Matrix) -> bool:
    return all(derivation_apply(A, g).is_zero() for g in gens)
