"""Structure of matrix Lie algebras over Q.

The radical is computed as the Killing-orthogonal of the derived algebra
(valid in characteristic zero) and then re-verified to be a solvable ideal.
Reductivity of a matrix algebra is decided by a sound rule with an explicit
``Indeterminate`` outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import linalg
from .matrices import Matrix, bracket


class LieAlgebraError(ArithmeticError):
    pass


class MatrixLieAlgebra:
    """A bracket-closed span of ``n × n`` rational matrices.

    The stored basis is the reduced echelon basis of the input span, so two
    algebras with the same span have identical bases.
    """

    def __init__(self, matrices: Iterable[Matrix], n: int | None = None, check: bool = True):
        mats = list(matrices)
        if n is None:
            if not mats:
                raise ValueError("dimension required for the zero algebra")
            n = mats[0].n
        self.n = n
        self._ech = linalg.Echelon(track=True)
        self.basis: list = []
        for A in mats:
            if A.n != n:
                raise ValueError(f"matrix of size {A.n} in an algebra on C^{n}")
            self._ech.add(A.vector())
        self.basis = [Matrix.from_vector(n, v) for v in self._ech.basis()]
        self._coords = linalg.Echelon(track=True)
        for k, B in enumerate(self.basis):
            self._coords.add(B.vector(), k)
        self._ad = None
        self._derived = None
        self._radical = None
        if check and not self.is_closed():
            raise LieAlgebraError("span is not closed under the bracket")

    @classmethod
    def from_result(cls, result) -> "MatrixLieAlgebra":
        return cls(result.linear_parts(), result.n)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, A: Matrix) -> bool:
        return self._coords.contains(A.vector())

    def coordinates(self, A: Matrix) -> dict:
        c = self._coords.express(A.vector())
        if c is None:
            raise LieAlgebraError("matrix is not in the algebra")
        return c

    def element(self, coords: dict) -> Matrix:
        vec: dict = {}
        for k, c in coords.items():
            linalg.axpy(vec, Fraction(c), self.basis[k].vector())
        return Matrix.from_vector(self.n, vec)

    def is_closed(self) -> bool:
        return all(self.contains(bracket(A, B))
                   for i, A in enumerate(self.basis) for B in self.basis[i + 1:])

    def structure_constants(self) -> dict:
        """``{(i, j): {k: c}}`` with ``[b_i, b_j] = sum_k c b_k`` for ``i < j``."""
        return {(i, j): self.coordinates(bracket(self.basis[i], self.basis[j]))
                for i in range(self.dim) for j in range(i + 1, self.dim)}

    def ad(self) -> list:
        """Sparse matrices of ``ad b_i`` in the basis: ``{(row, col): value}``."""
        if self._ad is None:
            ads = [dict() for _ in self.basis]
            for i, A in enumerate(self.basis):
                for j in range(i + 1, self.dim):
                    c = self.coordinates(bracket(A, self.basis[j]))
                    for k, v in c.items():
                        ads[i][(k, j)] = v
                        ads[j][(k, i)] = -v
            self._ad = ads
        return self._ad

    def ad_of(self, coords: dict) -> dict:
        out: dict = {}
        ads = self.ad()
        for i, c in coords.items():
            linalg.axpy(out, Fraction(c), ads[i])
        return out

    def killing(self, x: dict, y: dict) -> Fraction:
        """``tr(ad x ad y)`` for elements given by coordinates."""
        ax, ay = self.ad_of(x), self.ad_of(y)
        return sum((v * ay.get((b, a), 0) for (a, b), v in ax.items()), Fraction(0))

    def killing_matrix(self) -> list:
        e = [{i: Fraction(1)} for i in range(self.dim)]
        return [[self.killing(e[i], e[j]) for j in range(self.dim)] for i in range(self.dim)]

    def subalgebra(self, matrices: Iterable[Matrix]) -> "MatrixLieAlgebra":
        return MatrixLieAlgebra(matrices, self.n)

    def derived(self) -> "MatrixLieAlgebra":
        if self._derived is None:
            brackets = [bracket(A, B) for i, A in enumerate(self.basis) for B in self.basis[i + 1:]]
            self._derived = MatrixLieAlgebra(brackets, self.n, check=False)
        return self._derived

    def is_abelian(self) -> bool:
        return all(bracket(A, B).is_zero() for i, A in enumerate(self.basis) for B in self.basis[i + 1:])

    def is_ideal_in(self, big: "MatrixLieAlgebra") -> bool:
        return all(self.contains(bracket(X, A)) for X in big.basis for A in self.basis)

    def center(self) -> "MatrixLieAlgebra":
        images = []
        for A in self.basis:
            images.append({(k, key): v for k, B in enumerate(self.basis)
                           for key, v in bracket(A, B).vector().items()})
        return MatrixLieAlgebra([self.element(c) for c in linalg.kernel(images)], self.n, check=False)


def close_check(basis: Sequence[Matrix]):
    """``(True, structure constants)`` if the span is closed, else ``(False, None)``."""
    if linalg.rank(A.vector() for A in basis) != len(basis):
        raise ValueError("basis is linearly dependent")
    if not basis:
        return True, {}
    L = MatrixLieAlgebra(basis, basis[0].n, check=False)
    if not L.is_closed():
        return False, None
    ech = linalg.Echelon(track=True)
    for k, B in enumerate(basis):
        ech.add(B.vector(), k)
    consts = {(i, j): ech.express(bracket(basis[i], basis[j]).vector())
              for i in range(len(basis)) for j in range(i + 1, len(basis))}
    return True, consts


def derived_series(L: MatrixLieAlgebra) -> list:
    """Dimensions of ``L ⊇ [L,L] ⊇ ...`` until the series stabilises."""
    dims = [L.dim]
    cur = L
    while True:
        nxt = cur.derived()
        dims.append(nxt.dim)
        if nxt.dim == cur.dim or nxt.dim == 0:
            return dims
        cur = nxt


def is_solvable(L: MatrixLieAlgebra) -> bool:
    return derived_series(L)[-1] == 0


def radical(L: MatrixLieAlgebra) -> MatrixLieAlgebra:
    """Killing-orthogonal of ``[L, L]`` inside ``L``, verified to be a solvable ideal."""
    if L._radical is not None:
        return L._radical
    D = L.derived()
    dcoords = [L.coordinates(Y) for Y in D.basis]
    e = [{i: Fraction(1)} for i in range(L.dim)]
    images = [{k: v for k, y in enumerate(dcoords) if (v := L.killing(e[i], y))} for i in range(L.dim)]
    rad = MatrixLieAlgebra([L.element(c) for c in linalg.kernel(images)], L.n, check=False)
    if not rad.is_closed() or not rad.is_ideal_in(L) or not is_solvable(rad):
        raise LieAlgebraError("Killing-orthogonal of the derived algebra is not a solvable ideal")
    L._radical = rad
    return rad


def is_nilpotent(A: Matrix) -> bool:
    return (A ** A.n).is_zero()


def minimal_polynomial(A: Matrix) -> list:
    """Monic coefficients ``[c_0, ..., c_k = 1]`` of the minimal polynomial."""
    ech = linalg.Echelon(track=True)
    power = Matrix.identity(A.n)
    k = 0
    while True:
        rel = ech.add(power.vector(), k)
        if rel is not None:
            coeffs = [Fraction(0)] * (k + 1)
            for i, c in rel.items():
                coeffs[i] = c
            return coeffs
        power = power @ A
        k += 1


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] -= c * v
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def is_semisimple_matrix(A: Matrix) -> bool:
    """Diagonalisable over the algebraic closure: squarefree minimal polynomial."""
    mu = minimal_polynomial(A)
    dmu = [i * c for i, c in enumerate(mu)][1:]
    while dmu and dmu[-1] == 0:
        dmu.pop()
    if not dmu:
        return len(mu) <= 1
    return len(_poly_gcd(mu, dmu)) == 1


def associative_envelope(mats: Sequence[Matrix], n: int) -> list:
    """Basis of the unital associative algebra generated by ``mats``."""
    ech = linalg.Echelon()
    found = []

    def push(M):
        if ech.add(M.vector()) is None:
            found.append(M)
            return True
        return False

    push(Matrix.identity(n))
    frontier = [M for M in mats if push(M)]
    while frontier:
        nxt = []
        for X in frontier:
            for G in mats:
                P = X @ G
                if push(P):
                    nxt.append(P)
        frontier = nxt
    return found


def nilpotent_part(r: MatrixLieAlgebra) -> MatrixLieAlgebra:
    """Nilpotent matrices in a solvable algebra ``r`` (they form a subspace).

    After simultaneous triangularisation, ``x`` is nilpotent iff its
    diagonal vanishes iff ``tr(x a) = 0`` for every ``a`` in the unital
    associative envelope of ``r`` (which contains all powers of ``x``).
    """
    env = associative_envelope(r.basis, r.n)
    images = [{k: v for k, a in enumerate(env) if (v := (x @ a).trace())} for x in r.basis]
    return MatrixLieAlgebra([r.element(c) for c in linalg.kernel(images)], r.n, check=False)


@dataclass(frozen=True)
class Reductive:
    radical_dim: int

    name = "Reductive"


@dataclass(frozen=True)
class NonReductive:
    witness: Matrix
    radical_dim: int
    nilpotent_dim: int

    name = "NonReductive"


@dataclass(frozen=True)
class Indeterminate:
    reason: str
    radical_dim: int

    name = "Indeterminate"


ReductivityVerdict = Union[Reductive, NonReductive, Indeterminate]


def reductivity_verdict(L: MatrixLieAlgebra) -> ReductivityVerdict:
    """Decide reductivity of ``L ⊂ gl(n)`` where the rule allows.

    Reductive when the radical is zero, or abelian and spanned by
    semisimple matrices.  NonReductive when the radical contains a nonzero
    nilpotent matrix; the witness is the first reduced basis element of the
    nilpotent part of the radical.  Anything else is Indeterminate (for
    instance a one-dimensional radical spanned by a non-semisimple matrix
    with nonzero eigenvalues).
    """
    r = radical(L)
    if r.dim == 0:
        return Reductive(0)
    if r.is_abelian() and all(is_semisimple_matrix(A) for A in r.basis):
        return Reductive(r.dim)
    nil = nilpotent_part(r)
    if nil.dim:
        w = nil.basis[0]
        if not (is_nilpotent(w) and r.contains(w) and not w.is_zero()):
            raise LieAlgebraError("nilpotent witness failed re-verification")
        return NonReductive(w, r.dim, nil.dim)
    return Indeterminate("radical has no nonzero nilpotent element but is not spanned by commuting "
                         "semisimple matrices", r.dim)


__all__ = [
    "Indeterminate", "LieAlgebraError", "MatrixLieAlgebra", "NonReductive", "Reductive", "ReductivityVerdict",
    "associative_envelope", "bracket", "close_check", "derived_series", "is_nilpotent", "is_semisimple_matrix",
    "is_solvable", "minimal_polynomial", "nilpotent_part", "radical", "reductivity_verdict",
]
