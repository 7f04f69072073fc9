"""Degreewise linear algebra on the null-cone ideal and on fiber ideals.

Homogeneous questions are answered exactly inside one graded piece.  For a
fiber ideal ``(p_j - c_j)`` we only ever look at a truncation: multipliers
``a_j`` with ``deg a_j <= target degree + headroom``.  A certificate found
this way is a genuine identity, but a failure only means "not found at this
headroom", never a proof of non-membership.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from . import linalg
from .invariants import GeneratorSet
from .matrices import AffineMap, Matrix
from .poly import Polynomial, column_key, format_poly, monomials_of_degree, monomials_up_to


class SyzygyNotKoszul(ArithmeticError):
    """A top-degree syzygy is not a combination of Koszul relations."""

    def __init__(self, degree: int, syzygy: list):
        super().__init__(f"degree-{degree} syzygy is not in the span of the Koszul relations")
        self.degree = degree
        self.syzygy = syzygy


# ------------------------------------------------------------------ results


@dataclass(frozen=True)
class MembershipCertificate:
    """``f = sum coefficients[j] * generators[j]`` exactly."""

    coefficients: tuple
    generators: tuple

    def expand(self) -> Polynomial:
        return sum((a * g for a, g in zip(self.coefficients, self.generators)),
                   Polynomial.zero(self.generators[0].n))

    def verifies(self, f: Polynomial) -> bool:
        return self.expand() == f

    def format(self, names=None) -> list:
        return [format_poly(a, names) for a in self.coefficients]


@dataclass(frozen=True)
class NotMember:
    residual: Polynomial

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class UndeterminedAtHeadroom:
    headroom: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class EqualUpTo:
    bound: int


@dataclass(frozen=True)
class Witness:
    degree: int
    form: Polynomial


@dataclass(frozen=True)
class RegularUpTo:
    bound: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotRegular:
    degree: int
    expected: int | None
    actual: int | None
    reason: str = "Hilbert function mismatch"

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotPreservedAtHeadroom:
    headroom: int
    generator: int

    def __bool__(self) -> bool:
        return False


# ------------------------------------------------------------------- ideals


def _gens_tuple(gens) -> tuple:
    return tuple(gens.generators if isinstance(gens, GeneratorSet) else gens)


class GradedIdeal:
    """Ideal generated by homogeneous polynomials, with lazily built pieces.

    The piece cache is write-once per degree: concurrent fills compute the
    same echelon form and the first stored one wins.
    """

    def __init__(self, generators, n: int | None = None):
        gens = _gens_tuple(generators)
        if n is None:
            if not gens:
                raise ValueError("ambient dimension required for the zero ideal")
            n = gens[0].n
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator in {g.n} variables, expected {n}")
            if g.is_zero() or not g.is_homogeneous():
                raise ValueError(f"{format_poly(g)} is not a nonzero homogeneous polynomial")
            if g.degree() < 1:
                raise ValueError("constant generator: the ideal would be the whole ring")
        self.n = n
        self.generators = gens
        self.names = generators.names if isinstance(generators, GeneratorSet) else None
        self._pieces: dict = {}
        self._lock = threading.Lock()

    @property
    def degrees(self) -> tuple:
        return tuple(g.degree() for g in self.generators)

    def products(self, d: int) -> list:
        """Labelled spanning set ``((j, m), m*g_j)`` of the degree-``d`` piece."""
        out = []
        for j, g in enumerate(self.generators):
            for m in monomials_of_degree(self.n, d - g.degree()):
                out.append(((j, m), g * Polynomial.monomial(m)))
        return out

    def piece(self, d: int) -> linalg.Echelon:
        ech = self._pieces.get(d)
        if ech is None:
            ech = linalg.Echelon(track=True)
            for label, p in self.products(d):
                ech.add(p.vector(), label)
            with self._lock:
                ech = self._pieces.setdefault(d, ech)
        return ech

    def dim(self, d: int) -> int:
        return self.piece(d).rank

    def quotient_dim(self, d: int) -> int:
        return comb(self.n + d - 1, d) - self.dim(d)

    def basis(self, d: int) -> list:
        return [Polynomial.from_vector(self.n, v) for v in self.piece(d).basis()]

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Remainder of ``f`` modulo the piece basis, degree by degree."""
        out = Polynomial.zero(self.n)
        for d, part in f.homogeneous_parts().items():
            out = out + Polynomial.from_vector(self.n, self.piece(d).residual(part.vector()))
        return out

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()


def nullcone_ideal(gens, n: int | None = None) -> GradedIdeal:
    return GradedIdeal(gens, n)


def graded_piece_basis(I: GradedIdeal, d: int) -> list:
    return I.basis(d)


def membership(f: Polynomial, I: GradedIdeal) -> Union[MembershipCertificate, NotMember]:
    if f.n != I.n:
        raise ValueError(f"polynomial in {f.n} variables, ideal in {I.n}")
    if not f.is_homogeneous():
        raise ValueError("membership in a graded piece needs a homogeneous polynomial")
    if not I.generators:
        return NotMember(f) if f else MembershipCertificate((), ())
    d = max(f.degree(), 0)
    ech = I.piece(d)
    residual, combo = ech.reduce(f.vector())
    if residual:
        return NotMember(Polynomial.from_vector(I.n, residual))
    coeffs = [Polynomial.zero(I.n) for _ in I.generators]
    for (j, m), c in combo.items():
        coeffs[j] = coeffs[j] + Polynomial.monomial(m, c)
    return MembershipCertificate(tuple(coeffs), I.generators)


class FiberIdeal:
    """The ideal ``(p_j - c_j)``; all constants zero gives the null cone."""

    def __init__(self, generators, constants: Sequence | None = None):
        gens = _gens_tuple(generators)
        if not gens:
            raise ValueError("a fiber ideal needs at least one generator")
        consts = tuple(Fraction(c) for c in (constants if constants is not None else [0] * len(gens)))
        if len(consts) != len(gens):
            raise ValueError(f"{len(consts)} constants for {len(gens)} generators")
        for g in gens:
            if g.is_zero() or not g.is_homogeneous() or g.degree() < 1:
                raise ValueError(f"{format_poly(g)} is not a homogeneous positive-degree generator")
        self.n = gens[0].n
        self.generators = gens
        self.constants = consts
        self.names = generators.names if isinstance(generators, GeneratorSet) else None

    @property
    def shifted(self) -> tuple:
        return tuple(g - c for g, c in zip(self.generators, self.constants))

    @property
    def degrees(self) -> tuple:
        return tuple(g.degree() for g in self.generators)

    def is_homogeneous(self) -> bool:
        return not any(self.constants)

    def truncation(self, multiplier_degree: int) -> linalg.Echelon:
        """Echelon of all ``m*(p_j - c_j)`` with ``deg m <= multiplier_degree``."""
        ech = linalg.Echelon(track=True)
        mons = monomials_up_to(self.n, multiplier_degree)
        for j, h in enumerate(self.shifted):
            for m in mons:
                ech.add((h * Polynomial.monomial(m)).vector(), (j, m))
        return ech

    def certificate(self, ech: linalg.Echelon, f: Polynomial):
        combo = ech.express(f.vector())
        if combo is None:
            return None
        coeffs = [Polynomial.zero(self.n) for _ in self.generators]
        for (j, m), c in combo.items():
            coeffs[j] = coeffs[j] + Polynomial.monomial(m, c)
        return MembershipCertificate(tuple(coeffs), self.shifted)


def truncated_membership(f: Polynomial, F: FiberIdeal, headroom: int):
    """Search for ``f = sum a_j (p_j - c_j)`` with ``deg a_j <= deg f + headroom``."""
    if headroom < 0:
        raise ValueError("headroom must be non-negative")
    if f.n != F.n:
        raise ValueError(f"polynomial in {f.n} variables, ideal in {F.n}")
    if f.is_zero():
        return MembershipCertificate(tuple(Polynomial.zero(F.n) for _ in F.generators), F.shifted)
    cert = F.certificate(F.truncation(f.degree() + headroom), f)
    return cert if cert is not None else UndeterminedAtHeadroom(headroom)


def _leading_forms_from(ech: linalg.Echelon, n: int, d: int) -> list:
    # columns are ordered by decreasing degree, so rows whose pivot has degree <= d
    # span exactly the elements of degree <= d
    tops = []
    for p in ech.pivots():
        if -p[0] > d:
            continue
        if -p[0] < d:
            break
        row = ech.rows[p]
        tops.append({k: v for k, v in row.items() if -k[0] == d})
    return linalg.reduced_basis(tops)


def leading_form_space(F: FiberIdeal, d: int, headroom: int) -> list:
    """Basis of degree-``d`` leading forms of elements of the truncated ``I_F``.

    Elements considered: combinations of ``m*(p_j - c_j)`` with
    ``deg m <= d + headroom`` whose degree is at most ``d``.
    """
    if d < 0 or headroom < 0:
        raise ValueError("degree and headroom must be non-negative")
    ech = F.truncation(d + headroom)
    return [Polynomial.from_vector(F.n, v) for v in _leading_forms_from(ech, F.n, d)]


def graded_comparison(F: FiberIdeal, bound: int, headroom: int) -> Union[EqualUpTo, Witness]:
    """Compare truncated leading forms of ``I_F`` with the null-cone ideal degree by degree."""
    I = GradedIdeal(F.generators, F.n)
    for d in range(bound + 1):
        null = I.piece(d)
        for form in leading_form_space(F, d, headroom):
            if not null.contains(form.vector()):
                return Witness(d, form)
    return EqualUpTo(bound)


def koszul_reduce(a: Sequence[Polynomial], gens, consts: Sequence, target_degree: int | None = None) -> list:
    """Lower the multipliers of ``f = sum a_j (p_j - c_j)`` until ``deg a_j <= r - d_j``.

    ``r`` is the degree of the leading form of ``f`` (computed when not
    given).  Each round takes the top-degree parts ``a'_j``, which satisfy
    ``sum a'_j p_j = 0``, writes that syzygy as ``sum b_ij (p_j e_i - p_i e_j)``
    and uses ``p_j(p_i - c_i) - p_i(p_j - c_j) = c_j(p_i - c_i) - c_i(p_j - c_j)``
    to trade it for strictly lower-degree multipliers.
    """
    gens = _gens_tuple(gens)
    consts = [Fraction(c) for c in consts]
    if not (len(a) == len(gens) == len(consts)):
        raise ValueError("need one multiplier and one constant per generator")
    n = gens[0].n
    degs = [g.degree() for g in gens]
    shifted = [g - c for g, c in zip(gens, consts)]
    f = sum((x * h for x, h in zip(a, shifted)), Polynomial.zero(n))
    r = f.degree() if target_degree is None else target_degree
    a = list(a)
    while True:
        s = max((x.degree() + dj for x, dj in zip(a, degs) if x), default=-1)
        if s <= r:
            return a
        tops = [x.homogeneous_part(s - dj) for x, dj in zip(a, degs)]
        if sum((t * g for t, g in zip(tops, gens)), Polynomial.zero(n)):
            raise ValueError("multipliers do not represent a polynomial of the stated degree")
        b = _koszul_coordinates(tops, gens, degs, s)
        if b is None:
            raise SyzygyNotKoszul(s, tops)
        new = [x - t for x, t in zip(a, tops)]
        for (i, j), bij in b.items():
            new[i] = new[i] + bij.scale(consts[j])
            new[j] = new[j] - bij.scale(consts[i])
        a = new


def _koszul_coordinates(tops, gens, degs, s):
    """Solve ``tops = sum_{i<j} b_ij (p_j e_i - p_i e_j)`` for homogeneous ``b_ij``."""
    n = gens[0].n
    k = len(gens)

    def stack(vecs):
        out = {}
        for slot, p in enumerate(vecs):
            for key, c in p.vector().items():
                out[(slot,) + key] = c
        return out

    columns, labels = [], []
    for i in range(k):
        for j in range(i + 1, k):
            for m in monomials_of_degree(n, s - degs[i] - degs[j]):
                mono = Polynomial.monomial(m)
                slots = [Polynomial.zero(n)] * k
                slots[i] = gens[j] * mono
                slots[j] = -(gens[i] * mono)
                columns.append(stack(slots))
                labels.append((i, j, m))
    sol = linalg.solve(columns, stack(tops))
    if sol is None:
        return None
    b: dict = {}
    for idx, c in sol.items():
        i, j, m = labels[idx]
        b[(i, j)] = b.get((i, j), Polynomial.zero(n)) + Polynomial.monomial(m, c)
    return b


def hilbert_prediction(degrees: Sequence[int], n: int, d: int) -> int:
    """Coefficient of ``t^d`` in ``prod (1 - t^{d_j}) / (1 - t)^n``."""
    numer = {0: 1}
    for e in degrees:
        nxt: dict = {}
        for k, c in numer.items():
            nxt[k] = nxt.get(k, 0) + c
            nxt[k + e] = nxt.get(k + e, 0) - c
        numer = nxt
    return sum(c * comb(n + d - k - 1, d - k) for k, c in numer.items() if k <= d) if n else int(d in numer)


def regular_sequence_check(gens, bound: int, n: int | None = None):
    gens_t = _gens_tuple(gens)
    n = n if n is not None else gens_t[0].n
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if len(gens_t) > n:
        return NotRegular(0, None, None, f"{len(gens_t)} generators but only {n} variables")
    I = GradedIdeal(gens_t, n)
    degs = I.degrees
    for d in range(bound + 1):
        expected = hilbert_prediction(degs, n, d)
        actual = I.quotient_dim(d)
        if expected != actual:
            return NotRegular(d, expected, actual)
    return RegularUpTo(bound)


def jacobian_rank_at(gens, point: Sequence) -> int:
    gens_t = _gens_tuple(gens)
    rows = []
    for g in gens_t:
        if len(point) != g.n:
            raise ValueError(f"point has length {len(point)}, expected {g.n}")
        rows.append({i: v for i, v in enumerate(dg.evaluate(point) for dg in g.gradient()) if v})
    return linalg.rank(rows)


def map_preserves_ideal(M, ideal, headroom: int | None = None):
    """Whether every generator composed with ``M`` stays in the ideal.

    Exact for a :class:`GradedIdeal`.  For a :class:`FiberIdeal` a failure
    is returned as :class:`NotPreservedAtHeadroom` (falsy).
    """
    if isinstance(M, Matrix):
        M = AffineMap(M)
    if not M.linear.is_invertible():
        raise ValueError("map is not invertible")
    if isinstance(ideal, GradedIdeal):
        return all(ideal.contains(g.compose(M)) for g in ideal.generators)
    if headroom is None:
        headroom = default_headroom(ideal.generators)
    for j, h in enumerate(ideal.shifted):
        if not truncated_membership(h.compose(M), ideal, headroom):
            return NotPreservedAtHeadroom(headroom, j)
    return True


def default_headroom(gens) -> int:
    return max((g.degree() for g in _gens_tuple(gens)), default=0) + 2


__all__ = [
    "EqualUpTo", "FiberIdeal", "GradedIdeal", "MembershipCertificate", "NotMember", "NotPreservedAtHeadroom",
    "NotRegular", "RegularUpTo", "SyzygyNotKoszul", "UndeterminedAtHeadroom", "Witness", "column_key",
    "default_headroom", "graded_comparison", "graded_piece_basis", "hilbert_prediction", "jacobian_rank_at",
    "koszul_reduce", "leading_form_space", "map_preserves_ideal", "membership", "nullcone_ideal",
    "regular_sequence_check", "truncated_membership",
]
