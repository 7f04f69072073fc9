"""Lie algebras of linear and affine maps preserving invariants or ideals.

Every algebra here is the kernel of a linear map on ``gl(n)`` (or on
``gl(n) ⊕ C^n`` for affine vector fields), assembled one elementary matrix
``E_ij`` at a time.  A derivation preserves an ideal iff it sends every
generator into it (Leibniz), so only generators are constrained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .ideals import FiberIdeal, GradedIdeal, default_headroom
from .invariants import GeneratorSet
from .matrices import AffineMap, Matrix
from .poly import Polynomial, derivation_apply


@dataclass
class StabilizerResult:
    n: int
    basis: list
    summary: dict = field(default_factory=dict)
    headroom: int | None = None
    vanishing: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def effective_dimension(self) -> int:
        """Dimension modulo the fields that vanish on the fiber."""
        return len(self.basis) - len(self.vanishing)

    @property
    def is_affine(self) -> bool:
        return bool(self.basis) and isinstance(self.basis[0], AffineMap)

    def linear_parts(self) -> list:
        return [b.linear if isinstance(b, AffineMap) else b for b in self.basis]

    def translation_rank(self) -> int:
        if not self.is_affine:
            return 0
        return linalg.rank(_translation_vec(b) for b in self.basis)

    def translations_vanish_modulo_trivial(self) -> bool:
        """Translation parts lie in those of the fields vanishing on the fiber."""
        if not self.is_affine:
            return True
        trivial = [_translation_vec(b) for b in self.vanishing]
        return linalg.span_contains(trivial, [_translation_vec(b) for b in self.basis])


def _translation_vec(b: AffineMap) -> dict:
    return {i: v for i, v in enumerate(b.translation) if v}


def _unit_derivatives(gens: Sequence[Polynomial]):
    """``D_{E_ij} g = x_j ∂g/∂x_i`` for every unknown, generator by generator."""
    n = gens[0].n
    xs = [Polynomial.variable(n, j) for j in range(n)]
    grads = [g.gradient() for g in gens]
    for i in range(n):
        for j in range(n):
            yield i * n + j, [xs[j] * dg[i] for dg in grads]


def _stack(parts: Sequence[dict]) -> dict:
    out = {}
    for slot, vec in enumerate(parts):
        for k, v in vec.items():
            out[(slot, k)] = v
    return out


def _matrices_from_kernel(n: int, kern: list) -> list:
    return [Matrix.from_vector(n, v) for v in kern]


def annihilator_algebra(gens) -> StabilizerResult:
    """``{A ∈ gl(n) : D_A p = 0 for every generator p}``."""
    gens = tuple(gens)
    n = gens[0].n
    images = [_stack([d.vector() for d in derivs]) for _, derivs in _unit_derivatives(gens)]
    basis = _matrices_from_kernel(n, linalg.kernel(images))
    return StabilizerResult(n, basis, {"unknowns": n * n, "degrees": [g.degree() for g in gens]})


def ideal_stabilizer_algebra(I: GradedIdeal) -> StabilizerResult:
    """``{A ∈ gl(n) : D_A g_j ∈ I_{deg g_j} for every generator}``."""
    if not I.generators:
        raise ValueError("ideal has no generators")
    n = I.n
    pieces = [I.piece(g.degree()) for g in I.generators]
    images = []
    for _, derivs in _unit_derivatives(I.generators):
        images.append(_stack([p.residual(d.vector()) for p, d in zip(pieces, derivs)]))
    basis = _matrices_from_kernel(n, linalg.kernel(images))
    summary = {"unknowns": n * n, "degrees": list(I.degrees), "piece_dims": [p.rank for p in pieces]}
    return StabilizerResult(n, basis, summary)


def affine_stabilizer_algebra(F: FiberIdeal, headroom: int | None = None) -> StabilizerResult:
    """Affine vector fields ``ξ = A x + b`` with ``ξ(p_j)`` certified in ``I_F``.

    The certificate for ``ξ(p_j)`` may use multipliers of degree up to
    ``deg p_j + headroom``.  Fields whose every component already lies in
    ``I_F`` (possible once a generator is linear) vanish on the fiber; they
    are returned separately in ``vanishing`` as a sub-basis of the result.
    """
    if headroom is None:
        headroom = default_headroom(F.generators)
    if headroom < 0:
        raise ValueError("headroom must be non-negative")
    n = F.n
    gens = F.generators
    truncs = {}
    for g in gens:
        d = g.degree()
        if d not in truncs:
            truncs[d] = F.truncation(d + headroom)
    images = []
    for _, derivs in _unit_derivatives(gens):
        images.append(_stack([truncs[g.degree()].residual(dv.vector()) for g, dv in zip(gens, derivs)]))
    for i in range(n):
        images.append(_stack([truncs[g.degree()].residual(g.diff(i).vector()) for g in gens]))
    kern = linalg.kernel(images)
    basis = [_affine_from_vec(n, v) for v in kern]

    # fields vanishing on the fiber: each component x ↦ (Ax + b)_i lies in I_F
    lin = F.truncation(1 + headroom)
    comp_images = []
    for k in range(n * n + n):
        comp = {}
        if k < n * n:
            i, j = divmod(k, n)
            comp[i] = lin.residual(Polynomial.variable(n, j).vector())
        else:
            comp[k - n * n] = lin.residual(Polynomial.constant(n, 1).vector())
        comp_images.append(_stack([comp.get(i, {}) for i in range(n)]))
    vanishing = [_affine_from_vec(n, v) for v in linalg.kernel(comp_images)]

    summary = {"unknowns": n * n + n, "degrees": list(F.degrees), "constants": [str(c) for c in F.constants]}
    return StabilizerResult(n, basis, summary, headroom, vanishing)


def _affine_from_vec(n: int, vec: dict) -> AffineMap:
    lin = {k: v for k, v in vec.items() if k < n * n}
    trans = [vec.get(n * n + i, Fraction(0)) for i in range(n)]
    return AffineMap(Matrix.from_vector(n, lin), trans)


def block_commutant(blocks: Sequence[tuple], n: int) -> list:
    """Basis of ``⊕ gl(m_i) ⊗ Id_{d_i}`` for isotypic blocks ``(d_i, m_i)``.

    Block ``i`` occupies ``m_i * d_i`` consecutive coordinates arranged as
    ``m_i`` copies of a ``d_i``-dimensional space.
    """
    if sum(d * m for d, m in blocks) != n:
        raise ValueError(f"blocks {list(blocks)} do not add up to dimension {n}")
    out = []
    start = 0
    for d, m in blocks:
        for a in range(m):
            for b in range(m):
                out.append(Matrix.from_sparse(n, [(start + a * d + k, start + b * d + k, 1) for k in range(d)]))
        start += d * m
    return out


def commutant_check(h0: StabilizerResult, g0: StabilizerResult, blocks: Sequence[tuple]) -> bool:
    """``span(h0) == span(g0) + block commutant``, exactly."""
    if h0.n != g0.n:
        raise ValueError("algebras act on different dimensions")
    comm = block_commutant(blocks, h0.n)
    lhs = [A.vector() for A in h0.linear_parts()]
    rhs = [A.vector() for A in g0.linear_parts()] + [C.vector() for C in comm]
    return linalg.span_equal(lhs, rhs)


def satisfies_annihilator(gens, A: Matrix) -> bool:
    return all(derivation_apply(A, g).is_zero() for g in gens)


def satisfies_ideal(I: GradedIdeal, A: Matrix) -> bool:
    return all(I.contains(derivation_apply(A, g)) for g in I.generators)


def span_contains(result: StabilizerResult, A: Matrix) -> bool:
    return linalg.span_contains([B.vector() for B in result.linear_parts()], [A.vector()])


__all__ = [
    "StabilizerResult", "affine_stabilizer_algebra", "annihilator_algebra", "block_commutant",
    "commutant_check", "ideal_stabilizer_algebra", "satisfies_annihilator", "satisfies_ideal", "span_contains",
]
