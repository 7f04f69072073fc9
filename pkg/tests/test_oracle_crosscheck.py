"""Library against the independent sympy brute-force oracle in ``oracle.py``."""

import sys
from pathlib import Path

import pytest
import sympy as sp

sys.path.insert(0, str(Path(__file__).parent))
import oracle  # noqa: E402

from nullcone import ideals, invariants as inv, stabilizer as st  # noqa: E402
from nullcone.ideals import FiberIdeal  # noqa: E402
from nullcone.invariants import WeightSystem, minimal_monomial_generators  # noqa: E402
from nullcone.poly import Polynomial, format_poly  # noqa: E402


def to_sympy(gens):
    syms = sp.symbols(" ".join(gens.names))
    syms = syms if isinstance(syms, tuple) else (syms,)
    local = dict(zip(gens.names, syms))
    return [sp.sympify(format_poly(g, gens.names).replace("^", "**"), locals=local) for g in gens], list(syms)


def lib_dims(gens):
    return (st.annihilator_algebra(gens).dimension,
            st.ideal_stabilizer_algebra(ideals.nullcone_ideal(gens)).dimension)


FAST = {
    "z4": lambda: minimal_monomial_generators(WeightSystem.cyclic(4, 2, 1), 4, ("x", "y")),
    "cstar": lambda: minimal_monomial_generators(WeightSystem.torus(-1, 1, 2), 3, ("x", "y", "z")),
    "sl2": lambda: inv.adjoint_trace_generators(2, False),
    "contraction11": lambda: inv.contraction_generators(2, 1, 1),
}
SLOW = {
    "contraction12": lambda: inv.contraction_generators(2, 1, 2),
    "gl2": lambda: inv.adjoint_trace_generators(2, True),
    "sym2": lambda: inv.sym2_vector_generators(2),
}


@pytest.mark.parametrize("name", sorted(FAST) + [pytest.param(k, marks=pytest.mark.slow) for k in sorted(SLOW)])
def test_stabilizer_dims_match_oracle(name):
    gens = {**FAST, **SLOW}[name]()
    polys, xs = to_sympy(gens)
    assert lib_dims(gens) == (oracle.annihilator_dim(polys, xs), oracle.ideal_stabilizer_dim(polys, xs))


@pytest.mark.parametrize("name", sorted(FAST))
def test_piece_dims_match_oracle(name):
    gens = FAST[name]()
    polys, xs = to_sympy(gens)
    I = ideals.nullcone_ideal(gens)
    assert [I.dim(d) for d in range(5)] == [oracle.piece_dim(polys, xs, d) for d in range(5)]


@pytest.mark.parametrize("h", [0, 1, 2, 3])
def test_truncated_membership_matches_oracle(h):
    gens = FAST["cstar"]()
    polys, xs = to_sympy(gens)
    z = ideals.FiberIdeal(gens, [1, 0])
    lib = bool(ideals.truncated_membership(Polynomial.variable(3, 2), z, h))
    assert lib == oracle.truncated_member(xs[2], polys, [1, 0], xs, h)


@pytest.mark.slow
def test_affine_stabilizers_match_oracle():
    sl2 = inv.adjoint_trace_generators(2, False)
    polys, xs = to_sympy(sl2)
    res = st.affine_stabilizer_algebra(FiberIdeal(sl2, [2]), 0)
    assert (res.dimension, res.translation_rank()) == oracle.affine_stabilizer(polys, [2], xs, 0)
    gl2 = inv.adjoint_trace_generators(2, True)
    polys, xs = to_sympy(gl2)
    res = st.affine_stabilizer_algebra(FiberIdeal(gl2, [3, 5]), 4)
    assert (res.dimension, res.translation_rank()) == oracle.affine_stabilizer(polys, [3, 5], xs, 4)
    assert len(res.vanishing) == oracle.affine_stabilizer(polys, [3, 5], xs, 4, vanishing=True)[0]
