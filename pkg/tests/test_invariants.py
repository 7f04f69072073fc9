import pytest

from nullcone import invariants as inv
from nullcone.invariants import GeneratorSet, WeightSystem
from nullcone.matrices import Matrix, bracket
from nullcone.poly import parse_poly


def test_z4_generators():
    ws = WeightSystem.cyclic(4, 2, 1)
    gens = inv.minimal_monomial_generators(ws, 4, ("x", "y"))
    assert sorted(gens.format()) == ["x*y^2", "x^2", "y^4"]
    assert inv.generated_up_to(ws, gens, 8)


def test_cstar_generators():
    ws = WeightSystem.torus(-1, 1, 2)
    gens = inv.minimal_monomial_generators(ws, 3, ("x", "y", "z"))
    assert gens.format() == ["x*y", "x^2*z"]
    assert inv.generated_up_to(ws, gens, 6)


def test_degree_bound_too_small_is_not_saturated():
    ws = WeightSystem.cyclic(4, 2, 1)
    gens = inv.minimal_monomial_generators(ws, 3, ("x", "y"))
    assert sorted(gens.format()) == ["x*y^2", "x^2"]
    assert not inv.generated_up_to(ws, gens, 4)


def test_weight_of_monomial_reduces_cyclic_part():
    ws = WeightSystem(1, (4,), ((1, 2), (-1, 1)))
    assert inv.weight_of_monomial(ws, (1, 3)) == (-2, 1)


def test_equal_invariants_for_equivalent_weights():
    assert inv.invariants_equal_up_to(WeightSystem.cyclic(4, 2, 1), WeightSystem.cyclic(4, 2, 5), 6)
    assert not inv.invariants_equal_up_to(WeightSystem.cyclic(4, 2, 1), WeightSystem.cyclic(4, 1, 1), 4)


@pytest.mark.parametrize("args", [(-1, (), ((1,),)), (0, (1,), ((0,),)), (1, (), ((1, 2),))])
def test_weight_system_validation(args):
    with pytest.raises(ValueError):
        WeightSystem(*args)


def test_generator_set_rejects_inhomogeneous_and_proportional():
    names = ("x", "y")
    with pytest.raises(ValueError):
        GeneratorSet(2, (parse_poly("x + y^2", names),))
    with pytest.raises(ValueError):
        GeneratorSet(2, (parse_poly("x*y", names), parse_poly("2*x*y", names)))


@pytest.mark.parametrize("n,p,q", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2)])
def test_contractions_are_invariant(n, p, q):
    gens = inv.contraction_generators(n, p, q)
    assert len(gens) == p * q
    assert all(inv.is_annihilated(gens, inv.contraction_rep(n, p, q, Y))
               for Y in inv.sl_basis(n) + [Matrix.identity(n)])


@pytest.mark.parametrize("n,include_trace", [(2, False), (3, False), (2, True), (3, True)])
def test_adjoint_traces_are_invariant(n, include_trace):
    gens = inv.adjoint_trace_generators(n, include_trace)
    assert gens.degrees == tuple(range(1 if include_trace else 2, n + 1))
    assert all(inv.is_annihilated(gens, inv.adjoint_rep(n, Y, include_trace)) for Y in inv.sl_basis(n))


def test_adjoint_rep_is_a_representation():
    X, Y = inv.sl_basis(3)[:2]
    lhs = inv.adjoint_rep(3, bracket(X, Y), False)
    rhs = bracket(inv.adjoint_rep(3, X, False), inv.adjoint_rep(3, Y, False))
    assert lhs == rhs


def test_sym2_vector_generators_and_bidegrees():
    gens = inv.sym2_vector_generators(2)
    assert gens.format() == ["s11*s22 - s12^2", "s11*v2^2 - 2*s12*v1*v2 + s22*v1^2"]
    assert [g.multidegree(gens.blocks) for g in gens] == [{(2, 0)}, {(1, 2)}]
    assert all(inv.is_annihilated(gens, inv.sym2_vector_rep(2, Y)) for Y in inv.sl_basis(2))


def test_pfaffian_invariant_under_sl4():
    gens = inv.pfaffian_scenario_generators()
    assert gens.format() == ["w12*w34 - w13*w24 + w14*w23"]
    assert all(inv.is_annihilated(gens, inv.pfaffian_rep(Y)) for Y in inv.sl_basis(4))


def test_transposition_permutes_coordinates():
    T = inv.transposition_map(2, True)
    assert T @ T == Matrix.identity(4)
    gens = inv.adjoint_trace_generators(2, True)
    assert all(g.compose(T) == g for g in gens)
