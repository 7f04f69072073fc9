from fractions import Fraction

import pytest

from nullcone import ideals
from nullcone.ideals import (EqualUpTo, FiberIdeal, MembershipCertificate, NotMember, NotRegular, RegularUpTo,
                             SyzygyNotKoszul, UndeterminedAtHeadroom, Witness)
from nullcone.invariants import WeightSystem, adjoint_trace_generators, minimal_monomial_generators
from nullcone.matrices import AffineMap, Matrix, permutation_matrix
from nullcone.poly import format_poly, parse_poly

XYZ = ("x", "y", "z")


def P(text, names=XYZ):
    return parse_poly(text, names)


@pytest.fixture(scope="module")
def cstar():
    return minimal_monomial_generators(WeightSystem.torus(-1, 1, 2), 3, XYZ)


@pytest.fixture(scope="module")
def z4():
    return minimal_monomial_generators(WeightSystem.cyclic(4, 2, 1), 4, ("x", "y"))


def test_piece_dimensions(z4, cstar):
    assert [ideals.nullcone_ideal(z4).dim(d) for d in range(1, 5)] == [0, 1, 3, 5]
    assert [ideals.nullcone_ideal(cstar).dim(d) for d in range(1, 6)] == [0, 1, 4, 8, 13]


def test_membership_certificate(cstar):
    I = ideals.nullcone_ideal(cstar)
    f = P("x^2*y*z + 3*x^3*z - x*y^3")
    cert = ideals.membership(f, I)
    assert isinstance(cert, MembershipCertificate)
    assert cert.verifies(f)
    assert cert.expand() == f


def test_non_member_residual(cstar):
    I = ideals.nullcone_ideal(cstar)
    res = ideals.membership(P("x*y + z^2"), I)
    assert isinstance(res, NotMember)
    assert res.residual == P("z^2")
    assert not res


def test_membership_rejects_inhomogeneous(cstar):
    with pytest.raises(ValueError):
        ideals.membership(P("x*y + x^2*z"), ideals.nullcone_ideal(cstar))


def test_z4_membership_examples(z4):
    I = ideals.nullcone_ideal(z4)
    names = ("x", "y")
    cert = ideals.membership(parse_poly("x^2*y", names), I)
    assert [format_poly(c, names) for c in cert.coefficients] == ["y", "0", "0"]
    assert not ideals.membership(parse_poly("x*y", names), I)
    assert ideals.membership(parse_poly("2*x^2*y", names), I)


def test_truncated_membership_headroom(cstar):
    F = FiberIdeal(cstar, [1, 0])
    z = P("z")
    assert isinstance(ideals.truncated_membership(z, F, 0), UndeterminedAtHeadroom)
    assert isinstance(ideals.truncated_membership(z, F, 1), UndeterminedAtHeadroom)
    for h in (2, 3, 4):
        cert = ideals.truncated_membership(z, F, h)
        assert isinstance(cert, MembershipCertificate) and cert.verifies(z)


def test_graded_comparison_witness(cstar):
    F = FiberIdeal(cstar, [1, 0])
    for h in (3, 4, 5):
        w = ideals.graded_comparison(F, 2, h)
        assert isinstance(w, Witness)
        assert (w.degree, format_poly(w.form, XYZ)) == (1, "z")
    assert [len(ideals.leading_form_space(F, d, 3)) for d in range(3)] == [0, 1, 4]


def test_graded_comparison_sl2():
    gens = adjoint_trace_generators(2, False)
    F = FiberIdeal(gens, [2])
    assert ideals.graded_comparison(F, 6, 0) == EqualUpTo(6)
    assert [len(ideals.leading_form_space(F, d, 0)) for d in range(7)] == [0, 0, 1, 3, 6, 10, 15]


def test_homogeneous_fiber_agrees_with_nullcone(cstar):
    F = FiberIdeal(cstar, [0, 0])
    assert ideals.graded_comparison(F, 4, 0) == EqualUpTo(4)


def test_regular_sequence(cstar):
    res = ideals.regular_sequence_check(cstar, 4)
    assert isinstance(res, NotRegular)
    assert (res.degree, res.expected, res.actual) == (4, 6, 7)
    assert isinstance(ideals.regular_sequence_check(adjoint_trace_generators(2, False), 6), RegularUpTo)
    assert isinstance(ideals.regular_sequence_check(adjoint_trace_generators(3, True), 5), RegularUpTo)


def test_regular_sequence_too_many_generators(z4):
    res = ideals.regular_sequence_check(z4, 4)
    assert isinstance(res, NotRegular) and res.degree == 0


def test_hilbert_prediction():
    assert [ideals.hilbert_prediction([2, 3], 3, d) for d in range(5)] == [1, 3, 5, 6, 6]


def test_jacobian_rank():
    gens = adjoint_trace_generators(2, True)
    assert ideals.jacobian_rank_at(gens, [1, 0, 0, 2]) == 2
    assert ideals.jacobian_rank_at(gens, [0, 0, 0, 0]) == 1


def test_map_preservation(cstar):
    swap = permutation_matrix([1, 0, 2])
    assert ideals.map_preserves_ideal(swap, ideals.nullcone_ideal(cstar)) is False
    assert ideals.map_preserves_ideal(swap, FiberIdeal(cstar, [1, 0]), 4) is True
    assert ideals.map_preserves_ideal(Matrix.identity(3), ideals.nullcone_ideal(cstar)) is True
    with pytest.raises(ValueError):
        ideals.map_preserves_ideal(Matrix.zero(3), ideals.nullcone_ideal(cstar))


def test_affine_map_preservation_of_fiber():
    gens = adjoint_trace_generators(2, True)
    F = FiberIdeal(gens, [3, 5])
    shift = AffineMap(Matrix.identity(4), [1, 0, 0, -1])  # keeps the trace, changes tr X^2
    assert not ideals.map_preserves_ideal(shift, F, 2)


def test_koszul_raises_on_non_koszul_syzygy(cstar):
    with pytest.raises(SyzygyNotKoszul):
        ideals.koszul_reduce([P("-x*z"), P("y")], cstar, [1, 0])


def test_koszul_reduces_koszul_syzygy():
    gens = adjoint_trace_generators(2, True)
    consts = [Fraction(3), Fraction(5)]
    p1, p2 = gens
    a = [p2, -p1]  # Koszul syzygy: f = p2 (p1 - 3) - p1 (p2 - 5) = 5 p1 - 3 p2
    red = ideals.koszul_reduce(a, gens, consts)
    f = sum(((x * (g - c)) for x, g, c in zip(a, gens, consts)), parse_poly("0", gens.names))
    g = sum(((x * (gg - c)) for x, gg, c in zip(red, gens, consts)), parse_poly("0", gens.names))
    assert f == g
    assert all(x.degree() + gg.degree() <= f.degree() for x, gg in zip(red, gens) if x)
