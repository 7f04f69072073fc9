from fractions import Fraction

import pytest

from nullcone.matrices import AffineMap, Matrix
from nullcone.poly import (Polynomial, PolynomialSyntaxError, derivation_apply, format_poly, monomials_of_degree,
                           parse_poly, poly_det, vector_field_apply)

XYZ = ("x", "y", "z")


def P(text, names=XYZ):
    return parse_poly(text, names)


def test_parse_format_roundtrip():
    f = P("x^2*z - 3/2*y^4 + 7")
    assert format_poly(f, XYZ) == "-3/2*y^4 + x^2*z + 7"
    assert P(format_poly(f, XYZ)) == f


def test_parse_parentheses_and_powers():
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("x*(y - z)/2") == P("1/2*x*y - 1/2*x*z")
    assert P("-(x)") == -P("x")


@pytest.mark.parametrize("bad", ["x^", "x + w", "(x", "x ^ -1", "1/0", "x**2"])
def test_parse_errors(bad):
    with pytest.raises(PolynomialSyntaxError):
        P(bad)


def test_grlex_order():
    assert [format_poly(Polynomial.monomial(m), XYZ) for m in monomials_of_degree(3, 2)] == \
        ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]
    assert len(monomials_of_degree(4, 3)) == 20


def test_degree_and_homogeneity():
    f = P("x^2*z + y - 1")
    assert f.degree() == 3
    assert not f.is_homogeneous()
    assert f.leading_form() == P("x^2*z")
    assert f.homogeneous_part(0) == Polynomial.constant(3, -1)
    assert Polynomial.zero(3).degree() == -1


def test_derivation_of_elementary_matrix():
    # E_10: x * d/dy with columns as images of basis vectors
    A = Matrix.unit(2, 1, 0)
    assert derivation_apply(A, P("x*y^2", ("x", "y"))) == P("2*x^2*y", ("x", "y"))
    assert derivation_apply(A, P("x^2", ("x", "y"))).is_zero()


def test_vector_field_with_translation():
    f = P("x*y")
    A = Matrix.unit(3, 2, 1)  # y d/dz
    b = [1, 0, 0]           # d/dx
    assert vector_field_apply(A, b, f) == P("y")


def test_derivation_commutator_sign():
    A, B = Matrix.unit(2, 0, 1), Matrix.unit(2, 1, 0)
    f = P("x^3*y + y^2", ("x", "y"))
    lhs = derivation_apply(A, derivation_apply(B, f)) - derivation_apply(B, derivation_apply(A, f))
    assert lhs == -derivation_apply(A @ B - B @ A, f)


def test_compose_with_affine_map():
    swap = AffineMap(Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), [1, 0, 0])
    f = P("x^2*z")
    assert f.compose(swap) == P("(y + 1)^2*z")


def test_evaluate_exact():
    assert P("x/3 + y^2").evaluate([1, Fraction(1, 2), 0]) == Fraction(7, 12)


def test_poly_det():
    M = [[P("x"), P("y")], [P("z"), P("x")]]
    assert poly_det(M) == P("x^2 - y*z")


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        P("x") + parse_poly("x", ("x",))
