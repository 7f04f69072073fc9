from fractions import Fraction

from nullcone import linalg
from nullcone.matrices import Matrix, bracket, permutation_matrix


def test_echelon_relations_and_reduce():
    ech = linalg.Echelon(track=True)
    assert ech.add({0: 1, 1: 2}, "a") is None
    assert ech.add({1: 1}, "b") is None
    rel = ech.add({0: 2, 1: 7}, "c")
    # 2a + 3b - c = 0, reported as an expression of c
    assert rel is not None
    assert ech.rank == 2
    residual, combo = ech.reduce({0: 1, 1: 2, 2: 5})
    assert residual == {2: Fraction(5)}


def test_kernel_basic():
    images = [{0: 1}, {0: 1}, {1: 1}]
    kern = linalg.kernel(images)
    assert len(kern) == 1
    v = kern[0]
    assert sum(v.get(i, 0) * images[i].get(0, 0) for i in range(3)) == 0


def test_span_equal_and_contains():
    assert linalg.span_equal([{0: 1}, {1: 1}], [{0: 1, 1: 1}, {0: 1, 1: -1}])
    assert not linalg.span_contains([{0: 1}], [{1: 1}])


def test_solve():
    sol = linalg.solve([{0: 1}, {1: 2}], {0: 3, 1: 4})
    assert sol == {0: 3, 1: 2}
    assert linalg.solve([{0: 1}], {1: 1}) is None


def test_matrix_ops():
    A = Matrix([[1, 2], [3, 4]])
    assert A @ Matrix.identity(2) == A
    assert A.transpose() == Matrix([[1, 3], [2, 4]])
    assert A.trace() == 5
    assert Matrix.from_vector(2, A.vector()) == A
    assert bracket(A, A).is_zero()
    assert Matrix([[1, 1], [1, 1]]).rank() == 1


def test_permutation_matrix_sends_basis_vectors():
    P = permutation_matrix([1, 2, 0])
    assert P.apply([1, 0, 0]) == [0, 1, 0]
