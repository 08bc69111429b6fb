from fractions import Fraction

import pytest

from onesided.linalg import (
    Matrix,
    fraction_to_str,
    generic_invertibility,
    mat_cokernel,
    mat_kernel,
    mat_solve,
    to_fraction,
)


def test_solve_identity():
    i2 = Matrix.identity(2)
    assert mat_solve(i2, i2) == i2


def test_solve_rank_one_consistent():
    a = Matrix.of([[1, 2], [2, 4]])
    b = Matrix.of([[1], [2]])
    x = mat_solve(a, b)
    assert x is not None and a @ x == b
    assert x == Matrix.of([[1], [0]])


def test_solve_inconsistent():
    assert mat_solve(Matrix.of([[1, 2], [2, 4]]), Matrix.of([[1], [3]])) is None


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        mat_solve(Matrix.identity(2), Matrix.identity(3))


def test_kernel_of_zero_is_everything():
    assert mat_kernel(Matrix.zeros(2, 2)) == Matrix.identity(2)


def test_kernel_of_identity_is_empty():
    k = mat_kernel(Matrix.identity(3))
    assert k.shape == (3, 0)


def test_kernel_of_row():
    k = mat_kernel(Matrix.of([[1, 1]]))
    assert k == Matrix.of([[-1], [1]])


def test_cokernel_kills_image():
    a = Matrix.of([[1, 0], [0, 0], [2, 0]])
    assert (mat_cokernel(a) @ a).is_zero()
    assert mat_cokernel(a).rows == 3 - a.rank()


def test_generic_invertibility_examples():
    e11, e12, e22 = (Matrix.unit(2, 2, i, j) for i, j in ((0, 0), (0, 1), (1, 1)))
    assert generic_invertibility([Matrix.identity(2)])
    assert not generic_invertibility([e12])
    assert generic_invertibility([e11, e22])


def test_generic_invertibility_needs_a_combination():
    # Neither basis element is invertible but their sum is.
    assert generic_invertibility([Matrix.unit(2, 2, 0, 1), Matrix.unit(2, 2, 1, 0)])


def test_generic_invertibility_rejects_non_square():
    with pytest.raises(ValueError):
        generic_invertibility([Matrix.zeros(2, 3)])


def test_rationals_round_trip():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert fraction_to_str(Fraction(-4, 6)) == "-2/3"
    assert fraction_to_str(Fraction(5)) == "5"


def test_det_and_inverse():
    m = Matrix.of([[2, 1], [1, 1]])
    assert m.det() == 1
    assert m @ m.inverse() == Matrix.identity(2)
    assert Matrix.of([[1, 2], [2, 4]]).inverse() is None
