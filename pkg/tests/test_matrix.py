import random
from fractions import Fraction

import pytest

from conftest import random_quaternion_matrix, random_rational_matrix
from ncspectral import (
    DimensionMismatch,
    IndexOutOfRange,
    MatrixRing,
    NcMatrix,
    RationalRing,
    Singular,
    diag,
    identity,
    mat_inverse_elimination,
    mat_power,
    solve_left_linear,
    zeros,
)
from ncspectral.matrix import delete_row_col, extract_col_without, extract_row_without, mat_equal
from ncspectral.oracle import det_exact

Q = RationalRing()


def _adjugate_inverse(A):
    n = A.rows
    det = det_exact(A)
    return [[(-1) ** (i + j) * det_exact(delete_row_col(A, j + 1, i + 1)) / det for j in range(n)] for i in range(n)]


def test_rational_inverse_matches_adjugate():
    rng = random.Random(4)
    done = 0
    while done < 20:
        A = random_rational_matrix(rng, 4)
        if det_exact(A) == 0:
            continue
        done += 1
        assert [list(r) for r in mat_inverse_elimination(A).data] == _adjugate_inverse(A)


def test_quaternion_inverse_both_sides(quat_ring):
    rng = random.Random(5)
    for n in (2, 3, 4):
        A = random_quaternion_matrix(rng, n, quat_ring)
        B = mat_inverse_elimination(A)
        assert A * B == identity(quat_ring, n) and B * A == identity(quat_ring, n)


def test_singular_matrix():
    A = NcMatrix(Q, [[1, 2], [2, 4]])
    with pytest.raises(Singular):
        mat_inverse_elimination(A)


def test_pivoting_past_zero_entry():
    A = NcMatrix(Q, [[0, 1], [1, 0]])
    assert mat_inverse_elimination(A) == A


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        NcMatrix(Q, [[1, 2], [3]])
    A = NcMatrix(Q, [[1, 2]])
    with pytest.raises(DimensionMismatch):
        A * A
    with pytest.raises(IndexOutOfRange):
        A.entry(2, 1)


def test_minor_helpers():
    A = NcMatrix(Q, [[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert delete_row_col(A, 2, 2) == NcMatrix(Q, [[1, 3], [7, 9]])
    assert tuple(extract_row_without(A, 1, 2)) == (1, 3)
    assert tuple(extract_col_without(A, 3, 1)) == (6, 9)


def test_power_and_identity():
    A = NcMatrix(Q, [[1, 1], [0, 1]])
    assert mat_power(A, 5) == NcMatrix(Q, [[1, 5], [0, 1]])
    assert mat_power(A, 0) == identity(Q, 2)
    assert zeros(Q, 2) + A == A


def test_left_linear_solve(quat_ring):
    rng = random.Random(6)
    M = random_quaternion_matrix(rng, 3, quat_ring)
    c = [q for q in random_quaternion_matrix(rng, 3, quat_ring).data[0]]
    b = [sum((c[k] * M.data[k][j] for k in range(3)), 0 * c[0]) for j in range(3)]
    got, free = solve_left_linear(M, b)
    assert free == [] and list(got) == c


def test_left_linear_free_and_inconsistent():
    M = NcMatrix(Q, [[1, 2], [2, 4]])
    coeffs, free = solve_left_linear(M, [Fraction(3), Fraction(6)])
    assert len(free) == 1
    assert coeffs[0] * 1 + coeffs[1] * 2 == 3
    with pytest.raises(Singular):
        solve_left_linear(M, [Fraction(1), Fraction(0)])


def test_matrix_ring_elements(quat_ring):
    R = MatrixRing(quat_ring, 2)
    rng = random.Random(7)
    X = random_quaternion_matrix(rng, 2, quat_ring)
    assert R.inverse(X) * X == R.one
    assert R.coerce(3) == diag(quat_ring, [3 * quat_ring.one] * 2)
    assert mat_equal(R.power(X, 3), X * X * X)
