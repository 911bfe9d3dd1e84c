import random

import pytest

from conftest import random_quaternion, random_quaternion_matrix, random_rational_matrix
from ncspectral import (
    NcMatrix,
    UnsupportedDivision,
    cayley_hamilton_residual,
    char_poly_all,
    char_poly_row,
    char_poly_row_bordered,
    matrix_element,
    row_poly_divergence,
)
from ncspectral.charpoly import coefficient_residual
from ncspectral.oracle import classical_charpoly
from ncspectral.matrix import mat_norm


def test_commutative_rows_coincide_with_classical():
    rng = random.Random(17)
    for n in (2, 3, 4, 5):
        for _ in range(5):
            A = random_rational_matrix(rng, n)
            classical = classical_charpoly(A)
            for p in char_poly_all(A):
                if p.degenerate:
                    continue
                assert list(p.coeffs) == [-c for c in classical[1:]]


def test_cayley_hamilton_quaternion(quat_ring):
    rng = random.Random(18)
    for n in (2, 3, 4):
        A = random_quaternion_matrix(rng, n, quat_ring)
        polys = char_poly_all(A)
        res = cayley_hamilton_residual(A, polys)
        assert all(e.is_zero() for e in res.entries())
        for p in polys:
            assert all(e.is_zero() for e in coefficient_residual(A, p))


def test_bordered_form_matches_row_solution(quat_ring):
    rng = random.Random(19)
    A = random_quaternion_matrix(rng, 3, quat_ring)
    for i in (1, 2, 3):
        p = char_poly_row(A, i)
        lam = random_quaternion(rng)
        assert char_poly_row_bordered(A, i, lam) == p.evaluate(quat_ring, lam)


def test_rows_generally_diverge(quat_ring):
    rng = random.Random(20)
    A = random_quaternion_matrix(rng, 2, quat_ring)
    assert row_poly_divergence(char_poly_all(A), quat_ring)


def test_degenerate_row_sets_free_coefficients_to_zero(quat_ring):
    from ncspectral import ONE, I

    A = NcMatrix(quat_ring, [[I, 0 * I], [ONE, 2 * I]])
    p = char_poly_row(A, 1)
    assert p.degenerate and p.free_parameter_note
    assert all(e.is_zero() for e in coefficient_residual(A, p))


def test_oscillator_rows(osc_matrix):
    polys = char_poly_all(osc_matrix)
    assert [p.degenerate for p in polys] == [False, True, False]
    assert "continuation" in polys[2].free_parameter_note
    res = cayley_hamilton_residual(osc_matrix, polys)
    assert mat_norm(res) < 1e-9


def test_oscillator_row_three_vacuum_value(osc_matrix):
    # at level 0 the physical equations leave C_(3)2 free; continuation gives 2(2N-1) = -2
    p = char_poly_row(osc_matrix, 3)
    assert abs(matrix_element(p.coeffs[1], 0, 0) + 2) < 1e-9


def test_diagonal_ansatz_failure(fock_ring):
    A = NcMatrix.from_literals(fock_ring, [["a", "0"], ["0", "0"]])
    with pytest.raises(UnsupportedDivision):
        char_poly_row(A, 1)
