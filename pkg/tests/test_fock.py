import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncspectral import (
    BandOperator,
    EvalError,
    FockRing,
    NoSolution,
    ParseError,
    UnsupportedDivision,
    annihilation,
    band_divide,
    creation,
    diagonal,
    matrix_element,
    number,
    parse_fock,
    parse_weight,
)
from ncspectral import weights as W
from ncspectral.fock import band_equal, band_norm, band_try_inverse, identity
from ncspectral.oracle import dense_truncation
from ncspectral.errors import NotInvertible

a, ad, N, one = annihilation(), creation(), number(), identity()
ring = FockRing()


def test_canonical_commutator():
    assert band_equal(a * ad - ad * a, one)


def test_number_operator_relations():
    assert band_equal(ad * a, N)
    assert band_equal(N * a, a * (N - one))
    assert band_equal(N * ad, ad * (N + one))


def test_ladder_matrix_elements():
    for n in range(6):
        assert matrix_element(a, n - 1, n) == pytest.approx(math.sqrt(n)) if n else True
        assert matrix_element(ad, n + 1, n) == pytest.approx(math.sqrt(n + 1))
        assert matrix_element(N, n, n) == pytest.approx(n)
    assert matrix_element(a, 0, 0) == 0


def test_lowering_below_vacuum_is_cut_off():
    # a a|1> = 0 must hold exactly, not via sqrt of a negative level
    X = a * a
    assert matrix_element(X, -1, 1) == 0
    assert abs(matrix_element(ad * a * a, 0, 1)) == 0


ops = st.sampled_from(["a", "ad", "N", "sqrt(2)*a", "a^2", "ad*a + 1", "3", "N^2 - a*ad", "sqrt(N+1)"])


@given(ops, ops, ops)
@settings(max_examples=40, deadline=None)
def test_product_is_associative(x, y, z):
    X, Y, Z = parse_fock(x), parse_fock(y), parse_fock(z)
    assert band_equal((X * Y) * Z, X * (Y * Z))


@given(ops, ops)
@settings(max_examples=40, deadline=None)
def test_band_product_matches_dense_product(x, y):
    # interior of the truncated product is exact when the truncation is wide enough
    X, Y = parse_fock(x), parse_fock(y)
    big = 30
    DX = dense_truncation(X, big).matrix
    DY = dense_truncation(Y, big).matrix
    DP = dense_truncation(X * Y, big).matrix
    np.testing.assert_allclose((DX @ DY)[:20, :20], DP[:20, :20], atol=1e-10)


def test_divide_number_like_coefficients():
    C = parse_fock("2*sqrt(2)*(2*N+3)*a")
    sol = band_divide(C, parse_fock("sqrt(2)*a"), "right")
    assert band_equal(sol.solution, parse_fock("2*(2*N+3)"))
    assert not sol.kernel
    # on the other side the diagonal factor is shifted by commuting past a
    left = band_divide(C, parse_fock("sqrt(2)*a"), "left")
    assert band_equal(left.solution, parse_fock("2*(2*N+1)"))


def test_divide_right_by_creation_reports_kernel():
    b = parse_fock("2*sqrt(2)*(2*N+1)*ad")
    sol = band_divide(b, parse_fock("sqrt(2)*ad"), "right")
    assert sol.kernel
    for n in range(8):
        assert matrix_element(sol.solution, n, n) == pytest.approx(2 * (2 * n + 1))


def test_divide_without_solution():
    with pytest.raises(NoSolution):
        band_divide(one, a, "right")


def test_divide_multiband_divisor_unsupported():
    with pytest.raises(UnsupportedDivision):
        band_divide(one, a + ad, "right")


def test_diagonal_inverse():
    X = band_try_inverse(N + one)
    assert band_equal(X * (N + one), one)
    with pytest.raises(NotInvertible):
        band_try_inverse(N)
    with pytest.raises(NotInvertible):
        band_try_inverse(a)


def test_ring_apply_exponential():
    E = ring.apply(N, "exp", 0.5j)
    for n in range(10):
        assert matrix_element(E, n, n) == pytest.approx(np.exp(0.5j * n))


@pytest.mark.parametrize(
    "text,check",
    [
        ("a*ad - ad*a", lambda X: band_equal(X, one)),
        ("sqrt(2)*a", lambda X: band_equal(X, a * math.sqrt(2))),
        ("-N + 2", lambda X: band_equal(X, 2 * one - N)),
        ("(a + ad)^2", lambda X: band_equal(X, a * a + a * ad + ad * a + ad * ad)),
        ("sqrt(2*N+3)", lambda X: abs(matrix_element(X, 4, 4) - math.sqrt(11)) < 1e-15),
    ],
)
def test_parse_expressions(text, check):
    assert check(parse_fock(text))


@pytest.mark.parametrize("text,pos", [("a +", 3), ("sqrt(a)", 0), ("2 * (N", 6), ("a ^ -1", 4), ("b", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_fock(text)
    assert err.value.position == pos


def test_weight_expressions():
    w = parse_weight("(n+1)/(2*(2*n+3))")
    assert w.evaluate(2) == pytest.approx(3 / 14)
    assert w.shift(1).evaluate(1) == pytest.approx(3 / 14)


def test_zero_over_zero_continues_analytically():
    w = W.div(parse_weight("n"), parse_weight("2*n"))
    assert w.evaluate(0) == pytest.approx(0.5)


def test_negative_radicand_is_an_error():
    with pytest.raises(EvalError):
        parse_weight("sqrt(n-3)").evaluate(1)


def test_norm_window():
    assert band_norm(one * 0) == 0
    assert band_norm(N) == pytest.approx(ring.cfg.probe_levels)


def test_tabulated_weights_drop_when_zero():
    X = diagonal(W.Table(0, np.zeros(5)))
    assert X.shifts == ()
    assert isinstance(X, BandOperator)
