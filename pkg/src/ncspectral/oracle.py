"""Commutative and dense-numeric reference computations.

Nothing here uses quasideterminants; these are the independent answers
that the noncommutative routines must reduce to on commutative input or
agree with on truncated oscillator matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .fock import BandOperator, matrix_element
from .matrix import NcMatrix

__all__ = [
    "det_exact",
    "det_cofactor",
    "classical_charpoly",
    "classical_lagrange",
    "classical_lagrange_coeffs",
    "classical_projectors",
    "DenseTruncation",
    "dense_truncation",
    "dense_expm",
]


def _rows(A):
    if isinstance(A, NcMatrix):
        return [list(r) for r in A.data]
    return [list(r) for r in A]


def det_exact(A) -> Fraction:
    """Fraction-free (Bareiss) elimination with row swaps."""
    M = [[Fraction(v) for v in row] for row in _rows(A)]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det_cofactor(A) -> Fraction:
    """Laplace expansion along the first row; only for small matrices."""
    M = _rows(A)
    n = len(M)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * Fraction(M[0][j]) * det_cofactor(minor)
    return total


def classical_charpoly(A) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(lam I - A)`` (Faddeev-LeVerrier)."""
    M = [[Fraction(v) for v in row] for row in _rows(A)]
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A Mk_prev + c_{k-1} I
        AM = [[sum(M[i][l] * Mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[-1]
        Mk = AM
        AMk = [[sum(M[i][l] * Mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(AMk[i][i] for i in range(n)) / k)
    return coeffs


def classical_lagrange(xs, z) -> list:
    """``f_j(z) = prod_(i != j) (z - x_i) / (x_j - x_i)``."""
    out = []
    for j, xj in enumerate(xs):
        v = 1
        for i, xi in enumerate(xs):
            if i != j:
                v = v * (z - xi) / (xj - xi)
        out.append(v)
    return out


def classical_lagrange_coeffs(xs) -> list:
    """Descending-power coefficients of each classical Lagrange basis polynomial."""
    out = []
    for j, xj in enumerate(xs):
        poly = [Fraction(1)] if all(isinstance(x, (int, Fraction)) for x in xs) else [1]
        denom = 1
        for i, xi in enumerate(xs):
            if i == j:
                continue
            poly = [a - xi * b for a, b in zip(poly + [0], [0] + poly)]
            denom = denom * (xj - xi)
        out.append([c / denom for c in poly])
    return out


def classical_projectors(A, eigenvalues) -> list:
    """``P_j = prod_(i != j) (A - x_i I) / (x_j - x_i)`` as nested lists."""
    M = [[Fraction(v) for v in row] for row in _rows(A)]
    n = len(M)

    def mul(X, Y):
        return [[sum(X[i][l] * Y[l][j] for l in range(n)) for j in range(n)] for i in range(n)]

    out = []
    for j, xj in enumerate(eigenvalues):
        P = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        for i, xi in enumerate(eigenvalues):
            if i == j:
                continue
            F = [[(M[r][c] - (xi if r == c else 0)) / (xj - xi) for c in range(n)] for r in range(n)]
            P = mul(P, F)
        out.append(P)
    return out


# -- dense truncations of oscillator operators ------------------------------------


@dataclass
class DenseTruncation:
    """Dense matrix of an operator (or block matrix of operators) on levels ``0 .. dimension-1``."""

    dimension: int
    matrix: np.ndarray
    blocks: int = 1

    def element(self, bi: int, bj: int, m: int, n: int) -> complex:
        """Matrix element ``<m| X_(bi,bj) |n>`` with 1-based block indices."""
        d = self.dimension
        return complex(self.matrix[(bi - 1) * d + m, (bj - 1) * d + n])


def _dense_band(X: BandOperator, dim: int) -> np.ndarray:
    D = np.zeros((dim, dim), dtype=complex)
    for s in X.shifts:
        for n in range(dim):
            m = n + s
            if 0 <= m < dim:
                D[m, n] = matrix_element(X, m, n)
    return D


def dense_truncation(X, dim: int | None = None, cfg=None) -> DenseTruncation:
    """Truncate to ``dim`` levels (default ``window + 1`` of the ring's config)."""
    if dim is None:
        if cfg is None:
            cfg = X.ring.cfg if isinstance(X, NcMatrix) else None
        if cfg is None:
            from .ring import DEFAULT_CONFIG as cfg
        dim = cfg.window + 1
    if isinstance(X, BandOperator):
        return DenseTruncation(dim, _dense_band(X, dim))
    n = X.rows
    big = np.zeros((n * dim, X.cols * dim), dtype=complex)
    for i, row in enumerate(X.data):
        for j, e in enumerate(row):
            big[i * dim:(i + 1) * dim, j * dim:(j + 1) * dim] = _dense_band(e, dim)
    return DenseTruncation(dim, big, n)


def dense_expm(M, t=1.0) -> np.ndarray:
    """``exp(t M)`` by scaling and squaring (scipy)."""
    M = M.matrix if isinstance(M, DenseTruncation) else np.asarray(M)
    return scipy.linalg.expm(complex(t) * M)
