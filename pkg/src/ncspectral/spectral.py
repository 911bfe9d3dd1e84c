"""Vandermonde quasideterminants, noncommutative Lagrange interpolation and
spectral decomposition.

Everything runs in the ring ``R = M(n, base)``: the eigen-diagonals
``x_k`` and the matrix ``A`` are both elements of ``R``, and the
Vandermonde matrix is an ``n x n`` matrix with entries in ``R``.
Lagrange polynomials carry their coefficients on the left,
``f_i(z) = sum_k W_ik z^(n-k)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import weights as W
from .errors import (
    NotInvertible,
    RootNotFound,
    RootRejected,
    Singular,
    Undefined,
    VandermondeSingular,
)
from .fock import BandOperator, FockRing, diagonal
from .matrix import MatrixRing, NcMatrix, diag, mat_inverse_elimination, mat_power
from .quasidet import quasideterminant
from .quaternion import Quaternion, QuaternionRing
from .ring import ComplexRing, RationalRing

__all__ = [
    "EigenDiagonals",
    "SpectralDecomposition",
    "infer_ring",
    "vandermonde_matrix",
    "vandermonde_qdet",
    "vandermonde_expanded",
    "lagrange_coeffs",
    "lagrange_eval",
    "solve_eigen_diagonals",
    "spectral_decompose",
    "main_identity_residual",
    "matrix_function",
    "reconstruction_residuals",
]


def infer_ring(x, cfg=None):
    """Best-effort ring descriptor for a bare element."""
    kw = {} if cfg is None else {"cfg": cfg}
    if isinstance(x, NcMatrix):
        return MatrixRing(x.ring, x.rows)
    if isinstance(x, Quaternion):
        return QuaternionRing(exact=x.exact, **kw)
    if isinstance(x, BandOperator):
        return FockRing(**kw)
    if isinstance(x, (int, Fraction)):
        return RationalRing(**kw)
    if isinstance(x, (float, complex)):
        return ComplexRing(**kw)
    raise TypeError(f"cannot infer a ring for {type(x).__name__}")


def _ring(elems, ring):
    return ring if ring is not None else infer_ring(elems[0])


def _powers(ring, x, top):
    out = [ring.one]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def vandermonde_matrix(xs, ring=None) -> NcMatrix:
    """Rows ``x_1^p .. x_n^p`` for ``p = n-1, ..., 0``."""
    ring = _ring(xs, ring)
    n = len(xs)
    pows = [_powers(ring, x, n - 1) for x in xs]
    return NcMatrix(ring, [[pows[k][p] for k in range(n)] for p in range(n - 1, -1, -1)])


def vandermonde_qdet(xs, z, m: int | None = None, ring=None):
    """Boxed top-right quasideterminant of the bordered power matrix.

    The first row holds ``x_1^m .. x_n^m, z^m`` (``m`` defaults to the
    number of ``xs``), the others the powers ``n-1, ..., 0``.  This is
    ``V(x_1, ..., x_n, z)`` for the default ``m`` and ``V_m`` otherwise.
    """
    ring = _ring(list(xs) + [z], ring)
    n = len(xs)
    m = n if m is None else m
    top = max(m, n - 1)
    pows = [_powers(ring, x, top) for x in list(xs) + [z]]
    rows = [[p[m] for p in pows]]
    rows += [[p[q] for p in pows] for q in range(n - 1, -1, -1)]
    return quasideterminant(NcMatrix(ring, rows), 1, n + 1)


def lagrange_coeffs(xs, ring=None) -> NcMatrix:
    """Inverse Vandermonde matrix; row ``i`` holds the coefficients of ``f_i``."""
    ring = _ring(xs, ring)
    V = vandermonde_matrix(xs, ring)
    try:
        return mat_inverse_elimination(V)
    except (Singular, NotInvertible) as exc:
        raise VandermondeSingular(f"Vandermonde matrix is not invertible: {exc}") from None


def lagrange_eval(Wc: NcMatrix, i: int, z, ring=None):
    """``f_i(z) = sum_k W_ik z^(n-k)``."""
    ring = ring if ring is not None else Wc.ring
    n = Wc.rows
    pows = _powers(ring, z, n - 1)
    value = ring.zero
    for k in range(n):
        value = value + Wc.data[i - 1][k] * pows[n - 1 - k]
    return value


def vandermonde_expanded(xs, Wc: NcMatrix, z, m: int, ring=None):
    """``z^m - sum_k x_k^m f_k(z)``, the interpolation form of ``V_m``."""
    ring = ring if ring is not None else Wc.ring
    value = ring.power(z, m)
    for k, x in enumerate(xs, 1):
        value = value - ring.power(x, m) * lagrange_eval(Wc, k, z, ring)
    return value


# -- eigen-diagonals --------------------------------------------------------------


@dataclass
class EigenDiagonals:
    """``x_1 .. x_n`` as diagonal matrices; ``roots[i][j]`` is ``(x_j)_ii``."""

    xs: list
    roots: list
    strategy: str = "user"

    def __len__(self):
        return len(self.xs)

    def __iter__(self):
        return iter(self.xs)

    def __getitem__(self, k):
        return self.xs[k]


def _zero_root_factor(coeffs, ring):
    # lam^d - sum C_k lam^(d-k): a vanishing constant term splits off a root 0
    d = len(coeffs)
    if d == 0:
        return []
    if d == 1:
        return [coeffs[0]]
    if ring.is_zero(coeffs[-1]):
        return _zero_root_factor(coeffs[:-1], ring) + [ring.zero]
    raise RootNotFound("zero-root factoring needs a vanishing constant coefficient")


def _sort_key(z):
    return (-round(z.real, 9), -round(z.imag, 9))


def _pointwise_roots(poly, window):
    """Per-level numeric roots of a polynomial with diagonal coefficients."""
    n = poly.degree
    table = np.zeros((n, window + 1), dtype=complex)
    for m in range(window + 1):
        cs = []
        for c in poly.coeffs:
            if not c.is_diagonal:
                raise RootNotFound("pointwise roots need diagonal coefficients")
            cs.append(c.weight(0).evaluate(m))
        roots = np.roots([1.0] + [-c for c in cs]) if n else np.zeros(0)
        if len(roots) < n:
            roots = np.concatenate([roots, np.zeros(n - len(roots))])
        roots = sorted((complex(r) for r in roots), key=_sort_key)
        table[:, m] = roots
    return [diagonal(W.Table(0, table[j])) for j in range(n)]


def solve_eigen_diagonals(A: NcMatrix, polys, strategy: str = "auto", roots=None) -> EigenDiagonals:
    """Roots of every row polynomial, assembled into diagonal matrices.

    ``strategy`` is ``"zero-root"`` (exact factoring of vanishing constant
    terms), ``"pointwise"`` (numeric roots level by level, for oscillator
    matrices), ``"user"`` (``roots[i][j]`` supplied) or ``"auto"``.
    Every root is checked against its polynomial and the Vandermonde matrix
    is checked for invertibility.
    """
    base = A.ring
    n = A.rows
    polys = sorted(polys, key=lambda p: p.row)
    if strategy == "auto":
        strategy = "user" if roots is not None else ("pointwise" if isinstance(base, FockRing) else "zero-root")
    if strategy == "zero-root":
        table = [_zero_root_factor(list(p.coeffs), base) for p in polys]
    elif strategy == "pointwise":
        if not isinstance(base, FockRing):
            raise RootNotFound("pointwise roots are only available for oscillator matrices")
        table = [_pointwise_roots(p, base.cfg.window) for p in polys]
    elif strategy == "user":
        if roots is None:
            raise RootNotFound("no roots supplied")
        table = [[base.coerce(r) for r in row] for row in roots]
    else:
        raise ValueError(f"unknown root strategy {strategy!r}")
    if len(table) != n or any(len(r) != n for r in table):
        raise RootNotFound(f"need {n} roots for each of the {n} rows")
    for p, row in zip(polys, table):
        for j, r in enumerate(row, 1):
            value = p.evaluate(base, r)
            if not base.is_zero(value):
                raise RootRejected(
                    f"root {j} of row {p.row} leaves residual {base.norm(value):.3g} in its polynomial"
                )
    xs = [diag(base, [table[i][j] for i in range(n)]) for j in range(n)]
    lagrange_coeffs(xs, MatrixRing(base, n))
    return EigenDiagonals(xs, table, strategy)


# -- decomposition ----------------------------------------------------------------


@dataclass
class SpectralDecomposition:
    xs: EigenDiagonals
    projectors: list
    coeffs: NcMatrix
    residual_report: dict = field(default_factory=dict)


def spectral_decompose(A: NcMatrix, xs, report: bool = True) -> SpectralDecomposition:
    """``P_k = f_k(A)`` with the Lagrange coefficients of ``xs``.

    With ``report`` the residuals of the projector algebra and of
    ``V_m(x_1, ..., x_n, A)`` for ``m = 0 .. n+5`` are collected; the
    ``V_m`` values are computed both as bordered quasideterminants and
    in expanded form; ``vandermonde_relative`` divides the expanded ones
    by ``max(1, ||A^m||)``, which is the meaningful scale for floating
    backends.
    """
    if not isinstance(xs, EigenDiagonals):
        xs = EigenDiagonals(list(xs), [], "user")
    n = A.rows
    R = MatrixRing(A.ring, n)
    Wc = lagrange_coeffs(xs.xs, R)
    Ps = [lagrange_eval(Wc, k, A, R) for k in range(1, n + 1)]
    out = SpectralDecomposition(xs, Ps, Wc)
    if report:
        out.residual_report = _residual_report(A, xs.xs, Ps, Wc, R)
    return out


def _residual_report(A, xs, Ps, Wc, R):
    n = len(Ps)
    rep = {
        "idempotence": max(R.norm(P * P - P) for P in Ps),
        "orthogonality": max(
            (R.norm(Ps[a] * Ps[b]) for a in range(n) for b in range(n) if a != b), default=0.0
        ),
        "completeness": R.norm(sum(Ps[1:], Ps[0]) - R.one),
    }
    expanded, bordered, relative = [], [], []
    for m in range(n + 6):
        expanded.append(R.norm(vandermonde_expanded(xs, Wc, A, m, R)))
        relative.append(expanded[-1] / max(1.0, R.norm(R.power(A, m))))
        try:
            bordered.append(R.norm(vandermonde_qdet(xs, A, m, R)))
        except Undefined:
            bordered.append(None)
    rep["vandermonde_expanded"] = expanded
    rep["vandermonde_bordered"] = bordered
    rep["vandermonde_relative"] = relative
    rep["vandermonde_max"] = max([v for v in expanded + bordered if v is not None])
    return rep


def reconstruction_residuals(A: NcMatrix, xs, Ps, powers=range(7)) -> list:
    """``||A^m - sum_k x_k^m P_k||`` for each ``m``; holds for any root pairing."""
    R = MatrixRing(A.ring, A.rows)
    out = []
    for m in powers:
        value = mat_power(A, m)
        for x, P in zip(xs, Ps):
            value = value - R.power(x, m) * P
        out.append(R.norm(value))
    return out


def main_identity_residual(xs, z, m: int, ring=None):
    """``V_(m-1) z - V_m + c_(1,n+1) c_(2,n+1)^-1 V_n``.

    Each factor is its own bordered quasideterminant; ``c_(1,n+1)`` and
    ``c_(2,n+1)`` border the lower power block with the column
    ``(0, ..., 0, 1)`` under ``x^m`` and ``x^n`` respectively.  The result
    vanishes for arbitrary ``xs`` and ``z``.
    """
    ring = _ring(list(xs) + [z], ring)
    n = len(xs)
    if m < 1:
        raise ValueError("m must be at least 1")
    top = max(m, n)
    pows = [_powers(ring, x, top) for x in xs]
    lower = [[p[q] for p in pows] for q in range(n - 1, -1, -1)]
    unit = [ring.zero] * (n - 1) + [ring.one]

    def corner(p):
        rows = [[x[p] for x in pows] + [ring.zero]] + [row + [u] for row, u in zip(lower, unit)]
        return quasideterminant(NcMatrix(ring, rows), 1, n + 1)

    c1, c2 = corner(m), corner(n)
    c2_inv = ring.try_inverse(c2)
    if c2_inv is None:
        raise Undefined("c_(2,n+1) is not invertible")
    v_prev = vandermonde_qdet(xs, z, m - 1, ring)
    v_m = vandermonde_qdet(xs, z, m, ring)
    v_n = vandermonde_qdet(xs, z, n, ring)
    return v_prev * z - v_m + c1 * c2_inv * v_n


def matrix_function(A: NcMatrix, decomp: SpectralDecomposition, func: str, scale=1) -> NcMatrix:
    """``sum_k func(scale * x_k) P_k`` over the backend's approximate ring."""
    n = A.rows
    R = MatrixRing(A.ring, n)
    total = None
    for x, P in zip(decomp.xs.xs, decomp.projectors):
        term = R.apply(x, func, scale) * R.approximate(P)
        total = term if total is None else total + term
    return total
