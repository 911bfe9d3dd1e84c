"""Quasideterminants and executable forms of their basic identities.

``|A|_{ij} = a_ij - r_i^j (A^{ij})^{-1} c_j^i``.  A quasideterminant whose
minor is singular does not exist; :func:`quasideterminant` raises
:class:`Undefined` and the sweep helpers catch it and count the skip.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import NotInvertible, PivotSingular, Singular, Undefined
from .matrix import (
    NcMatrix,
    delete_row_col,
    extract_col_without,
    extract_row_without,
    mat_inverse_elimination,
)

__all__ = [
    "quasideterminant",
    "try_quasideterminant",
    "mat_inverse_quasidet",
    "sylvester_reduce",
    "homological_residuals",
    "HomologicalReport",
    "scaling_check",
    "ScalingReport",
]


def _bilinear(ring, row, M, col):
    """``row . M . col`` for a row tuple, square matrix and column tuple."""
    acc = ring.zero
    for r, x in enumerate(row):
        inner = ring.zero
        for c, y in enumerate(col):
            inner = inner + M.data[r][c] * y
        acc = acc + x * inner
    return acc


def quasideterminant(A: NcMatrix, i: int, j: int, method: str = "elimination"):
    """The ``(i, j)`` quasideterminant of a square matrix.

    ``method='elimination'`` inverts the minor by Gaussian elimination;
    ``method='recursive'`` assembles the minor inverse from smaller
    quasideterminants instead, which can fail on zero sub-entries where
    elimination would not.
    """
    if not A.is_square:
        raise ValueError("quasideterminants need a square matrix")
    a_ij = A.entry(i, j)
    if A.rows == 1:
        return a_ij
    minor = delete_row_col(A, i, j)
    try:
        if method == "elimination":
            inv = mat_inverse_elimination(minor)
        elif method == "recursive":
            inv = mat_inverse_quasidet(minor, method="recursive")
        else:
            raise ValueError(f"unknown method {method!r}")
    except Singular as exc:
        raise Undefined(f"|A|_{i}{j}: minor A^{i}{j} is not invertible ({exc})") from None
    ring = A.ring
    return a_ij - _bilinear(ring, extract_row_without(A, i, j), inv, extract_col_without(A, j, i))


def try_quasideterminant(A: NcMatrix, i: int, j: int, method: str = "elimination"):
    """Like :func:`quasideterminant` but returns ``None`` when undefined."""
    try:
        return quasideterminant(A, i, j, method)
    except Undefined:
        return None


def mat_inverse_quasidet(A: NcMatrix, method: str = "elimination") -> NcMatrix:
    """``A^{-1} = (|A|_{ji}^{-1})``; raises :class:`Singular` if any piece fails."""
    if not A.is_square:
        raise ValueError("only square matrices are inverted")
    ring = A.ring
    n = A.rows
    out = [[None] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            try:
                q = quasideterminant(A, j, i, method)
                out[i - 1][j - 1] = ring.inverse(q)
            except (Undefined, NotInvertible) as exc:
                raise Singular(f"|A|_{j}{i} is undefined or not invertible: {exc}") from None
    return NcMatrix(ring, out)


def sylvester_reduce(A: NcMatrix, k: int) -> NcMatrix:
    """Compress ``A`` with its leading ``k x k`` block as pivot.

    Entry ``(p - k, q - k)`` of the result is the bordered quasideterminant
    ``a_pq - a_{p,1..k} A_0^{-1} a_{1..k,q}``; Sylvester's identity says
    ``|A|_{ij} = |C|_{i-k, j-k}`` for ``i, j > k``.
    """
    n = A.rows
    if not A.is_square or not 0 <= k < n:
        raise ValueError("need a square matrix and 0 <= k < n")
    if k == 0:
        return A
    ring = A.ring
    pivot = NcMatrix(ring, [row[:k] for row in A.data[:k]])
    try:
        inv = mat_inverse_elimination(pivot)
    except Singular as exc:
        raise PivotSingular(f"pivot block is singular: {exc}") from None
    out = []
    for p in range(k, n):
        row = A.data[p]
        out.append(
            [row[q] - _bilinear(ring, row[:k], inv, [A.data[r][q] for r in range(k)]) for q in range(k, n)]
        )
    return NcMatrix(ring, out)


@dataclass
class HomologicalReport:
    residuals: list = field(default_factory=list)  # (kind, (indices), element)
    skipped: list = field(default_factory=list)
    total: int = 0

    def max_norm(self, ring) -> float:
        return max((float(ring.norm(r)) for _, _, r in self.residuals), default=0.0)


def _minor_qdet(A, cache, i, j, r, c):
    """``|A^{ij}|_{rc}`` with ``r``, ``c`` given as labels of ``A``."""
    key = (i, j, r, c)
    if key not in cache:
        minor = delete_row_col(A, i, j)
        cache[key] = quasideterminant(minor, r - (r > i), c - (c > j))
    return cache[key]


def homological_residuals(A: NcMatrix, samples: int | None = None, seed: int = 0) -> HomologicalReport:
    """Residuals of the row and column homological relations.

    Row form (``s != i``, ``l != j``)::

        -|A|_ij |A^{il}|_sj^{-1} - |A|_il |A^{ij}|_sl^{-1}

    Column form (``k != i``, ``t != j``)::

        -|A^{kj}|_it^{-1} |A|_ij - |A^{ij}|_kt^{-1} |A|_kj

    Every defined residual should vanish.  With ``samples`` set, that many
    tuples of each form are drawn at random instead of enumerating all.
    """
    n = A.rows
    if not A.is_square or n < 2:
        raise ValueError("homological relations need a square matrix with n >= 2")
    ring = A.ring
    idx = range(1, n + 1)
    row_tuples = [(i, j, l, s) for i, j, l, s in itertools.product(idx, repeat=4) if l != j and s != i]
    col_tuples = [(i, j, k, t) for i, j, k, t in itertools.product(idx, repeat=4) if k != i and t != j]
    if samples is not None:
        rng = random.Random(seed)
        row_tuples = rng.sample(row_tuples, min(samples, len(row_tuples)))
        col_tuples = rng.sample(col_tuples, min(samples, len(col_tuples)))
    full = {}
    minors = {}

    def q(i, j):
        if (i, j) not in full:
            full[(i, j)] = quasideterminant(A, i, j)
        return full[(i, j)]

    report = HomologicalReport(total=len(row_tuples) + len(col_tuples))
    for i, j, l, s in row_tuples:
        try:
            lhs = -(q(i, j) * ring.inverse(_minor_qdet(A, minors, i, l, s, j)))
            rhs = q(i, l) * ring.inverse(_minor_qdet(A, minors, i, j, s, l))
        except (Undefined, NotInvertible):
            report.skipped.append(("row", (i, j, l, s)))
            continue
        report.residuals.append(("row", (i, j, l, s), lhs - rhs))
    for i, j, k, t in col_tuples:
        try:
            lhs = -(ring.inverse(_minor_qdet(A, minors, k, j, i, t)) * q(i, j))
            rhs = ring.inverse(_minor_qdet(A, minors, i, j, k, t)) * q(k, j)
        except (Undefined, NotInvertible):
            report.skipped.append(("column", (i, j, k, t)))
            continue
        report.residuals.append(("column", (i, j, k, t), lhs - rhs))
    return report


@dataclass
class ScalingReport:
    row: list = field(default_factory=list)  # (k, residual)
    column: list = field(default_factory=list)  # (l, residual)
    skipped: list = field(default_factory=list)

    def all_residuals(self):
        return [r for _, r in self.row] + [r for _, r in self.column]


def scaling_check(A: NcMatrix, lam, mu, i: int, j: int) -> ScalingReport:
    """Residuals of the row/column multiplication laws.

    ``B`` is ``A`` with row ``i`` multiplied on the left by ``lam`` and
    ``C`` is ``A`` with column ``j`` multiplied on the right by ``mu``.
    Checks ``|B|_kj = lam |A|_ij`` (k = i) or ``|A|_kj`` (k != i), and
    ``|C|_il = |A|_ij mu`` (l = j) or ``|A|_il`` (l != j).
    """
    ring = A.ring
    n = A.rows
    B = NcMatrix(ring, [[lam * x for x in row] if r == i - 1 else row for r, row in enumerate(A.data)])
    C = NcMatrix(ring, [[x * mu if c == j - 1 else x for c, x in enumerate(row)] for row in A.data])
    report = ScalingReport()
    for k in range(1, n + 1):
        try:
            want = lam * quasideterminant(A, i, j) if k == i else quasideterminant(A, k, j)
            report.row.append((k, quasideterminant(B, k, j) - want))
        except Undefined:
            report.skipped.append(("row", k))
    for l in range(1, n + 1):
        try:
            want = quasideterminant(A, i, j) * mu if l == j else quasideterminant(A, i, l)
            report.column.append((l, quasideterminant(C, i, l) - want))
        except Undefined:
            report.skipped.append(("column", l))
    return report
