"""Per-row noncommutative characteristic polynomials.

Row ``i`` of ``A`` gets its own monic polynomial
``Phi_i(lam) = lam^n - sum_k C_(i)k lam^(n-k)`` with coefficients acting
from the left.  They solve the row system

    (C_(i)1, ..., C_(i)n) [row i of A^(n-1); ...; row i of A^0] = row i of A^n,

and stacking them as diagonal matrices gives the Cayley-Hamilton identity
``A^n - sum_k diag(C_(.)k) A^(n-k) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import weights as W
from .errors import EvalError, Inconsistent, Singular, UnsupportedDivision
from .fock import FockRing, diagonal, matrix_element
from .matrix import NcMatrix, diag, mat_add, mat_multiply, mat_negate, mat_power, solve_left_linear
from .quasidet import quasideterminant

__all__ = [
    "RowCharPoly",
    "char_poly_row",
    "char_poly_all",
    "char_poly_row_bordered",
    "cayley_hamilton_residual",
    "row_poly_divergence",
    "coefficient_residual",
]


@dataclass
class RowCharPoly:
    row: int
    coeffs: list
    degenerate: bool = False
    free_parameter_note: str | None = None

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def evaluate(self, ring, lam):
        """``lam^n - sum_k C_k lam^(n-k)`` with left coefficients."""
        n = self.degree
        powers = [ring.one]
        for _ in range(n):
            powers.append(powers[-1] * lam)
        value = powers[n]
        for k, c in enumerate(self.coeffs, 1):
            value = value - c * powers[n - k]
        return value


def _row_system(A: NcMatrix, i: int):
    n = A.rows
    powers = [mat_power(A, 0)]
    for _ in range(n):
        powers.append(mat_multiply(powers[-1], A))
    rows = [powers[n - k].data[i - 1] for k in range(1, n + 1)]
    return powers, rows, powers[n].data[i - 1]


def char_poly_row(A: NcMatrix, i: int) -> RowCharPoly:
    """Solve for the row-``i`` coefficients.

    Division-ring backends use column elimination; undetermined unknowns
    are set to zero and the row is flagged degenerate.  Oscillator
    matrices go through :func:`_char_poly_row_fock`.
    """
    if not A.is_square:
        raise ValueError("characteristic polynomials need a square matrix")
    if isinstance(A.ring, FockRing):
        return _char_poly_row_fock(A, i)
    _, rows, rhs = _row_system(A, i)
    M = NcMatrix(A.ring, rows)
    try:
        coeffs, free = solve_left_linear(M, list(rhs))
    except Singular as exc:
        raise Inconsistent(f"row {i}: {exc}") from None
    if free:
        note = "free coefficients set to zero: " + ", ".join(f"C_({i}){r + 1}" for r in free)
        return RowCharPoly(i, coeffs, True, note)
    return RowCharPoly(i, coeffs)


def char_poly_all(A: NcMatrix) -> list:
    return [char_poly_row(A, i) for i in range(1, A.rows + 1)]


# -- oscillator backend -----------------------------------------------------------


def _level_system(entries, n, m, continued):
    """Matrix-element equations at output level ``m`` for the diagonal ansatz.

    ``entries[p][j]`` is entry ``(i, j)`` of ``A^p``.  Unknown ``k`` (1-based)
    multiplies ``A^(n-k)``; the right-hand side comes from ``A^n``.
    """
    rows, rhs = [], []
    for j in range(len(entries[0])):
        shifts = set()
        for p in range(n + 1):
            shifts.update(entries[p][j].shifts)
        for s in sorted(shifts):
            src = m - s
            if not continued and src < 0:
                continue
            rows.append([matrix_element(entries[n - k][j], m, src, continued) for k in range(1, n + 1)])
            rhs.append(matrix_element(entries[n][j], m, src, continued))
    if not rows:
        return np.zeros((0, n), dtype=complex), np.zeros(0, dtype=complex)
    return np.array(rows, dtype=complex), np.array(rhs, dtype=complex)


def _rank(M):
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv > max(sv[0], 1.0) * 1e-10)) if sv.size else 0


def _lstsq(M, b, n):
    if M.size == 0:
        return np.zeros(n, dtype=complex)
    return np.linalg.lstsq(M, b, rcond=1e-12)[0]


def _char_poly_row_fock(A: NcMatrix, i: int) -> RowCharPoly:
    """Diagonal-ansatz solve, one least-squares problem per Fock level.

    Each ``C_(i)k`` is assumed to be a function of ``N``.  At output level
    ``m`` the matrix-element equations are then linear in the numbers
    ``c_k(m)``; the minimum-norm solution is taken.  Levels where the
    physical equations lose rank only because of the ``n >= 0`` boundary
    are filled from the analytic continuation of the system in ``m``.
    """
    cfg = A.ring.cfg
    n = A.rows
    powers, _, _ = _row_system(A, i)
    entries = [powers[p].data[i - 1] for p in range(n + 1)]
    h = W.CONTINUATION_STEP
    top = cfg.window
    sol = np.zeros((top + 1, n), dtype=complex)
    generic_deficient = []
    extended = []
    for m in range(top + 1):
        M, b = _level_system(entries, n, m, continued=False)
        r_int = _rank(M)
        chosen = _lstsq(M, b, n)
        try:
            Mp, bp = _level_system(entries, n, m + h, continued=True)
            Mm, bm = _level_system(entries, n, m - h, continued=True)
            r_gen = _rank(Mp)
            cont = 0.5 * (_lstsq(Mp, bp, n) + _lstsq(Mm, bm, n))
        except EvalError:
            r_gen, cont = r_int, None
        if r_gen < n:
            generic_deficient.append(m)
        if cont is not None and r_int < r_gen:
            chosen = cont
            extended.append(m)
        scale = max(1.0, float(np.max(np.abs(b))) if b.size else 1.0)
        if M.size and np.max(np.abs(M @ chosen - b)) > cfg.abs_tol * scale:
            raise UnsupportedDivision(
                f"row {i}: no function-of-N coefficients satisfy level {m}; the diagonal ansatz fails"
            )
        sol[m] = chosen
    coeffs = [diagonal(W.Table(0, sol[:, k])) for k in range(n)]
    degenerate = bool(generic_deficient)
    notes = []
    if degenerate:
        notes.append(
            f"coefficient system has a kernel at levels {_ranges(generic_deficient)}; "
            "minimum-norm solution taken (free parameters set to zero)"
        )
    if extended:
        notes.append(f"boundary levels {_ranges(extended)} extended by continuation in N")
    return RowCharPoly(i, coeffs, degenerate, "; ".join(notes) or None)


def _ranges(levels):
    out, start, prev = [], None, None
    for lv in levels:
        if start is None:
            start = prev = lv
        elif lv == prev + 1:
            prev = lv
        else:
            out.append(f"{start}" if start == prev else f"{start}-{prev}")
            start = prev = lv
    if start is not None:
        out.append(f"{start}" if start == prev else f"{start}-{prev}")
    return ",".join(out)


# -- checks -----------------------------------------------------------------------


def char_poly_row_bordered(A: NcMatrix, i: int, lam):
    """The bordered quasideterminant form of ``Phi_i`` evaluated at ``lam``.

    Rows are ``(row i of A^p | lam^p)`` for ``p = n .. 0``; the boxed entry
    is the top-right corner.  Raises :class:`Undefined` when the lower
    block is singular.
    """
    ring = A.ring
    n = A.rows
    powers, _, _ = _row_system(A, i)
    lam_pows = [ring.one]
    for _ in range(n):
        lam_pows.append(lam_pows[-1] * lam)
    rows = [list(powers[p].data[i - 1]) + [lam_pows[p]] for p in range(n, -1, -1)]
    return quasideterminant(NcMatrix(ring, rows), 1, n + 1)


def cayley_hamilton_residual(A: NcMatrix, polys) -> NcMatrix:
    """``A^n - sum_k diag(C_(1)k, ..., C_(n)k) A^(n-k)``."""
    n = A.rows
    polys = sorted(polys, key=lambda p: p.row)
    if [p.row for p in polys] != list(range(1, n + 1)):
        raise ValueError("need one polynomial per row")
    ring = A.ring
    powers = [mat_power(A, 0)]
    for _ in range(n):
        powers.append(mat_multiply(powers[-1], A))
    result = powers[n]
    for k in range(1, n + 1):
        D = diag(ring, [p.coeffs[k - 1] for p in polys])
        result = mat_add(result, mat_negate(mat_multiply(D, powers[n - k])))
    return result


def coefficient_residual(A: NcMatrix, poly: RowCharPoly) -> list:
    """Entries ``a_ij^(n) - sum_k C_(i)k a_ij^(n-k)`` of row ``poly.row``."""
    n = A.rows
    _, rows, rhs = _row_system(A, poly.row)
    out = []
    for j in range(n):
        v = rhs[j]
        for k, c in enumerate(poly.coeffs):
            v = v - c * rows[k][j]
        out.append(v)
    return out


def row_poly_divergence(polys, ring) -> bool:
    """True when two rows have different coefficient lists."""
    polys = list(polys)
    for a in polys:
        for b in polys:
            if a.row < b.row and not all(ring.equal(x, y) for x, y in zip(a.coeffs, b.coeffs)):
                return True
    return False
