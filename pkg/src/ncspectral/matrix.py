"""Matrices over an arbitrary ring backend.

Indices in the public helpers are 1-based, matching the usual
``a_{ij}`` notation; ``NcMatrix.data`` exposes the 0-based rows.
"""
from __future__ import annotations

from .errors import DimensionMismatch, IndexOutOfRange, NotInvertible, Singular, UnsupportedFunction
from .ring import Ring

__all__ = [
    "NcMatrix",
    "MatrixRing",
    "identity",
    "zeros",
    "diag",
    "mat_multiply",
    "mat_add",
    "mat_negate",
    "mat_power",
    "mat_equal",
    "mat_norm",
    "delete_row_col",
    "extract_row_without",
    "extract_col_without",
    "mat_inverse_elimination",
    "solve_left_linear",
]


class NcMatrix:
    """Immutable ``rows x cols`` matrix with entries from one ring."""

    __slots__ = ("ring", "_data")

    def __init__(self, ring: Ring, data):
        rows = tuple(tuple(r) for r in data)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices need at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring
        self._data = rows

    @classmethod
    def from_literals(cls, ring: Ring, data) -> "NcMatrix":
        return cls(ring, [[ring.coerce(v) for v in row] for row in data])

    @property
    def data(self):
        return self._data

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return len(self._data[0])

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int):
        _check_index(self, i, j)
        return self._data[i - 1][j - 1]

    def __getitem__(self, ij):
        i, j = ij
        return self.entry(i, j)

    def entries(self):
        for row in self._data:
            yield from row

    def map(self, f, ring: Ring | None = None) -> "NcMatrix":
        return NcMatrix(ring or self.ring, [[f(x) for x in row] for row in self._data])

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return mat_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return mat_add(self, mat_negate(other))

    def __neg__(self):
        return mat_negate(self)

    def __mul__(self, other):
        if isinstance(other, NcMatrix):
            return mat_multiply(self, other)
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def __matmul__(self, other):
        return mat_multiply(self, other)

    def __pow__(self, m: int):
        return mat_power(self, m)

    def __eq__(self, other):
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        rows = ",\n ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"NcMatrix({self.ring!r},\n[{rows}])"

    __str__ = __repr__


def _check_index(A, i, j):
    if not (1 <= i <= A.rows and 1 <= j <= A.cols):
        raise IndexOutOfRange(f"position ({i}, {j}) outside a {A.rows}x{A.cols} matrix")


def identity(ring: Ring, n: int) -> NcMatrix:
    z, o = ring.zero, ring.one
    return NcMatrix(ring, [[o if r == c else z for c in range(n)] for r in range(n)])


def zeros(ring: Ring, rows: int, cols: int | None = None) -> NcMatrix:
    z = ring.zero
    return NcMatrix(ring, [[z] * (rows if cols is None else cols) for _ in range(rows)])


def diag(ring: Ring, entries) -> NcMatrix:
    entries = list(entries)
    z = ring.zero
    n = len(entries)
    return NcMatrix(ring, [[entries[r] if r == c else z for c in range(n)] for r in range(n)])


def mat_add(A: NcMatrix, B: NcMatrix) -> NcMatrix:
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    return NcMatrix(A.ring, [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A.data, B.data)])


def mat_negate(A: NcMatrix) -> NcMatrix:
    return A.map(lambda x: -x)


def mat_multiply(A: NcMatrix, B: NcMatrix) -> NcMatrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    cols = list(zip(*B.data))
    out = []
    for row in A.data:
        out_row = []
        for col in cols:
            acc = None
            for x, y in zip(row, col):
                t = x * y
                acc = t if acc is None else acc + t
            out_row.append(acc)
        out.append(out_row)
    return NcMatrix(A.ring, out)


def mat_power(A: NcMatrix, m: int) -> NcMatrix:
    if not A.is_square:
        raise DimensionMismatch("powers need a square matrix")
    if m < 0:
        raise ValueError("negative matrix powers are not supported")
    result = identity(A.ring, A.rows)
    for _ in range(m):
        result = mat_multiply(result, A)
    return result


def mat_equal(A: NcMatrix, B: NcMatrix) -> bool:
    """Entrywise equality under the ring's own notion of equality."""
    if A.shape != B.shape:
        return False
    eq = A.ring.equal
    return all(eq(x, y) for x, y in zip(A.entries(), B.entries()))


def mat_norm(A: NcMatrix) -> float:
    """Largest entry norm; the residual measure used in reports."""
    norm = A.ring.norm
    return max(float(norm(x)) for x in A.entries())


def delete_row_col(A: NcMatrix, i: int, j: int) -> NcMatrix:
    """The minor ``A^{ij}`` with row ``i`` and column ``j`` removed."""
    _check_index(A, i, j)
    if A.rows < 2 or A.cols < 2:
        raise DimensionMismatch("cannot delete from a matrix with a single row or column")
    return NcMatrix(
        A.ring,
        [[x for c, x in enumerate(row, 1) if c != j] for r, row in enumerate(A.data, 1) if r != i],
    )


def extract_row_without(A: NcMatrix, i: int, j: int) -> tuple:
    """Row ``i`` with its ``j``-th entry removed."""
    _check_index(A, i, j)
    return tuple(x for c, x in enumerate(A.data[i - 1], 1) if c != j)


def extract_col_without(A: NcMatrix, j: int, i: int) -> tuple:
    """Column ``j`` with its ``i``-th entry removed."""
    _check_index(A, i, j)
    return tuple(row[j - 1] for r, row in enumerate(A.data, 1) if r != i)


def mat_inverse_elimination(A: NcMatrix) -> NcMatrix:
    """Two-sided inverse by Gauss-Jordan elimination with left multipliers.

    The pivot is the first entry, in row-major order over the active
    block, whose inverse exists.  The result is multiplied back against
    ``A`` on both sides before being returned.
    """
    if not A.is_square:
        raise DimensionMismatch("only square matrices are inverted")
    ring = A.ring
    n = A.rows
    work = [list(r) for r in A.data]
    aug = [list(r) for r in identity(ring, n).data]
    colperm = list(range(n))
    for k in range(n):
        pivot = None
        for r in range(k, n):
            for c in range(k, n):
                inv = ring.try_inverse(work[r][c])
                if inv is not None:
                    pivot = (r, c, inv)
                    break
            if pivot:
                break
        if pivot is None:
            raise Singular(f"no invertible pivot at elimination step {k + 1}")
        r, c, inv = pivot
        work[k], work[r] = work[r], work[k]
        aug[k], aug[r] = aug[r], aug[k]
        if c != k:
            for row in work:
                row[k], row[c] = row[c], row[k]
            colperm[k], colperm[c] = colperm[c], colperm[k]
        work[k] = [inv * x for x in work[k]]
        work[k][k] = ring.one
        aug[k] = [inv * x for x in aug[k]]
        for r2 in range(n):
            if r2 == k:
                continue
            f = work[r2][k]
            if ring.is_zero(f):
                continue
            work[r2] = [x - f * y for x, y in zip(work[r2], work[k])]
            work[r2][k] = ring.zero
            aug[r2] = [x - f * y for x, y in zip(aug[r2], aug[k])]
    # L (A Q) = I  =>  A^{-1} = Q L
    inv_rows = [None] * n
    for k in range(n):
        inv_rows[colperm[k]] = aug[k]
    B = NcMatrix(ring, inv_rows)
    eye = identity(ring, n)
    if not (mat_equal(mat_multiply(A, B), eye) and mat_equal(mat_multiply(B, A), eye)):
        raise Singular("elimination result is not a two-sided inverse")
    return B


def solve_left_linear(M: NcMatrix, b):
    """Solve the row system ``c M = b`` by column elimination.

    Returns ``(c, free)`` where ``free`` lists the 0-based unknowns that the
    system leaves undetermined; those are set to zero.  Raises
    :class:`Singular` when the system is inconsistent.
    """
    ring = M.ring
    n, m = M.shape
    # columns of the augmented system [M; b], manipulated by right multiplication
    cols = [[M.data[r][c] for r in range(n)] + [b[c]] for c in range(m)]
    used = [False] * m
    pivots = {}
    for r in range(n):
        choice = None
        for c in range(m):
            if used[c]:
                continue
            inv = ring.try_inverse(cols[c][r])
            if inv is not None:
                choice = (c, inv)
                break
        if choice is None:
            continue
        c, inv = choice
        cols[c] = [x * inv for x in cols[c]]
        used[c] = True
        pivots[r] = c
        for c2 in range(m):
            if c2 == c:
                continue
            f = cols[c2][r]
            cols[c2] = [x - y * f for x, y in zip(cols[c2], cols[c])]
    for c in range(m):
        if not used[c] and not ring.is_zero(cols[c][n]):
            raise Singular("row system is inconsistent")
    coeffs = [ring.zero] * n
    for r, c in pivots.items():
        coeffs[r] = cols[c][n]
    free = [r for r in range(n) if r not in pivots]
    return coeffs, free


class MatrixRing(Ring):
    """``M(n, base)``: square matrices as ring elements in their own right."""

    def __init__(self, base: Ring, n: int):
        super().__init__(base.cfg)
        self.base = base
        self.n = n
        self.exact = base.exact
        self.name = f"M({n}, {base.name})"
        self._zero = zeros(base, n)
        self._one = identity(base, n)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def coerce(self, value):
        if isinstance(value, NcMatrix):
            return value
        return diag(self.base, [self.base.coerce(value)] * self.n)

    def inverse(self, x):
        try:
            return mat_inverse_elimination(x)
        except Singular as exc:
            raise NotInvertible(str(exc)) from None

    def norm(self, x):
        return mat_norm(x)

    def is_zero(self, x):
        return all(self.base.is_zero(e) for e in x.entries())

    def equal(self, x, y):
        return mat_equal(x, y)

    @property
    def approx_ring(self):
        return MatrixRing(self.base.approx_ring, self.n)

    def approximate(self, x):
        return x.map(self.base.approximate, self.base.approx_ring)

    def apply(self, x, func, scale=1):
        base = self.base
        for r, row in enumerate(x.data):
            for c, e in enumerate(row):
                if r != c and not base.is_zero(e):
                    raise UnsupportedFunction("matrix functions are applied to diagonal matrices only")
        return diag(base.approx_ring, [base.apply(x.data[k][k], func, scale) for k in range(self.n)])

    def __eq__(self, other):
        return isinstance(other, MatrixRing) and other.base == self.base and other.n == self.n

    def __hash__(self):
        return hash((MatrixRing, self.base, self.n))

    def __repr__(self):
        return f"MatrixRing({self.base!r}, {self.n})"
