"""Weight expressions: functions of the Fock level ``n``.

A weight is an immutable expression DAG.  Evaluation is memoized per node,
so deep products that share subexpressions stay linear in the DAG size.

Two evaluation modes exist.  *Strict* mode is the physical one: ``n`` is a
nonnegative integer level, a negative radicand or a nonremovable division
by zero raises :class:`EvalError`, and :class:`Cutoff` nodes enforce the
"no negative levels" convention.  *Continued* mode treats ``n`` as a
complex variable (principal square roots, cutoffs ignored); it is used to
extend a weight through removable singularities by its own closed form.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number, Rational

import numpy as np

from .errors import EvalError

__all__ = [
    "Weight",
    "Const",
    "Level",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Sqrt",
    "Cutoff",
    "Table",
    "as_weight",
    "ZERO",
    "ONE",
    "N",
    "CONTINUATION_STEP",
    "TABLE_ZERO_TOL",
]

# half-width of the symmetric stencil used to step around removable singularities
CONTINUATION_STEP = 1e-6
# tabulated weights whose entries all fall below this are treated as zero
TABLE_ZERO_TOL = 1e-12


def _is_int_level(level) -> bool:
    return isinstance(level, (int, np.integer)) or (isinstance(level, float) and level.is_integer())


class Weight:
    """Base node.  Subclasses implement ``_eval``, ``_shift`` and ``_str``."""

    __slots__ = ("_cache",)
    precedence = 9

    def __init__(self):
        self._cache = {}

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, level, continued: bool = False) -> complex:
        key = (level, continued)
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = self._eval(level, continued)
        self._cache[key] = value
        return value

    def __call__(self, level, continued: bool = False) -> complex:
        return self.evaluate(level, continued)

    def continued_limit(self, level) -> complex:
        """Closed-form value at ``level`` reached from both sides."""
        h = CONTINUATION_STEP
        return 0.5 * (self.evaluate(level + h, True) + self.evaluate(level - h, True))

    def _eval(self, level, continued):
        raise NotImplementedError

    # -- structure --------------------------------------------------------------
    def shift(self, k: int) -> "Weight":
        """Exact substitution ``n -> n + k`` on the tree."""
        if k == 0:
            return self
        return self._shifted(k, {})

    def _shifted(self, k, memo):
        key = id(self)
        if key not in memo:
            memo[key] = self._shift(k, memo)
        return memo[key]

    def _shift(self, k, memo):
        raise NotImplementedError

    @property
    def is_zero_const(self) -> bool:
        return False

    @property
    def is_one_const(self) -> bool:
        return False

    def tabulate(self, levels) -> "Table":
        """Strictly evaluate on a contiguous integer range; failures become NaN."""
        levels = list(levels)
        vals = np.empty(len(levels), dtype=complex)
        for idx, lv in enumerate(levels):
            try:
                vals[idx] = self.evaluate(lv)
            except EvalError:
                vals[idx] = complex("nan")
        return Table(levels[0], vals)

    # -- algebra ----------------------------------------------------------------
    def __add__(self, other):
        return add(self, as_weight(other))

    def __radd__(self, other):
        return add(as_weight(other), self)

    def __sub__(self, other):
        return sub(self, as_weight(other))

    def __rsub__(self, other):
        return sub(as_weight(other), self)

    def __mul__(self, other):
        return mul(self, as_weight(other))

    def __rmul__(self, other):
        return mul(as_weight(other), self)

    def __truediv__(self, other):
        return div(self, as_weight(other))

    def __rtruediv__(self, other):
        return div(as_weight(other), self)

    def __neg__(self):
        return mul(Const(-1), self)

    def sqrt(self):
        return sqrt(self)

    def __str__(self):
        return self._str()

    def __repr__(self):
        return f"<{type(self).__name__} {self._str()}>"

    def _str(self) -> str:
        raise NotImplementedError

    def _wrap(self, child, prec):
        s = child._str()
        return f"({s})" if child.precedence < prec else s


class Const(Weight):
    __slots__ = ("value",)

    def __init__(self, value):
        super().__init__()
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Rational)):
            value = Fraction(value)
        elif isinstance(value, (float, complex, np.number)):
            value = complex(value)
        else:
            raise TypeError(f"bad constant {value!r}")
        self.value = value

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def _eval(self, level, continued):
        return complex(self.value)

    def _shift(self, k, memo):
        return self

    @property
    def is_zero_const(self):
        return self.value == 0

    @property
    def is_one_const(self):
        return self.value == 1

    @property
    def precedence(self):
        v = self.value
        if isinstance(v, Fraction):
            return 9 if v >= 0 and v.denominator == 1 else 2
        return 9 if v.imag == 0 and v.real >= 0 else 2

    def _str(self):
        v = self.value
        if isinstance(v, Fraction):
            return str(v)
        if v.imag == 0:
            return f"{v.real:.12g}"
        return f"({v.real:.12g}{v.imag:+.12g}j)"


class Level(Weight):
    """The level variable, ``n + offset``."""

    __slots__ = ("offset",)

    def __init__(self, offset: int = 0):
        super().__init__()
        self.offset = int(offset)

    def _eval(self, level, continued):
        return complex(level + self.offset)

    def _shift(self, k, memo):
        return Level(self.offset + k)

    @property
    def precedence(self):
        return 9 if self.offset == 0 else 1

    def _str(self):
        if self.offset == 0:
            return "n"
        return f"n {'+' if self.offset > 0 else '-'} {abs(self.offset)}"


class _Binary(Weight):
    __slots__ = ("left", "right")
    symbol = "?"

    def __init__(self, left, right):
        super().__init__()
        self.left = left
        self.right = right

    def _shift(self, k, memo):
        return type(self)(self.left._shifted(k, memo), self.right._shifted(k, memo))

    def _str(self):
        p = self.precedence
        rp = p + 1 if self.symbol in "-/" else p
        return f"{self._wrap(self.left, p)} {self.symbol} {self._wrap(self.right, rp)}"


class Add(_Binary):
    __slots__ = ()
    symbol = "+"
    precedence = 1

    def _eval(self, level, continued):
        return self.left.evaluate(level, continued) + self.right.evaluate(level, continued)


class Sub(_Binary):
    __slots__ = ()
    symbol = "-"
    precedence = 1

    def _eval(self, level, continued):
        return self.left.evaluate(level, continued) - self.right.evaluate(level, continued)


class Mul(_Binary):
    __slots__ = ()
    symbol = "*"
    precedence = 2

    def _eval(self, level, continued):
        a = self.left.evaluate(level, continued)
        if a == 0:
            return 0j
        return a * self.right.evaluate(level, continued)

    def _str(self):
        return f"{self._wrap(self.left, 2)}*{self._wrap(self.right, 3)}"


class Div(_Binary):
    """Quotient; a 0/0 at an integer level is resolved by continuation."""

    __slots__ = ()
    symbol = "/"
    precedence = 2

    def _eval(self, level, continued):
        den = self.right.evaluate(level, continued)
        num = self.left.evaluate(level, continued)
        if den != 0:
            return num / den
        if num == 0 and not continued:
            try:
                return self.continued_limit(level)
            except (EvalError, ZeroDivisionError, ValueError):
                pass
        raise EvalError(f"division by zero in {self._str()} at level {level}", level)

    def _str(self):
        return f"{self._wrap(self.left, 2)}/{self._wrap(self.right, 3)}"


class Sqrt(Weight):
    __slots__ = ("arg",)
    precedence = 9

    def __init__(self, arg):
        super().__init__()
        self.arg = arg

    def _eval(self, level, continued):
        v = self.arg.evaluate(level, continued)
        if not continued and v.imag == 0 and v.real < 0:
            if v.real > -1e-14:
                return 0j
            raise EvalError(f"negative radicand {v.real:.6g} in sqrt({self.arg}) at level {level}", level)
        return cmath.sqrt(v)

    def _shift(self, k, memo):
        return Sqrt(self.arg._shifted(k, memo))

    def _str(self):
        return f"sqrt({self.arg._str()})"


class Cutoff(Weight):
    """``arg(n)`` for ``n >= lower`` and 0 below (strict mode only)."""

    __slots__ = ("arg", "lower")
    precedence = 9

    def __init__(self, arg, lower: int):
        super().__init__()
        self.arg = arg
        self.lower = int(lower)

    def _eval(self, level, continued):
        if not continued and level < self.lower:
            return 0j
        return self.arg.evaluate(level, continued)

    def _shift(self, k, memo):
        return Cutoff(self.arg._shifted(k, memo), self.lower - k)

    def _str(self):
        return f"[n >= {self.lower}]{self._wrap(self.arg, 9)}"


class Table(Weight):
    """Numerically tabulated weight on the integer levels ``start ..``."""

    __slots__ = ("start", "values")
    precedence = 9

    def __init__(self, start: int, values):
        super().__init__()
        self.start = int(start)
        self.values = np.asarray(values, dtype=complex)
        self.values.setflags(write=False)

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def _eval(self, level, continued):
        if not _is_int_level(level):
            raise EvalError("tabulated weights cannot be continued off the integer levels", level)
        idx = int(level) - self.start
        if idx < 0 or idx >= len(self.values):
            raise EvalError(f"level {level} outside tabulated range [{self.start}, {self.stop})", level)
        v = self.values[idx]
        if v != v:
            raise EvalError(f"tabulated weight undefined at level {level}", level)
        return complex(v)

    def _shift(self, k, memo):
        return Table(self.start - k, self.values)

    @property
    def is_zero_const(self):
        finite = self.values[~np.isnan(self.values)]
        return bool(np.all(np.abs(finite) <= TABLE_ZERO_TOL))

    def _str(self):
        return f"table[{self.start}..{self.stop - 1}]"


ZERO = Const(0)
ONE = Const(1)
N = Level(0)


def as_weight(value) -> Weight:
    if isinstance(value, Weight):
        return value
    if isinstance(value, (Number, np.number)):
        return Const(value)
    raise TypeError(f"cannot use {value!r} as a weight")


# -- folding constructors -------------------------------------------------------


def _table_binop(a, b, op):
    if isinstance(a, Const) and isinstance(b, Table):
        return Table(b.start, op(complex(a.value), b.values))
    if isinstance(a, Table) and isinstance(b, Const):
        return Table(a.start, op(a.values, complex(b.value)))
    lo = max(a.start, b.start)
    hi = min(a.stop, b.stop)
    if hi <= lo:
        return Table(lo, np.empty(0, dtype=complex))
    with np.errstate(all="ignore"):
        return Table(lo, op(a.values[lo - a.start : hi - a.start], b.values[lo - b.start : hi - b.start]))


def _foldable(a, b):
    return (isinstance(a, Table) and isinstance(b, (Table, Const))) or (
        isinstance(a, Const) and isinstance(b, Table)
    )


def add(a: Weight, b: Weight) -> Weight:
    if a.is_zero_const and isinstance(a, Const):
        return b
    if b.is_zero_const and isinstance(b, Const):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _foldable(a, b):
        return _table_binop(a, b, np.add)
    return Add(a, b)


def sub(a: Weight, b: Weight) -> Weight:
    if isinstance(b, Const) and b.is_zero_const:
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _foldable(a, b):
        return _table_binop(a, b, np.subtract)
    if isinstance(a, Const) and a.is_zero_const:
        return mul(Const(-1), b)
    return Sub(a, b)


def mul(a: Weight, b: Weight) -> Weight:
    if isinstance(a, Const):
        if a.is_zero_const:
            return ZERO
        if a.is_one_const:
            return b
    if isinstance(b, Const):
        if b.is_zero_const:
            return ZERO
        if b.is_one_const:
            return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _foldable(a, b):
        return _table_binop(a, b, np.multiply)
    return Mul(a, b)


def div(a: Weight, b: Weight) -> Weight:
    if isinstance(b, Const):
        if b.is_zero_const:
            raise EvalError("division by the zero constant")
        if b.is_one_const:
            return a
        if isinstance(a, Const):
            return Const(a.value / b.value)
    if isinstance(a, Const) and a.is_zero_const:
        return ZERO
    if _foldable(a, b):
        with np.errstate(all="ignore"):
            out = _table_binop(a, b, np.divide)
        vals = np.array(out.values)
        vals[~np.isfinite(vals)] = complex("nan")
        return Table(out.start, vals)
    return Div(a, b)


def sqrt(a: Weight) -> Weight:
    if isinstance(a, Const):
        v = a.value
        if isinstance(v, Fraction):
            if v >= 0:
                rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
                if rn * rn == v.numerator and rd * rd == v.denominator:
                    return Const(Fraction(rn, rd))
                return Sqrt(a)
        return Const(cmath.sqrt(complex(v)))
    if isinstance(a, Table):
        return Table(a.start, np.sqrt(a.values))
    return Sqrt(a)
