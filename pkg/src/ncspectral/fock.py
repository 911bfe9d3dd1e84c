"""Exact banded weighted-shift model of the single-mode oscillator algebra.

An operator ``X`` acts on Fock states as ``X|n> = sum_s d_s(n) |n+s>`` with
one weight expression ``d_s`` per shift ``s``; ``d_s(n)`` is taken to be 0
whenever ``n + s < 0``.  Because weights are closed-form expressions in
``n`` there is no truncation: ``a a^dagger = N + 1`` holds at every level.
Equality is decided on the finite probe window of a :class:`ToleranceConfig`.
"""
from __future__ import annotations

from numbers import Number
from types import MappingProxyType
from typing import NamedTuple

import numpy as np

from . import weights as W
from .errors import EvalError, NoSolution, NotInvertible, UnsupportedDivision, UnsupportedFunction
from .ring import DEFAULT_CONFIG, SCALAR_FUNCTIONS, Ring, ToleranceConfig
from .weights import Weight

__all__ = [
    "BandOperator",
    "annihilation",
    "creation",
    "number",
    "identity",
    "diagonal",
    "band_multiply",
    "matrix_element",
    "band_equal",
    "band_norm",
    "band_try_inverse",
    "band_divide",
    "Division",
    "FockRing",
]


class BandOperator:
    """Finite map ``shift -> weight``; immutable."""

    __slots__ = ("_bands",)

    def __init__(self, bands=None):
        clean = {}
        for s, w in (bands or {}).items():
            w = W.as_weight(w)
            if not w.is_zero_const:
                clean[int(s)] = w
        self._bands = dict(sorted(clean.items()))

    @classmethod
    def scalar(cls, c) -> "BandOperator":
        return cls({0: c})

    @property
    def bands(self):
        return MappingProxyType(self._bands)

    @property
    def shifts(self) -> tuple:
        return tuple(self._bands)

    def weight(self, shift: int) -> Weight:
        return self._bands.get(shift, W.ZERO)

    def is_diagonal(self) -> bool:
        return all(s == 0 for s in self._bands)

    def shift(self, k: int) -> "BandOperator":
        """Conjugate-free relabeling ``d_s(n) -> d_s(n + k)`` of every band."""
        return BandOperator({s: w.shift(k) for s, w in self._bands.items()})

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        bands = dict(self._bands)
        for s, w in other._bands.items():
            bands[s] = bands[s] + w if s in bands else w
        return BandOperator(_prune(bands))

    __radd__ = __add__

    def __neg__(self):
        return BandOperator({s: -w for s, w in self._bands.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        bands = dict(self._bands)
        for s, w in other._bands.items():
            bands[s] = bands[s] - w if s in bands else -w
        return BandOperator(_prune(bands))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BandOperator):
            return band_multiply(self, other)
        if isinstance(other, (Number, np.number)):
            return BandOperator({s: w * other for s, w in self._bands.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Number, np.number)):
            return BandOperator({s: other * w for s, w in self._bands.items()})
        return NotImplemented

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            return NotImplemented
        out = identity()
        for _ in range(m):
            out = out * self
        return out

    def __repr__(self):
        if not self._bands:
            return "BandOperator({})"
        body = ", ".join(f"{s}: {w}" for s, w in self._bands.items())
        return f"BandOperator({{{body}}})"

    def __str__(self):
        return format_band(self)


def _coerce(x):
    if isinstance(x, BandOperator):
        return x
    if isinstance(x, (Number, np.number)):
        return BandOperator.scalar(x)
    return NotImplemented


def _prune(bands):
    return {s: w for s, w in bands.items() if not w.is_zero_const}


def annihilation() -> BandOperator:
    """``a|n> = sqrt(n) |n-1>``."""
    return BandOperator({-1: W.sqrt(W.N)})


def creation() -> BandOperator:
    """``a^dagger|n> = sqrt(n+1) |n+1>``."""
    return BandOperator({1: W.sqrt(W.Level(1))})


def number() -> BandOperator:
    return BandOperator({0: W.N})


def identity() -> BandOperator:
    return BandOperator({0: W.ONE})


def diagonal(weight) -> BandOperator:
    return BandOperator({0: weight})


def band_multiply(X: BandOperator, Y: BandOperator) -> BandOperator:
    """Composition ``X Y`` (``Y`` acts first).

    Band ``s`` of the product is ``sum_{j+k=s} d_k(n+j) e_j(n)`` where
    ``e`` are the bands of ``Y``; terms passing through a negative
    intermediate level are cut off.
    """
    out = {}
    for j, e in Y._bands.items():
        first = W.Cutoff(e, -j) if j < 0 else e
        for k, d in X._bands.items():
            term = W.mul(first, d.shift(j))
            s = j + k
            out[s] = out[s] + term if s in out else term
    return BandOperator(_prune(out))


def matrix_element(X: BandOperator, m, n, continued: bool = False) -> complex:
    """``<m|X|n>``; zero when there is no band ``m - n``."""
    if not continued and (m < 0 or n < 0):
        return 0j
    s = m - n
    if not continued:
        s = int(s)
    else:
        s = int(round(s))
    w = X._bands.get(s)
    if w is None:
        return 0j
    return w.evaluate(n, continued)


def _band_levels(s, top):
    # input levels n with 0 <= n, n + s <= top
    return range(max(0, -s), top - s + 1) if top - s >= max(0, -s) else range(0)


def band_norm(X: BandOperator, cfg: ToleranceConfig = DEFAULT_CONFIG, top: int | None = None) -> float:
    """Largest ``|<m|X|n>|`` with ``0 <= m, n <= top`` (default: probe window)."""
    top = cfg.probe_levels if top is None else top
    best = 0.0
    for s, w in X._bands.items():
        for n in _band_levels(s, top):
            v = abs(w.evaluate(n))
            if v > best:
                best = v
    return best


def band_equal(X: BandOperator, Y: BandOperator, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    return band_norm(X - Y, cfg) <= cfg.abs_tol


def _significant_shifts(X, cfg):
    keep = []
    for s, w in X._bands.items():
        try:
            if any(abs(w.evaluate(n)) > cfg.abs_tol for n in _band_levels(s, cfg.probe_levels)):
                keep.append(s)
        except EvalError:
            keep.append(s)
    return keep


def band_try_inverse(X: BandOperator, cfg: ToleranceConfig = DEFAULT_CONFIG) -> BandOperator:
    """Inverse of a diagonal operator that is nonzero on every probed level.

    Raises :class:`NotInvertible` for anything else.
    """
    shifts = _significant_shifts(X, cfg)
    if shifts != [0]:
        raise NotInvertible("only diagonal operators are inverted" if shifts else "zero operator")
    d = X.weight(0)
    try:
        small = [n for n in range(cfg.probe_levels + 1) if abs(d.evaluate(n)) <= cfg.abs_tol]
    except EvalError as exc:
        raise NotInvertible(str(exc)) from None
    if small:
        raise NotInvertible(f"diagonal weight vanishes at level {small[0]}")
    return diagonal(W.div(W.ONE, d))


class Division(NamedTuple):
    solution: BandOperator
    kernel: bool


def band_divide(b: BandOperator, c: BandOperator, side: str = "right", cfg: ToleranceConfig = DEFAULT_CONFIG) -> Division:
    """Solve ``X c = b`` (``side='right'``) or ``c X = b`` (``side='left'``).

    ``c`` must be a single weighted shift (diagonal included).  Levels the
    equation does not constrain are filled by the closed form of the
    solution and reported through ``Division.kernel``.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    shifts = _significant_shifts(c, cfg)
    if len(shifts) != 1:
        raise UnsupportedDivision(f"divisor has {len(shifts)} bands; only single-band divisors are supported")
    (t,) = shifts
    w = c.weight(t)
    top = cfg.window
    kernel = False
    bands = {}
    if side == "right":
        # (X c)|n> = w(n) sum_s x_s(n+t) |n+t+s>
        for n in range(top + 1):
            if n + t >= 0 and abs(w.evaluate(n)) > cfg.abs_tol:
                continue
            # c|n> = 0, so b|n> must vanish too
            for u, bw in b._bands.items():
                if n + u >= 0 and abs(bw.evaluate(n)) > cfg.abs_tol:
                    raise NoSolution(f"divisor annihilates level {n} but the dividend does not")
            if n + t >= 0:
                kernel = True
        if t > 0:
            kernel = True  # input levels 0..t-1 of X are never reached
        denom = w.shift(-t)
        for u, bw in b._bands.items():
            bands[u - t] = W.div(bw.shift(-t), denom)
    else:
        # (c X)|n> = sum_s x_s(n) w(n+s) |n+s+t>
        for u, bw in b._bands.items():
            s = u - t
            denom = w.shift(s)
            for n in range(max(0, -s), top + 1):
                if abs(denom.evaluate(n)) > cfg.abs_tol:
                    continue
                if abs(bw.evaluate(n)) > cfg.abs_tol:
                    raise NoSolution(f"divisor annihilates level {n + s} but the dividend does not")
                kernel = True
            bands[s] = W.div(bw, denom)
    return Division(BandOperator(bands), kernel)


# -- ring descriptor -------------------------------------------------------------


class FockRing(Ring):
    """Oscillator operators as ring elements, compared on the probe window."""

    name = "fock"
    exact = False

    def __init__(self, cfg: ToleranceConfig = DEFAULT_CONFIG):
        super().__init__(cfg)
        self._zero = BandOperator()
        self._one = identity()

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def coerce(self, value):
        if isinstance(value, BandOperator):
            return value
        if isinstance(value, str):
            from .parsing import parse_fock

            return parse_fock(value)
        return BandOperator.scalar(value)

    def inverse(self, x):
        return band_try_inverse(x, self.cfg)

    def norm(self, x):
        return band_norm(x, self.cfg)

    def is_zero(self, x):
        if not x._bands:
            return True
        return band_norm(x, self.cfg) <= self.cfg.abs_tol

    def equal(self, x, y):
        return self.is_zero(x - y)

    def apply(self, x, func, scale=1):
        """Apply a scalar function to a diagonal operator level by level."""
        try:
            f = SCALAR_FUNCTIONS[func]
        except KeyError:
            raise UnsupportedFunction(f"unknown function {func!r}") from None
        if _significant_shifts(x, self.cfg) not in ([], [0]):
            raise UnsupportedFunction("functions are applied to diagonal operators only")
        d = x.weight(0)
        scale = complex(scale)
        levels = range(self.cfg.window + 1)
        vals = np.array([f(scale * d.evaluate(n)) for n in levels], dtype=complex)
        return diagonal(W.Table(0, vals))


def format_band(X: BandOperator) -> str:
    """Render as a sum of ``d_s(N) * shift^s`` terms."""
    if not X._bands:
        return "0"
    terms = []
    for s, w in X._bands.items():
        if s == 0:
            terms.append(f"({w})")
        else:
            terms.append(f"({w})*S^{s}")
    return " + ".join(terms)
