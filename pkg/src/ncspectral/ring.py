"""Ring contract and the commutative scalar backends.

A *ring* here is a small descriptor object.  Elements are plain Python
values that support ``+``, ``-``, unary ``-`` and (possibly
noncommutative) ``*``; everything else -- identities, inverses, equality
with a tolerance -- is asked of the descriptor.  This keeps elements
cheap (``Fraction``, ``complex``) while letting matrices of matrices
reuse the same code.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import NotInvertible, UnsupportedFunction

__all__ = [
    "ToleranceConfig",
    "DEFAULT_CONFIG",
    "Ring",
    "RationalRing",
    "ComplexRing",
    "SCALAR_FUNCTIONS",
    "scalar_inverse",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by the approximate backends.

    ``abs_tol`` is the componentwise equality tolerance, ``probe_levels``
    the highest Fock level inspected when comparing oscillator operators,
    and ``guard_band`` the number of extra levels kept above the probe
    window wherever truncation could contaminate results.
    """

    abs_tol: float = 1e-9
    probe_levels: int = 16
    guard_band: int = 4

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.probe_levels < 1:
            raise ValueError("probe_levels must be a positive integer")
        if self.guard_band < 0:
            raise ValueError("guard_band must be nonnegative")

    @property
    def window(self) -> int:
        """Highest level for which values are computed and stored."""
        return self.probe_levels + self.guard_band


DEFAULT_CONFIG = ToleranceConfig()

SCALAR_FUNCTIONS = {
    "exp": cmath.exp,
    "cos": cmath.cos,
    "sin": cmath.sin,
    "identity": lambda z: z,
}


class Ring:
    """Base descriptor; subclasses fill in the element-specific parts."""

    name = "ring"
    exact = True

    def __init__(self, cfg: ToleranceConfig = DEFAULT_CONFIG):
        self.cfg = cfg

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def coerce(self, value):
        """Embed an integer/rational constant into the ring."""
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def try_inverse(self, x):
        try:
            return self.inverse(x)
        except NotInvertible:
            return None

    def norm(self, x) -> float:
        """Magnitude used for residual reports and approximate equality."""
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        if self.exact:
            return x == self.zero
        return self.norm(x) <= self.cfg.abs_tol

    def equal(self, x, y) -> bool:
        if self.exact:
            return x == y
        return self.is_zero(x - y)

    def power(self, x, m: int):
        if m < 0:
            raise ValueError("negative powers are not supported")
        result = self.one
        base = x
        # left-to-right product keeps the ordering obvious; x commutes with itself
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    # -- functions of elements -------------------------------------------
    @property
    def approx_ring(self) -> "Ring":
        return self

    def approximate(self, x):
        return x

    def apply(self, x, func: str, scale=1):
        """Return ``func(scale * x)`` as an element of :attr:`approx_ring`."""
        raise UnsupportedFunction(f"{self.name} does not support function {func!r}")

    def __eq__(self, other):
        return type(self) is type(other) and self.cfg == other.cfg

    def __hash__(self):
        return hash((type(self), self.cfg))

    def __repr__(self):
        return f"{type(self).__name__}()"


def _scalar_function(func):
    try:
        return SCALAR_FUNCTIONS[func]
    except KeyError:
        raise UnsupportedFunction(f"unknown function {func!r}") from None


class RationalRing(Ring):
    """Exact rationals backed by :class:`fractions.Fraction`."""

    name = "rational"
    exact = True

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
        raise TypeError(f"cannot embed {value!r} exactly in the rationals")

    def inverse(self, x):
        if x == 0:
            raise NotInvertible("zero has no inverse")
        return 1 / Fraction(x)

    def norm(self, x):
        return abs(float(x))

    @property
    def approx_ring(self):
        return ComplexRing(self.cfg)

    def approximate(self, x):
        return complex(x)

    def apply(self, x, func, scale=1):
        return _scalar_function(func)(complex(scale) * complex(x))


class ComplexRing(Ring):
    """Floating complex numbers compared with ``abs_tol``."""

    name = "complex"
    exact = False

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    def coerce(self, value):
        return complex(value)

    def inverse(self, x):
        if abs(x) <= self.cfg.abs_tol:
            raise NotInvertible(f"{x!r} is below the inversion tolerance")
        return 1 / complex(x)

    def norm(self, x):
        return abs(x)

    def approximate(self, x):
        return complex(x)

    def apply(self, x, func, scale=1):
        return _scalar_function(func)(complex(scale) * complex(x))


def scalar_inverse(ring: Ring, x):
    """Two-sided inverse of ``x`` or :class:`NotInvertible`."""
    return ring.inverse(x)
