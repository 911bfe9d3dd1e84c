"""Hamilton quaternions in two flavors: exact rational and floating.

Exact quaternions keep four integer numerators over one positive common
denominator, reduced by their joint gcd; this is several times faster
than four independent ``Fraction`` objects and compares exactly.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import NotInvertible, ParseError, UnsupportedFunction
from .ring import DEFAULT_CONFIG, Ring, ToleranceConfig

__all__ = ["Quaternion", "QuaternionRing", "quaternion_exp", "I", "J", "K", "ONE"]


def _to_fraction(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not quaternion components")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"{v!r} is not an exact rational")


class Quaternion:
    """``w + x i + y j + z k`` with i² = j² = k² = ijk = -1.

    Components given as ints/Fractions/strings produce the exact flavor,
    floats produce the floating flavor.  The flavors never mix: combining
    them raises ``TypeError``; use :meth:`to_float` explicitly.
    """

    __slots__ = ("_c", "_d")

    def __init__(self, w=0, x=0, y=0, z=0, *, exact: bool | None = None):
        comps = (w, x, y, z)
        if exact is None:
            exact = not any(isinstance(c, (float, complex)) for c in comps)
        if exact:
            fr = [_to_fraction(c) for c in comps]
            den = math.lcm(*(f.denominator for f in fr))
            self._set_exact(*(f.numerator * (den // f.denominator) for f in fr), den)
        else:
            self._c = tuple(float(c) for c in comps)
            self._d = None

    # -- construction helpers ---------------------------------------------
    def _set_exact(self, a, b, c, d, den):
        g = math.gcd(a, b, c, d, den)
        if den < 0:
            g = -g
        if g != 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self._c = (a, b, c, d)
        self._d = den

    @classmethod
    def _exact(cls, a, b, c, d, den):
        q = object.__new__(cls)
        q._set_exact(a, b, c, d, den)
        return q

    @classmethod
    def _float(cls, a, b, c, d):
        q = object.__new__(cls)
        q._c = (a, b, c, d)
        q._d = None
        return q

    @classmethod
    def parse(cls, text, exact: bool = True) -> "Quaternion":
        """Read ``[w,x,y,z]`` or ``"w + x i + y j + z k"``."""
        if isinstance(text, Quaternion):
            return text if text.exact == exact else (text.to_float() if not exact else _fail_exact(text))
        if isinstance(text, (list, tuple)):
            if len(text) != 4:
                raise ParseError("quaternion arrays need four components", str(text), 0, "[w,x,y,z]")
            return cls(*(_component(c, exact, str(text)) for c in text), exact=exact)
        if isinstance(text, (int, float, Fraction)):
            return cls(_component(text, exact, str(text)), exact=exact)
        if not isinstance(text, str):
            raise ParseError(f"cannot read a quaternion from {type(text).__name__}", str(text), 0)
        s = text.strip()
        if s.startswith("["):
            import json

            try:
                arr = json.loads(s)
            except ValueError as exc:
                raise ParseError("malformed quaternion array", s, exc.pos if hasattr(exc, "pos") else 0) from None
            return cls.parse(arr, exact)
        return _parse_quaternion_string(s, exact)

    # -- accessors ----------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self._d is not None

    @property
    def components(self) -> tuple:
        if self._d is None:
            return self._c
        d = self._d
        return tuple(Fraction(c, d) for c in self._c)

    w = property(lambda self: self.components[0])
    x = property(lambda self: self.components[1])
    y = property(lambda self: self.components[2])
    z = property(lambda self: self.components[3])

    def to_float(self) -> "Quaternion":
        if self._d is None:
            return self
        d = self._d
        return Quaternion._float(*(c / d for c in self._c))

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_real(self) -> bool:
        return not any(self._c[1:])

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if (self._d is None) != (other._d is None):
            raise TypeError("cannot mix exact and floating quaternions")

    def _scalar(self, s):
        if isinstance(s, bool):
            return NotImplemented
        if isinstance(s, (int, Rational)):
            if self._d is None:
                f = float(s)
                return Quaternion._float(*(c * f for c in self._c))
            s = Fraction(s)
            a, b, c, d = self._c
            n = s.numerator
            return Quaternion._exact(a * n, b * n, c * n, d * n, self._d * s.denominator)
        if isinstance(s, float):
            if self._d is not None:
                raise TypeError("cannot scale an exact quaternion by a float")
            return Quaternion._float(*(c * s for c in self._c))
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Quaternion):
            self._check(other)
            if self._d is None:
                return Quaternion._float(*(p + q for p, q in zip(self._c, other._c)))
            d1, d2 = self._d, other._d
            if d1 == d2:
                return Quaternion._exact(*(p + q for p, q in zip(self._c, other._c)), d1)
            return Quaternion._exact(*(p * d2 + q * d1 for p, q in zip(self._c, other._c)), d1 * d2)
        if isinstance(other, (int, Rational, float)) and not isinstance(other, bool):
            return self + Quaternion(other, exact=self.exact)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        if self._d is None:
            return Quaternion._float(*(-c for c in self._c))
        q = object.__new__(Quaternion)
        q._c = tuple(-c for c in self._c)
        q._d = self._d
        return q

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return self + (-other)
        if isinstance(other, (int, Rational, float)) and not isinstance(other, bool):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return self._scalar(other)
        self._check(other)
        a1, b1, c1, d1 = self._c
        a2, b2, c2, d2 = other._c
        w = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
        x = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
        y = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
        z = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
        if self._d is None:
            return Quaternion._float(w, x, y, z)
        return Quaternion._exact(w, x, y, z, self._d * other._d)

    def __rmul__(self, other):
        # real scalars are central
        return self._scalar(other)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self._scalar(Fraction(1, 1) / other)
        if isinstance(other, float):
            return self._scalar(1.0 / other)
        return NotImplemented

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            return NotImplemented
        result = Quaternion(1, exact=self.exact)
        for _ in range(m):
            result = result * self
        return result

    def conjugate(self) -> "Quaternion":
        a, b, c, d = self._c
        if self._d is None:
            return Quaternion._float(a, -b, -c, -d)
        return Quaternion._exact(a, -b, -c, -d, self._d)

    def norm2(self):
        """Squared Euclidean norm (exact for the exact flavor)."""
        s = sum(c * c for c in self._c)
        if self._d is None:
            return s
        return Fraction(s, self._d * self._d)

    def __abs__(self):
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        """``conjugate(q) / |q|²``; only zero fails."""
        a, b, c, d = self._c
        s = a * a + b * b + c * c + d * d
        if s == 0:
            raise NotInvertible("the zero quaternion has no inverse")
        if self._d is None:
            return Quaternion._float(a / s, -b / s, -c / s, -d / s)
        # (c/den)^-1 = conj(c) * den / |c|^2
        den = self._d
        return Quaternion._exact(a * den, -b * den, -c * den, -d * den, s)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Quaternion):
            if self._d is not None and other._d is not None:
                return self._c == other._c and self._d == other._d
            return self.to_float()._c == other.to_float()._c
        if isinstance(other, (int, float, Rational)) and not isinstance(other, bool):
            return self.is_real() and self.components[0] == other
        return NotImplemented

    def __hash__(self):
        if self._d is None:
            return hash(self._c)
        return hash((self._c, self._d))

    def __repr__(self):
        return "Quaternion({})".format(", ".join(_fmt_component(c) for c in self.components))

    def __str__(self):
        return format_quaternion(self)


def _fail_exact(q):
    raise ParseError("a floating quaternion cannot be read as exact", repr(q), 0)


def _fmt_component(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator == 1 else f"Fraction({c.numerator}, {c.denominator})"
    return repr(c)


def _component(value, exact, text):
    if exact:
        if isinstance(value, float):
            if not value.is_integer():
                raise ParseError("floating component in an exact quaternion", text, 0, "integer or 'p/q' string")
            return Fraction(int(value))
        try:
            return _to_fraction(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParseError(f"bad exact component {value!r}", text, 0, "integer or 'p/q' string") from None
    try:
        return float(Fraction(value)) if isinstance(value, str) else float(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"bad component {value!r}", text, 0, "number") from None


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:\s*/\s*\d+)?"
# a coefficient may be parenthesized, as in the pretty form "(1/2)k"
_TERM = re.compile(
    rf"\s*([+-])?\s*(?:\(\s*({_NUM})\s*\)|({_NUM}))?\s*\*?\s*([ijk])?\s*"
)


def _parse_quaternion_string(s, exact):
    comps = [Fraction(0)] * 4
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        num = m.group(2) or m.group(3) if m else None
        unit = m.group(4) if m else None
        if not m or m.end() == pos or (num is None and unit is None):
            raise ParseError("unexpected character in quaternion literal", s, pos, "number, i, j or k")
        if seen and m.group(1) is None:
            raise ParseError("missing '+' or '-' between terms", s, pos, "'+' or '-'")
        seen = True
        sign = -1 if m.group(1) == "-" else 1
        if num is None:
            value = Fraction(1)
        else:
            try:
                value = Fraction(num.replace(" ", ""))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad number {num!r}", s, pos) from None
        slot = " ijk".index(unit) if unit else 0
        comps[slot] += sign * value
        pos = m.end()
    if not seen:
        raise ParseError("empty quaternion literal", s, 0, "number, i, j or k")
    if exact:
        return Quaternion(*comps)
    return Quaternion(*(float(c) for c in comps))


def _num_str(c):
    if isinstance(c, Fraction):
        return str(c)
    return f"{c:.12g}"


def format_quaternion(q: Quaternion) -> str:
    """Pretty ``w + xi + yj + zk`` rendering, zero parts omitted."""
    parts = []
    for c, unit in zip(q.components, ("", "i", "j", "k")):
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        body = _num_str(mag)
        if unit:
            body = unit if body == "1" else f"{body}{unit}" if "/" not in body else f"({body}){unit}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


def quaternion_exp(q: Quaternion) -> Quaternion:
    """``exp(a + v) = e^a (cos|v| + v/|v| sin|v|)`` for a floating quaternion."""
    if q.exact:
        q = q.to_float()
    a, b, c, d = q.components
    ea = math.exp(a)
    theta = math.sqrt(b * b + c * c + d * d)
    if theta == 0.0:
        return Quaternion._float(ea, 0.0, 0.0, 0.0)
    s = ea * math.sin(theta) / theta
    return Quaternion._float(ea * math.cos(theta), b * s, c * s, d * s)


ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)


class QuaternionRing(Ring):
    """Quaternions as a division-ring backend."""

    def __init__(self, exact: bool = True, cfg: ToleranceConfig = DEFAULT_CONFIG):
        super().__init__(cfg)
        self.exact = exact
        self.name = "quaternion-exact" if exact else "quaternion-float"
        self._zero = Quaternion(0, exact=exact)
        self._one = Quaternion(1, exact=exact)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def coerce(self, value):
        if isinstance(value, Quaternion):
            if value.exact == self.exact:
                return value
            if not self.exact:
                return value.to_float()
            raise TypeError("cannot coerce a floating quaternion to the exact ring")
        return Quaternion.parse(value, self.exact)

    def inverse(self, x):
        if self.exact:
            return x.inverse()
        if self.norm(x) <= self.cfg.abs_tol:
            raise NotInvertible(f"{x} is below the inversion tolerance")
        return x.inverse()

    def norm(self, x):
        return float(max(abs(c) for c in x.components))

    @property
    def approx_ring(self):
        return QuaternionRing(False, self.cfg)

    def approximate(self, x):
        return x.to_float()

    def apply(self, x, func, scale=1):
        if isinstance(scale, complex):
            if scale.imag != 0:
                raise UnsupportedFunction("quaternion functions need a real scale")
            scale = scale.real
        y = x.to_float() * float(scale)
        if func == "exp":
            return quaternion_exp(y)
        if func == "identity":
            return y
        raise UnsupportedFunction(f"quaternion backend supports exp and identity, not {func!r}")

    def __eq__(self, other):
        return isinstance(other, QuaternionRing) and other.exact == self.exact and other.cfg == self.cfg

    def __hash__(self):
        return hash((QuaternionRing, self.exact, self.cfg))

    def __repr__(self):
        return f"QuaternionRing(exact={self.exact})"
