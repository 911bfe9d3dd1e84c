import cmath
import math
import random
from fractions import Fraction

import pytest

from ncspectral import (
    I,
    J,
    FockRing,
    NcMatrix,
    Quaternion,
    QuaternionRing,
    RationalRing,
)

OSC_LITERALS = [
    ["0", "sqrt(2)*a", "0"],
    ["sqrt(2)*ad", "0", "sqrt(2)*a"],
    ["0", "sqrt(2)*ad", "0"],
]


def random_quaternion(rng, lo=-3, hi=3, den=1):
    return Quaternion(*(Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(4)))


def random_quaternion_matrix(rng, n, ring=None, **kw):
    ring = ring or QuaternionRing()
    return NcMatrix(ring, [[random_quaternion(rng, **kw) for _ in range(n)] for _ in range(n)])


def random_rational_matrix(rng, n, lo=-6, hi=6, den=3):
    ring = RationalRing()
    return NcMatrix(ring, [[Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(n)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def quat_ring():
    return QuaternionRing()


@pytest.fixture
def sp2_matrix(quat_ring):
    """The 2x2 quaternion matrix [[i, j], [j, -i]]."""
    return NcMatrix(quat_ring, [[I, J], [J, -I]])


@pytest.fixture
def fock_ring():
    return FockRing()


@pytest.fixture
def osc_matrix(fock_ring):
    """sqrt(2) [[0, a, 0], [a^dagger, 0, a], [0, a^dagger, 0]]."""
    return NcMatrix.from_literals(fock_ring, OSC_LITERALS)


# -- closed forms for the oscillator example -----------------------------------
#
# Each entry is (diagonal function of the output level m, power of a (>0) or
# a^dagger (<0)).  The diagonal factor stands to the left of the ladder power.


def ladder_element(p, m):
    """Input level and matrix element <m| a^p |n> (p > 0) or <m| (a^dag)^-p |n>."""
    if p >= 0:
        n = m + p
        return n, math.sqrt(math.factorial(n) / math.factorial(m))
    n = m + p
    if n < 0:
        return None, 0.0
    return n, math.sqrt(math.factorial(m) / math.factorial(n))


def lam(x):
    return cmath.sqrt(2 * (2 * x + 3))


def projector_forms(k):
    s = 1 if k == 1 else -1
    if k in (1, 3):
        return {
            (1, 1): (lambda m: (m + 1) / (2 * (2 * m + 3)), 0),
            (1, 2): (lambda m: s / (2 * math.sqrt(2 * m + 3)), 1),
            (1, 3): (lambda m: 1 / (2 * (2 * m + 3)), 2),
            (2, 1): (lambda m: s / (2 * cmath.sqrt(2 * m + 1)), -1),
            (2, 2): (lambda m: 0.5, 0),
            (2, 3): (lambda m: s / (2 * math.sqrt(2 * m + 1)), 1),
            (3, 1): (lambda m: 1 / (2 * (2 * m - 1)), -2),
            (3, 2): (lambda m: s / (2 * cmath.sqrt(2 * m - 1)), -1),
            (3, 3): (lambda m: m / (2 * (2 * m - 1)), 0),
        }
    return {
        (1, 1): (lambda m: (m + 2) / (2 * m + 3), 0),
        (1, 3): (lambda m: -1 / (2 * m + 3), 2),
        (3, 1): (lambda m: -1 / (2 * m - 1), -2),
        (3, 3): (lambda m: (m - 1) / (2 * m - 1), 0),
    }


def exp_forms(t, g):
    c = lambda x: cmath.cos(t * g * lam(x))
    sn = lambda x: cmath.sin(t * g * lam(x))
    return {
        (1, 1): (lambda m: (m + 2 + (m + 1) * c(m)) / (2 * m + 3), 0),
        (1, 2): (lambda m: -1j * sn(m) / math.sqrt(2 * m + 3), 1),
        (1, 3): (lambda m: (-1 + c(m)) / (2 * m + 3), 2),
        (2, 1): (lambda m: -1j * sn(m - 1) / cmath.sqrt(2 * m + 1), -1),
        (2, 2): (lambda m: c(m - 1), 0),
        (2, 3): (lambda m: -1j * sn(m - 1) / math.sqrt(2 * m + 1), 1),
        (3, 1): (lambda m: (-1 + c(m - 2)) / (2 * m - 1), -2),
        (3, 2): (lambda m: -1j * sn(m - 2) / cmath.sqrt(2 * m - 1), -1),
        (3, 3): (lambda m: (m - 1 + m * c(m - 2)) / (2 * m - 1), 0),
    }


def closed_form_error(M, forms, levels):
    """Max deviation of every matrix element of ``M`` from the closed forms."""
    from ncspectral import matrix_element

    worst = 0.0
    for r in range(1, 4):
        for col in range(1, 4):
            form = forms.get((r, col))
            X = M.data[r - 1][col - 1]
            for m in levels:
                for n in range(max(0, m - 3), m + 4):
                    want = 0.0
                    if form is not None:
                        f, p = form
                        src, amp = ladder_element(p, m)
                        if src == n:
                            want = f(m) * amp
                    worst = max(worst, abs(matrix_element(X, m, n) - want))
    return worst


@pytest.fixture
def verdict(capsys):
    """Print a one-line PASS/FAIL verdict past pytest's output capture."""

    def emit(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" :: {detail}" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit
