"""Quasideterminants and noncommutative spectral decomposition.

Matrices over quaternions, rationals, complex numbers and harmonic
oscillator operators; per-row characteristic polynomials, eigen-diagonals,
Lagrange-interpolation projectors and matrix functions built on them.
"""
from .charpoly import (
    RowCharPoly,
    cayley_hamilton_residual,
    char_poly_all,
    char_poly_row,
    char_poly_row_bordered,
    row_poly_divergence,
)
from .errors import *  # noqa: F401,F403
from .fock import (
    BandOperator,
    FockRing,
    annihilation,
    band_divide,
    band_multiply,
    creation,
    diagonal,
    matrix_element,
    number,
)
from .matrix import (
    MatrixRing,
    NcMatrix,
    diag,
    identity,
    mat_inverse_elimination,
    mat_multiply,
    mat_power,
    solve_left_linear,
    zeros,
)
from .parsing import parse_fock, parse_weight
from .quasidet import (
    homological_residuals,
    mat_inverse_quasidet,
    quasideterminant,
    scaling_check,
    sylvester_reduce,
    try_quasideterminant,
)
from .quaternion import I, J, K, ONE, Quaternion, QuaternionRing, quaternion_exp
from .ring import ComplexRing, RationalRing, ToleranceConfig
from .spectral import (
    EigenDiagonals,
    SpectralDecomposition,
    lagrange_coeffs,
    lagrange_eval,
    main_identity_residual,
    matrix_function,
    reconstruction_residuals,
    solve_eigen_diagonals,
    spectral_decompose,
    vandermonde_qdet,
)

__version__ = "0.1.0"
