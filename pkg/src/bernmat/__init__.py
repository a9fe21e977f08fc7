"""Exact Bernoulli numbers from the triangular identity 1 = M.B and its inverse."""

from .exact import RationalPolynomial, binomial, factorial, format_rational, parse_rational
from .matrix import (
    DecompositionRow,
    TriangularMatrix,
    bernoulli_from_matrix,
    build_m,
    decomposition_row,
    invert_triangular,
    m_entry,
    m_inverse,
    rid2_residual,
)
from .oracle import BernoulliTable, Method, bernoulli_akiyama_tanigawa, bernoulli_recurrence, zeta_even_exact
from .qpoly import b2n_from_q, q_polynomial, term_from_q

__version__ = "0.1.0"
