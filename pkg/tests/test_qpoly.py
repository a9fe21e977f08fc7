from fractions import Fraction

import pytest

from bernmat.exact import RationalPolynomial
from bernmat.matrix import m_inverse
from bernmat.qpoly import (
    QPolynomialFamily,
    b2n_from_q,
    bernoulli_table_from_q,
    default_family,
    q_polynomial,
    q_polynomial_reference,
    q_scalar,
    term_from_q,
)
from bernmat.oracle import bernoulli_recurrence

from reference_values import ABS_B2N, DECOMPOSITIONS


def test_low_order_polynomials():
    assert q_polynomial(0) == RationalPolynomial([Fraction(1, 6)])
    assert q_polynomial(1) == RationalPolynomial([Fraction(-1, 45), Fraction(7, 360)])
    assert q_polynomial(2) == RationalPolynomial([Fraction(1, 315), Fraction(-89, 15120), Fraction(31, 15120)])


def test_fast_builder_matches_literal_construction():
    fam = QPolynomialFamily()
    for l in range(20):
        assert fam[l] == q_polynomial_reference(l, fam), l


@pytest.mark.parametrize("l", [0, 1, 4, 9])
def test_polynomial_matches_pointwise_recursion(l):
    for n in range(l + 3, l + 12):
        assert q_polynomial(l)(n) == q_scalar(l, n)


def test_scalar_recursion_domain():
    with pytest.raises(ValueError):
        q_scalar(2, 4)


def test_degrees():
    fam = default_family()
    assert [fam[l].degree for l in range(30)] == list(range(30))


def test_terms_match_inverse_entries():
    minv = m_inverse(25)
    for n in range(2, 26):
        for k in range(2, n + 1):
            assert term_from_q(n, k) == abs(minv[n, k])


@pytest.mark.parametrize("n", range(3, 11))
def test_terms_reproduce_published_rows(n):
    assert [term_from_q(n, k) for k in range(2, n + 1)] == DECOMPOSITIONS[n]


def test_term_domain():
    with pytest.raises(ValueError):
        term_from_q(5, 1)
    with pytest.raises(ValueError):
        term_from_q(4, 5)


def test_b2n():
    for n, v in ABS_B2N.items():
        assert b2n_from_q(n) == v
    with pytest.raises(ValueError):
        b2n_from_q(0)


def test_table_from_q():
    assert bernoulli_table_from_q(40) == bernoulli_recurrence(80)


def test_evaluate_matches_polynomial():
    fam = default_family()
    for l in (0, 3, 11):
        for n in (l + 3, 50, -7):
            assert fam.evaluate(l, n) == fam[l](n)
