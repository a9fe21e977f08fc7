from fractions import Fraction

import pytest

from bernmat.oracle import (
    AkiyamaTanigawaOracle,
    BernoulliTable,
    Method,
    RecurrenceOracle,
    TableRangeError,
    bernoulli_akiyama_tanigawa,
    bernoulli_recurrence,
    divided_bernoulli,
    zeta_even_exact,
)

from reference_values import ABS_B2N


@pytest.mark.parametrize("build", [bernoulli_recurrence, bernoulli_akiyama_tanigawa])
def test_low_order_values(build):
    t = build(20)
    assert t[0] == 1
    assert t[1] == Fraction(-1, 2)
    assert t[2] == Fraction(1, 6)
    assert t[3] == 0 and t[19] == 0
    for n, v in ABS_B2N.items():
        assert abs(t.even(n)) == v
        assert t.even(n) * (-1) ** (n + 1) > 0


def test_odd_max_index_rounds_down():
    t = bernoulli_recurrence(21)
    assert t.max_index == 20
    assert t[21] == 0  # odd index above 1 is covered once m - 1 is
    with pytest.raises(TableRangeError):
        t[22]


def test_methods_agree_to_200():
    assert RecurrenceOracle().table(200) == AkiyamaTanigawaOracle().table(200)


def test_table_rejects_bad_seed():
    with pytest.raises(ArithmeticError):
        BernoulliTable([Fraction(1), Fraction(1, 5)], Method.RECURRENCE)
    with pytest.raises(ArithmeticError):
        BernoulliTable([Fraction(1), Fraction(1, 6), Fraction(1, 30)], Method.RECURRENCE)


def test_divided_bernoulli():
    t = bernoulli_recurrence(12)
    assert divided_bernoulli(12, t) == Fraction(-691, 2730 * 12)
    assert divided_bernoulli(2, t) == Fraction(1, 12)


def test_zeta_even_exact():
    t = bernoulli_recurrence(20)
    z1 = zeta_even_exact(1, t)
    assert z1.pi_coefficient == Fraction(1, 6) and z1.power == 2
    assert zeta_even_exact(2, t).pi_coefficient == Fraction(1, 90)
    assert zeta_even_exact(3, t).pi_coefficient == Fraction(1, 945)
    assert float(z1) == pytest.approx(1.6449340668482264, rel=1e-15)
    with pytest.raises(TableRangeError):
        zeta_even_exact(11, t)
