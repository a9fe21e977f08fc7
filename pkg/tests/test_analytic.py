import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import spherical_jn

from bernmat import analytic
from bernmat.analytic import (
    ConvergenceReport,
    bessel_sum_closed_form,
    bessel_sum_coefficient,
    bessel_sum_partial,
    cross_section,
    double_factorial_odd,
    hohum_partial,
    hohum_report,
    hohum_target,
    rid1_partial,
    rid1_report,
    sinc,
    spherical_bessel_j,
    spherical_bessel_j_array,
    zeta_partial,
    zeta_tail_bound,
)
from bernmat.oracle import TableRangeError, bernoulli_recurrence


def test_sinc():
    assert sinc(0.0) == 1.0
    assert sinc(math.pi) == pytest.approx(0.0, abs=1e-16)
    assert sinc(1e-6) == pytest.approx(1 - 1e-12 / 6, rel=1e-16)
    assert sinc(0.5) == pytest.approx(math.sin(0.5) / 0.5, rel=1e-15)


def test_bessel_exact_points():
    with pytest.raises(ValueError):
        spherical_bessel_j(0, 0.0)
    with pytest.raises(ValueError):
        spherical_bessel_j(-1, 1.0)
    assert spherical_bessel_j(1, math.pi) == pytest.approx(1 / math.pi, rel=1e-14)
    assert spherical_bessel_j(2, math.pi) == pytest.approx(3 / math.pi**2, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20, 40])
@pytest.mark.parametrize("z", [1e-3, 0.3, 1.0, math.pi, 7.5, 25.0, 100.0])
def test_bessel_against_scipy(n, z):
    want = spherical_jn(n, z)
    got = spherical_bessel_j(n, z)
    assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("z", [math.pi, 2 * math.pi, 10 * math.pi])
def test_bessel_recurrence_consistency(z):
    # j_{n-1} + j_{n+1} = (2n+1)/z j_n
    for n in range(1, 20):
        lhs = spherical_bessel_j(n - 1, z) + spherical_bessel_j(n + 1, z)
        rhs = (2 * n + 1) / z * spherical_bessel_j(n, z)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-14)


def test_bessel_array():
    z = np.array([1e-4, 0.5, math.pi, 40.0])
    np.testing.assert_allclose(spherical_bessel_j_array(3, z), spherical_jn(3, z), rtol=1e-12, atol=1e-300)


def test_double_factorial():
    assert [double_factorial_odd(n) for n in range(5)] == [1, 3, 15, 105, 945]


def test_rid1():
    assert rid1_partial(0.0, 1000) == pytest.approx(1.0, abs=1e-12)
    rep = rid1_report(1.5, [100, 1000, 10000])
    assert rep.errors_decreasing()
    assert [L for L, _, _ in rep.truncations] == [100, 1000, 10000]


def test_convergence_report_roundtrip():
    rep = ConvergenceReport.from_values("demo", 1, 1.0, [(10, 0.5), (100, 0.9)])
    assert rep.errors() == [0.5, pytest.approx(0.1)]
    assert rep.to_csv().splitlines()[0] == "L,value,abs_error"
    d = rep.to_dict()
    assert d["identity"] == "demo"
    assert d["truncations"][0] == {"L": 10, "value": 0.5, "abs_error": 0.5}


def test_hohum_n1_closed_error():
    N = 1000
    err = abs(hohum_partial(1, N) - hohum_target(1))
    c = 3 * math.sqrt(2) / math.pi
    assert c / (N + 1) <= err <= c / N


def test_hohum_report_decreasing():
    assert hohum_report(1, [100, 1000, 10000]).errors_decreasing()


def test_bessel_sum_coefficients():
    t = bernoulli_recurrence(30)
    want = [Fraction(-1, 6), Fraction(-1, 30), Fraction(-1, 210), Fraction(-1, 1890), Fraction(-1, 20790)]
    assert [bessel_sum_coefficient(n, t) for n in range(1, 6)] == want
    with pytest.raises(TableRangeError):
        bessel_sum_coefficient(16, t)


def test_bessel_sum_closed_form_value():
    t = bernoulli_recurrence(10)
    assert bessel_sum_closed_form(1, t) == pytest.approx(-math.sqrt(2) * math.pi / 6, rel=1e-15)
    assert bessel_sum_partial(3, 20000) == pytest.approx(bessel_sum_closed_form(3, t), abs=1e-10)


def test_zeta_partial_and_bound():
    assert zeta_partial(2, 1) == 1.0
    assert zeta_partial(4, 10**5) == pytest.approx(math.pi**4 / 90, rel=1e-15)
    K = 1000
    tail = math.pi**2 / 6 - zeta_partial(2, K)
    assert 0 < tail <= zeta_tail_bound(2, K)
    assert zeta_tail_bound(400, 10) == 0.0 or zeta_tail_bound(400, 10) < 1e-300


def test_cross_section():
    assert cross_section(1, 1, 1, 1) == pytest.approx(2 * math.pi**2, rel=1e-15)
    assert cross_section(2, 3, 4, 0.5) == pytest.approx(2 * math.pi**2 * 2 * 3 / (0.25 * 4), rel=1e-15)
    for bad in [(0, 1, 1, 1), (1, 1, -1, 1), (1, 1, 1, 0)]:
        with pytest.raises(ValueError):
            cross_section(*bad)
