"""Acceptance criteria 1-11, each at its stated tolerance and time budget.

Every criterion prints one ``PASS``/``FAIL`` line; the lines are also
repeated in the terminal summary (see conftest.py).
"""

import math
import time
from fractions import Fraction

import pytest

from bernmat import analytic
from bernmat.matrix import (
    TriangularInverter,
    bernoulli_table_from_matrix,
    check_row,
    decomposition_row,
    diag_closed_form,
    m_row,
    rid2_residual,
    subdiag1_closed_form,
    subdiag2_closed_form,
)
from bernmat.oracle import AkiyamaTanigawaOracle, RecurrenceOracle, zeta_even_exact
from bernmat.qpoly import QPolynomialFamily, bernoulli_table_from_q
from bernmat.verify import EXPECTED_LOW_ORDER_Q

from reference_values import ABS_B2N, DECOMPOSITIONS

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_table():
    t0 = time.perf_counter()
    table = RecurrenceOracle().table(20)
    bad = [n for n, v in ABS_B2N.items() if abs(table.even(n)) != v]
    dt = time.perf_counter() - t0
    report(1, "|B_2|..|B_20| exact", not bad and dt < 1, f"mismatches={bad}, {dt:.3f}s < 1s")


def test_criterion_02_decompositions():
    t0 = time.perf_counter()
    minv = TriangularInverter(m_row).matrix(10)
    bad = [n for n in range(3, 11) if list(decomposition_row(n, minv).terms) != DECOMPOSITIONS[n]]
    dt = time.perf_counter() - t0
    report(2, "decomposition rows 3..10 exact", not bad and dt < 5, f"mismatches={bad}, {dt:.3f}s < 5s")


def test_criterion_03_rid2():
    t0 = time.perf_counter()
    bad = []
    for oracle in (RecurrenceOracle(), AkiyamaTanigawaOracle()):
        table = oracle.table(400)
        bad += [n for n in range(1, 201) if rid2_residual(n, table) != 1]
    dt = time.perf_counter() - t0
    report(3, "RID2 residual = 1 for n<=200, both oracles", not bad and dt < 30, f"failures={bad[:5]}, {dt:.2f}s < 30s")


def test_criterion_04_cross_method():
    t0 = time.perf_counter()
    tables = [
        RecurrenceOracle().table(400),
        AkiyamaTanigawaOracle().table(400),
        bernoulli_table_from_matrix(200, TriangularInverter(m_row)),
        bernoulli_table_from_q(200, QPolynomialFamily()),
    ]
    dt = time.perf_counter() - t0
    same = all(
        tables[0].even(n) == t.even(n) for t in tables[1:] for n in range(1, 201)
    )
    report(4, "four methods identical for n<=200", same and dt < 60, f"{dt:.2f}s < 60s")


def test_criterion_05_structure():
    t0 = time.perf_counter()
    minv = TriangularInverter(m_row).matrix(100)
    failures = {}
    for n in range(1, 101):
        rep = check_row(n, minv)
        if not rep.passed:
            failures[n] = rep.violations
    dt = time.perf_counter() - t0
    report(5, "M^-1 structure n<=100", not failures and dt < 60, f"violations={failures or 'none'}, {dt:.2f}s < 60s")


def test_criterion_06_closed_forms():
    minv = TriangularInverter(m_row).matrix(100)
    bad = [("diag", n) for n in range(1, 101) if abs(minv[n, n]) != diag_closed_form(n)]
    bad += [("sub1", n) for n in range(2, 101) if abs(minv[n, n - 1]) != subdiag1_closed_form(n)]
    bad += [("sub2", n) for n in range(3, 101) if abs(minv[n, n - 2]) != subdiag2_closed_form(n)]
    fam = QPolynomialFamily()
    bad += [("q", l) for l, p in EXPECTED_LOW_ORDER_Q.items() if fam[l] != p]
    report(6, "closed forms and q_0..q_2 exact", not bad, f"mismatches={bad[:5]}")


def test_criterion_07_zeta_bridge():
    t0 = time.perf_counter()
    table = RecurrenceOracle().table(20)
    worst = []
    ok = True
    for n in range(1, 11):
        diff = abs(float(zeta_even_exact(n, table)) - analytic.zeta_partial(2 * n, 10**6))
        tol = 1.1e-6 if n == 1 else 1e-10
        ok &= diff <= tol
        worst.append(diff)
    dt = time.perf_counter() - t0
    ok &= dt < 10
    report(7, "zeta bridge K=1e6", ok, f"n=1 diff={worst[0]:.3e}, max n>=2 diff={max(worst[1:]):.1e}, {dt:.2f}s < 10s")


def test_criterion_08_rid1():
    t0 = time.perf_counter()
    ok, parts = True, []
    for x in (0.5, 1.5, 2.5):
        errs = analytic.rid1_report(x, [10**2, 10**3, 10**4]).errors()
        ok &= errs[0] > errs[1] > errs[2]
        parts.append(f"x={x}: " + ",".join(f"{e:.2e}" for e in errs))
    dt = time.perf_counter() - t0
    ok &= dt < 5
    report(8, "RID1 decade decay", ok, "; ".join(parts) + f"; {dt:.2f}s < 5s")


# Absolute errors at N = 1e5, pinned at twice the measured values.  n = 1 is
# pure truncation (about 1.35e-5); for n >= 2 the truncation error is far
# below double rounding of the ~pi^n sized sum, which peaked at 2.3e-13.
HOHUM_PINNED = {1: 2.7e-5, 2: 4.6e-13, 3: 4.6e-13, 4: 4.6e-13, 5: 4.6e-13, 6: 4.6e-13}


def test_criterion_09_hohum():
    t0 = time.perf_counter()
    N = 10**5
    errs = {n: abs(analytic.hohum_partial(n, N) - analytic.hohum_target(n)) for n in range(1, 7)}
    e2 = abs(analytic.hohum_partial(1, 2 * N) - analytic.hohum_target(1))
    dt = time.perf_counter() - t0
    matches = all(errs[n] <= HOHUM_PINNED[n] for n in errs)
    largest = all(errs[n] <= errs[1] for n in errs)
    halving = e2 <= 0.75 * errs[1]
    # n = 1 error is (3 sqrt2/pi) * sum_{l>N} 1/l^2, bracketed by 1/(N+1) and 1/N
    c = 3 * math.sqrt(2) / math.pi
    bracket = c / (N + 1) * (1 - 1e-9) <= errs[1] <= c / N * (1 + 1e-9)
    ok = matches and largest and halving and bracket and dt < 30
    detail = f"err(n=1)={errs[1]:.4e}, max err(n>=2)={max(errs[n] for n in range(2, 7)):.1e}, ratio={e2 / errs[1]:.4f}, {dt:.2f}s < 30s"
    report(9, "HoHum convergence N=1e5", ok, detail)


def test_criterion_10_bessel_closed_forms():
    t0 = time.perf_counter()
    table = RecurrenceOracle().table(12)
    direct = [abs(analytic.bessel_sum_closed_form(n, table) - analytic.bessel_sum_partial(n, 10**6)) for n in range(2, 7)]
    rel = []
    for n in range(1, 7):
        lhs = -analytic.double_factorial_odd(n) * analytic.bessel_sum_closed_form(n, table)
        target = math.pi**n / math.sqrt(2)
        rel.append(abs(lhs - target) / target)
    dt = time.perf_counter() - t0
    ok = max(direct) <= 1e-5 and max(rel) <= 1e-8 and dt < 60
    report(10, "Bessel-sum closed forms", ok, f"max direct diff={max(direct):.1e}, max rel={max(rel):.1e}, {dt:.2f}s < 60s")


def test_criterion_11_cross_section():
    base = analytic.cross_section(1, 1, 1, 1)
    ok = abs(base - 2 * math.pi**2) <= 1e-12
    for kappa in (2.0, 7.5):
        ok &= math.isclose(analytic.cross_section(1, kappa, 1, 1), kappa * base, rel_tol=1e-14)
    for k in (3.0, 0.25):
        ok &= math.isclose(analytic.cross_section(1, 1, k, 1), base / k, rel_tol=1e-14)
    report(11, "cross section 2 pi^2 and scaling", ok, f"sigma(1,1,1,1)-2pi^2={base - 2 * math.pi**2:.1e}")
