"""Named verification suites.  Each suite returns a list of outcomes; a
suite passes when every outcome does."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import analytic
from .exact import RationalPolynomial, format_rational
from .matrix import (
    check_row,
    decomposition_row,
    diag_closed_form,
    is_identity,
    m_inverse,
    build_m,
    multiply_lower,
    rid2_residual,
    subdiag1_closed_form,
    subdiag2_closed_form,
    ClaimViolation,
)
from .oracle import bernoulli_akiyama_tanigawa, bernoulli_recurrence, zeta_even_exact
from .qpoly import b2n_from_q, default_family, q_scalar, term_from_q

__all__ = ["VerifyOutcome", "SUITES", "run_suite", "EXPECTED_LOW_ORDER_Q"]

EXPECTED_LOW_ORDER_Q = {
    0: RationalPolynomial([Fraction(1, 6)]),
    1: RationalPolynomial([Fraction(-1, 45), Fraction(7, 360)]),
    2: RationalPolynomial([Fraction(1, 315), Fraction(-89, 15120), Fraction(31, 15120)]),
}

RID1_POINTS = (0.5, 1.5, 2.5)

DEFAULT_TERMS = {"rid1": 10**4, "hohum": 10**5, "zeta": 10**6}


@dataclass
class VerifyOutcome:
    check_name: str
    range: str
    passed: bool = True
    first_failure: Optional[dict] = None
    details: list[dict] = field(default_factory=list)

    def record(self, ok: bool, **item) -> None:
        """Append one per-item result; the first failing item is kept."""
        item["passed"] = bool(ok)
        self.details.append(item)
        if not ok and self.first_failure is None:
            self.first_failure = item
            self.passed = False

    def as_dict(self) -> dict:
        return {
            "check": self.check_name,
            "range": self.range,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "details": self.details,
        }


def _rid2(max_n: int, terms: int) -> list[VerifyOutcome]:
    out = []
    for label, build in (("recurrence", bernoulli_recurrence), ("akiyama", bernoulli_akiyama_tanigawa)):
        table = build(2 * max_n)
        o = VerifyOutcome(f"rid2[{label}]", f"n=1..{max_n}")
        for n in range(1, max_n + 1):
            r = rid2_residual(n, table)
            o.record(r == 1, n=n, residual=format_rational(r))
        out.append(o)
    return out


_ROW_CHECKS = ("sign_uniform", "column1_zero", "monotone", "dominance", "ratio_3_7")


def _rows(max_n: int, terms: int) -> list[VerifyOutcome]:
    minv = m_inverse(max_n)
    oracle = bernoulli_recurrence(2 * max_n)
    outcomes = {name: VerifyOutcome(f"rows.{name}", f"n=1..{max_n}") for name in _ROW_CHECKS}
    decomp = VerifyOutcome("rows.decomposition", f"n=1..{max_n}")
    for n in range(1, max_n + 1):
        rep = check_row(n, minv)
        for name in _ROW_CHECKS:
            val = getattr(rep, name)
            if val is None:
                continue
            item = {"n": n}
            if not val:
                item["violations"] = rep.violations
            outcomes[name].record(val, **item)
        try:
            row = decomposition_row(n, minv)
        except ClaimViolation as exc:
            decomp.record(False, n=n, error=exc.detail)
            continue
        ok = row.total == abs(oracle.even(n)) and row.sign * (-1) ** (n + 1) == 1
        decomp.record(ok, n=n, terms=len(row.terms), total=format_rational(row.total))
    ident = VerifyOutcome("rows.m_times_inverse", f"size={max_n}")
    ident.record(is_identity(multiply_lower(build_m(max_n), minv)), size=max_n)
    return [*outcomes.values(), decomp, ident]


def _closed_forms(max_n: int, terms: int) -> list[VerifyOutcome]:
    minv = m_inverse(max_n)
    forms = (
        ("diag", 1, 0, diag_closed_form),
        ("subdiag1", 2, 1, subdiag1_closed_form),
        ("subdiag2", 3, 2, subdiag2_closed_form),
    )
    out = []
    for name, lo, off, fn in forms:
        o = VerifyOutcome(f"closed_forms.{name}", f"n={lo}..{max_n}")
        for n in range(lo, max_n + 1):
            want, got = fn(n), abs(minv[n, n - off])
            o.record(want == got, n=n, closed_form=format_rational(want), inverse_entry=format_rational(got))
        out.append(o)
    q = VerifyOutcome("closed_forms.q_low_order", "l=0..2")
    fam = default_family()
    for l, want in EXPECTED_LOW_ORDER_Q.items():
        q.record(fam[l] == want, l=l, computed=str(fam[l]), expected=str(want))
    out.append(q)
    return out


def _qpoly(max_n: int, terms: int) -> list[VerifyOutcome]:
    fam = default_family()
    oracle = bernoulli_recurrence(2 * max_n)
    minv = m_inverse(max_n)
    b = VerifyOutcome("qpoly.b2n", f"n=1..{max_n}")
    for n in range(1, max_n + 1):
        got = b2n_from_q(n, fam)
        b.record(got == abs(oracle.even(n)), n=n, value=format_rational(got))
    t = VerifyOutcome("qpoly.terms_vs_inverse", f"2<=k<=n<={max_n}")
    for n in range(2, max_n + 1):
        bad = [k for k in range(2, n + 1) if term_from_q(n, k, fam) != abs(minv[n, k])]
        t.record(not bad, n=n, **({"columns": bad} if bad else {}))
    top = max(max_n - 3, 0)
    d = VerifyOutcome("qpoly.degree", f"l=0..{top}")
    s = VerifyOutcome("qpoly.scalar_recursion", f"l=0..{top}")
    for l in range(top + 1):
        p = fam[l]
        d.record(p.degree == l, l=l, degree=p.degree)
        pts = [l + 3, l + 4, l + 7]
        bad = [n for n in pts if p(n) != q_scalar(l, n)]
        s.record(not bad, l=l, points=pts, **({"mismatch": bad} if bad else {}))
    return [b, t, d, s]


def _cuts(terms: int) -> list[int]:
    return sorted({c for c in (terms // 100, terms // 10, terms) if c >= 1})


def _rid1(max_n: int, terms: int) -> list[VerifyOutcome]:
    cuts = _cuts(terms)
    o = VerifyOutcome("rid1.decade_decay", "x=" + ",".join(map(str, RID1_POINTS)) + f"; L={cuts}")
    for x in RID1_POINTS:
        rep = analytic.rid1_report(x, cuts)
        o.record(rep.errors_decreasing(), x=x, report=rep.to_dict())
    return [o]


HOHUM_FLOAT_MAX_N = 6


def _hohum(max_n: int, terms: int) -> list[VerifyOutcome]:
    N = terms
    # absolute errors are only comparable while rounding of the ~pi^n sized
    # sum stays below the truncation error; the float checks stop at n = 6
    top = min(max_n, HOHUM_FLOAT_MAX_N)
    reps = {n: analytic.hohum_report(n, [N, 2 * N]) for n in range(1, top + 1)}
    err = {n: r.errors()[0] for n, r in reps.items()}
    # n = 1: the truncation error is exactly (3 sqrt2 / pi) sum_{l>N} 1/l^2
    c1 = 3 * math.sqrt(2) / math.pi
    lo, hi = c1 / (N + 1), c1 / N
    slack = 1e-12 * analytic.hohum_target(1) + 1e-9 * hi
    bound = VerifyOutcome("hohum.n1_tail_bound", f"n=1; N={N}")
    bound.record(lo - slack <= err[1] <= hi + slack, error=err[1], lower=lo, upper=hi)
    rate = VerifyOutcome("hohum.n1_halving", f"n=1; N={N},{2 * N}")
    e1, e2 = reps[1].errors()
    rate.record(e2 <= 0.75 * e1, error_N=e1, error_2N=e2, ratio=e2 / e1 if e1 else None)
    largest = VerifyOutcome("hohum.largest_at_n1", f"n=1..{top}; N={N}")
    for n in range(1, top + 1):
        largest.record(err[n] <= err[1], n=n, abs_error=err[n], report=reps[n].to_dict())
    table = bernoulli_recurrence(2 * max_n)
    closed = VerifyOutcome("hohum.closed_form_exact", f"n=1..{max_n}")
    for n in range(1, max_n + 1):
        c = analytic.bessel_sum_coefficient(n, table)
        want = Fraction(-1, 2 * analytic.double_factorial_odd(n))
        closed.record(c == want, n=n, coefficient=format_rational(c))
    return [bound, rate, largest, closed]


def _zeta(max_n: int, terms: int) -> list[VerifyOutcome]:
    table = bernoulli_recurrence(2 * max_n)
    o = VerifyOutcome("zeta.partial_sums", f"n=1..{max_n}; K={terms}")
    for n in range(1, max_n + 1):
        exact = float(zeta_even_exact(n, table))
        partial = analytic.zeta_partial(2 * n, terms)
        tol = analytic.zeta_tail_bound(2 * n, terms) + 4 * math.ulp(exact)
        diff = exact - partial
        o.record(-4 * math.ulp(exact) <= diff <= tol, n=n, difference=diff, tolerance=tol)
    return [o]


SUITES: dict[str, Callable[[int, int], list[VerifyOutcome]]] = {
    "rid2": _rid2,
    "rows": _rows,
    "closed_forms": _closed_forms,
    "qpoly": _qpoly,
    "rid1": _rid1,
    "hohum": _hohum,
    "zeta": _zeta,
}


def run_suite(name: str, max_n: int, terms: Optional[int] = None) -> list[VerifyOutcome]:
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    if terms is not None and terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    names = list(SUITES) if name == "all" else [name]
    out: list[VerifyOutcome] = []
    for s in names:
        if s not in SUITES:
            raise KeyError(f"unknown suite {s!r}")
        t = terms if terms is not None else DEFAULT_TERMS.get(s, 0)
        out.extend(SUITES[s](max_n, t))
    return out
