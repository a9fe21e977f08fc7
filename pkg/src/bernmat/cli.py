"""``bernmat`` command line.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage
error, 3 I/O error or bignum size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .exact import format_rational, parse_rational
from .matrix import (
    ClaimViolation,
    TriangularInverter,
    bernoulli_from_matrix,
    bernoulli_table_from_matrix,
    build_m,
    check_row,
    decomposition_row,
    m_inverse,
    m_row,
)
from .oracle import (
    AkiyamaTanigawaOracle,
    BernoulliTable,
    Method,
    RecurrenceOracle,
    bernoulli_akiyama_tanigawa,
    bernoulli_recurrence,
)
from .qpoly import QPolynomialFamily, b2n_from_q, bernoulli_table_from_q, default_family
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FORMATS = ("plain", "json", "csv")
METHODS = tuple(m.value for m in Method)
EXPORTS = ("m", "minv", "terms", "qcoeffs")

MAX_BITS_ENV = "BERNMAT_MAX_BITS"


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


# -- rendering ---------------------------------------------------------------


def approx(q: Fraction, digits: int = 12) -> str:
    """Scientific-notation approximation that never overflows."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 5
        d = decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)
        return format(d, f".{digits - 1}e")


def float_or_none(q: Fraction) -> Optional[float]:
    try:
        return float(q)
    except OverflowError:
        return None


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _max_bits() -> Optional[int]:
    raw = os.environ.get(MAX_BITS_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_BITS_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError(f"{MAX_BITS_ENV} must be positive, got {cap}")
    return cap


def enforce_bit_cap(values: Iterable[Fraction]) -> None:
    """Refuse to emit output whose rationals total more bits than the cap."""
    cap = _max_bits()
    if cap is None:
        return
    total = 0
    for q in values:
        total += q.numerator.bit_length() + q.denominator.bit_length()
        if total > cap:
            raise OutputError(f"output exceeds {MAX_BITS_ENV}={cap} bits of numerators and denominators")


# -- computations shared by commands ------------------------------------------


def bernoulli_value(n: int, method: str) -> Fraction:
    """Signed B_{2n} by one named method."""
    if method == Method.RECURRENCE.value:
        return bernoulli_recurrence(2 * n).even(n)
    if method == Method.AKIYAMA_TANIGAWA.value:
        return bernoulli_akiyama_tanigawa(2 * n).even(n)
    if method == Method.MATRIX_INVERSE.value:
        return bernoulli_from_matrix(n, m_inverse(n))
    if method == Method.Q_POLYNOMIAL.value:
        b = b2n_from_q(n, default_family())
        return b if n % 2 else -b
    raise UsageError(f"unknown method {method!r}")


def fresh_table(method: str, max_n: int) -> BernoulliTable:
    """Table up to B_{2 max_n} computed from scratch (no shared caches)."""
    if method == Method.RECURRENCE.value:
        return RecurrenceOracle().table(2 * max_n)
    if method == Method.AKIYAMA_TANIGAWA.value:
        return AkiyamaTanigawaOracle().table(2 * max_n)
    if method == Method.MATRIX_INVERSE.value:
        return bernoulli_table_from_matrix(max_n, TriangularInverter(m_row))
    if method == Method.Q_POLYNOMIAL.value:
        return bernoulli_table_from_q(max_n, QPolynomialFamily())
    raise UsageError(f"unknown method {method!r}")


def triangle(what: str, rows: int) -> list[list[tuple[int, Fraction]]]:
    """Rows of (column, value) pairs for an export, in ascending order."""
    if what == "m":
        return [list(enumerate(r, start=1)) for r in build_m(rows).rows()]
    if what == "minv":
        return [list(enumerate(r, start=1)) for r in m_inverse(rows).rows()]
    if what == "terms":
        minv = m_inverse(rows)
        out = []
        for n in range(1, rows + 1):
            d = decomposition_row(n, minv)
            out.append(list(zip(d.columns, d.terms)))
        return out
    if what == "qcoeffs":
        fam = default_family()
        return [list(enumerate(fam[l].coeffs)) for l in range(rows)]
    raise UsageError(f"unknown export {what!r}")


def render_triangle(tri: list[list[tuple[int, Fraction]]], fmt: str, first_row: int = 1) -> str:
    if fmt == "json":
        return json.dumps([[format_rational(v) for _, v in r] for r in tri]) + "\n"
    if fmt == "csv":
        return _csv_text(
            ["row", "col", "numerator", "denominator"],
            ([i, c, v.numerator, v.denominator] for i, r in enumerate(tri, start=first_row) for c, v in r),
        )
    return "".join(" ".join(format_rational(v) for _, v in r) + "\n" for r in tri)


def load_triangle(text: str, fmt: str) -> list[list[Fraction]]:
    """Read back an exported triangle as nested lists of Fractions."""
    if fmt == "json":
        return [[parse_rational(s) for s in row] for row in json.loads(text)]
    if fmt == "csv":
        rows: dict[int, list[Fraction]] = {}
        for rec in csv.DictReader(io.StringIO(text)):
            q = Fraction(int(rec["numerator"]), int(rec["denominator"]))
            rows.setdefault(int(rec["row"]), []).append(q)
        return [rows[k] for k in sorted(rows)]
    raise ValueError(f"cannot load format {fmt!r}")


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc.strerror or exc}") from exc


# -- commands --------------------------------------------------------------


def _require_n(value: Optional[int], flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < 1:
        raise UsageError(f"{flag} must be >= 1, got {value}")
    return value


def cmd_bernoulli(args) -> int:
    n = _require_n(args.n, "--n")
    methods = list(METHODS) if args.method == "all" else [args.method]
    values = {m: bernoulli_value(n, m) for m in methods}
    enforce_bit_cap(values.values())
    agree = len(set(values.values())) == 1
    if args.format == "json":
        doc = [
            {
                "n": n,
                "index": 2 * n,
                "method": m,
                "value": format_rational(v),
                "approx": approx(v),
                "float": float_or_none(v),
            }
            for m, v in values.items()
        ]
        _write(_json_text(doc[0] if len(doc) == 1 else {"agree": agree, "results": doc}), args.out)
    elif args.format == "csv":
        _write(
            _csv_text(
                ["n", "index", "method", "numerator", "denominator", "approx"],
                ([n, 2 * n, m, v.numerator, v.denominator, approx(v)] for m, v in values.items()),
            ),
            args.out,
        )
    else:
        lines = [f"{format_rational(v)}\t~{approx(v)}\t[B_{2 * n}, {m}]" for m, v in values.items()]
        _write("\n".join(lines) + "\n", args.out)
    if not agree:
        print("methods disagree", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_decompose(args) -> int:
    n = _require_n(args.n, "--n")
    minv = m_inverse(n)
    try:
        row = decomposition_row(n, minv)
    except ClaimViolation as exc:
        print(f"decomposition failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    report = check_row(n, minv)
    enforce_bit_cap(row.terms)
    subtotals = row.subtotals()
    checks = {k: v for k, v in report.as_dict().items() if k not in ("n", "violations")}
    if args.format == "json":
        doc = {
            "n": n,
            "index": 2 * n,
            "sign": row.sign,
            "value": format_rational(row.value),
            "terms": [format_rational(t) for t in row.terms],
            "columns": list(row.columns),
            "subtotals": [format_rational(s) for s in subtotals],
            "checks": checks,
            "violations": report.violations,
        }
        _write(_json_text(doc), args.out)
    elif args.format == "csv":
        _write(
            _csv_text(
                ["position", "column", "numerator", "denominator", "subtotal"],
                (
                    [i, c, t.numerator, t.denominator, format_rational(s)]
                    for i, (c, t, s) in enumerate(zip(row.columns, row.terms, subtotals), start=1)
                ),
            ),
            args.out,
        )
    else:
        sign = "+" if row.sign > 0 else "-"
        lines = [f"|B_{2 * n}| = {format_rational(row.total)}   (sign {sign}, {len(row.terms)} terms)"]
        lines.append(f"{'#':>3}  {'col':>4}  {'term':<28} subtotal")
        for i, (c, t, s) in enumerate(zip(row.columns, row.terms, subtotals), start=1):
            lines.append(f"{i:>3}  {c:>4}  {format_rational(t):<28} {format_rational(s)}")
        for k, v in checks.items():
            if k != "passed" and v is not None:
                lines.append(f"check {k}: {'pass' if v else 'FAIL'}")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    max_n = args.max_n if args.max_n is not None else 50
    if max_n < 1:
        raise UsageError(f"--max-n must be >= 1, got {max_n}")
    if args.terms is not None and args.terms < 1:
        raise UsageError(f"--terms must be >= 1, got {args.terms}")
    outcomes = run_suite(args.suite, max_n, args.terms)
    passed = all(o.passed for o in outcomes)
    if args.format == "json":
        doc = {"suite": args.suite, "max_n": max_n, "passed": passed, "outcomes": [o.as_dict() for o in outcomes]}
        _write(_json_text(doc), args.out)
    elif args.format == "csv":
        _write(
            _csv_text(
                ["check", "range", "passed", "first_failure"],
                ([o.check_name, o.range, o.passed, json.dumps(o.first_failure) if o.first_failure else ""] for o in outcomes),
            ),
            args.out,
        )
    else:
        lines = []
        for o in outcomes:
            lines.append(f"{'PASS' if o.passed else 'FAIL'}  {o.check_name:<32} {o.range}")
            if o.first_failure:
                lines.append(f"      first failure: {json.dumps(o.first_failure, default=str)[:400]}")
            if args.verbose:
                for d in o.details:
                    lines.append("      " + json.dumps(d, default=str)[:400])
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_export(args) -> int:
    rows = _require_n(args.rows if args.rows is not None else args.n, "--rows")
    tri = triangle(args.what, rows)
    enforce_bit_cap(v for r in tri for _, v in r)
    # q coefficient rows are numbered by l from 0, columns by power
    first = 0 if args.what == "qcoeffs" else 1
    _write(render_triangle(tri, args.format, first), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    max_n = _require_n(args.max_n, "--max-n")
    methods = _parse_methods(args.method)
    timings, tables = {}, {}
    for m in methods:
        t0 = time.perf_counter()
        tables[m] = fresh_table(m, max_n)
        timings[m] = time.perf_counter() - t0
    ref = tables[methods[0]]
    equal = all(tables[m] == ref for m in methods)
    if args.format == "json":
        doc = {
            "max_n": max_n,
            "equal": equal,
            "timings": [{"method": m, "seconds": timings[m]} for m in methods],
        }
        _write(_json_text(doc), args.out)
    elif args.format == "csv":
        _write(_csv_text(["method", "max_n", "seconds", "equal"], ([m, max_n, f"{timings[m]:.6f}", equal] for m in methods)), args.out)
    else:
        lines = [f"B_2..B_{2 * max_n}: results {'identical' if equal else 'DIFFER'} across {len(methods)} method(s)"]
        lines += [f"{m:<12} {timings[m]:10.4f} s" for m in methods]
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if equal else EXIT_FAILED


def _parse_methods(raw: Optional[str]) -> list[str]:
    if raw is None or raw == "all":
        return list(METHODS)
    methods = [m.strip() for m in raw.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if not methods:
        raise UsageError("no methods given")
    return methods


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    p = argparse.ArgumentParser(prog="bernmat", description="Exact Bernoulli-number matrix identities: compute, verify, export.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    b = sub.add_parser("bernoulli", parents=[common], help="print B_{2n}")
    b.add_argument("--n", type=int)
    b.add_argument("--method", choices=(*METHODS, "all"), default=Method.MATRIX_INVERSE.value)
    b.set_defaults(func=cmd_bernoulli)

    d = sub.add_parser("decompose", parents=[common], help="positive decomposition of |B_{2n}|")
    d.add_argument("--n", type=int)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", nargs="?", default="all", choices=(*SUITES, "all"))
    v.add_argument("--max-n", type=int)
    v.add_argument("--terms", type=int, help="truncation for the numeric suites")
    v.add_argument("-v", "--verbose", action="store_true", help="per-item lines in plain output")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", parents=[common], help="write a triangle (m, minv, terms, qcoeffs)")
    e.add_argument("what", choices=EXPORTS)
    e.add_argument("--rows", type=int)
    e.add_argument("--n", type=int, help="alias for --rows")
    e.set_defaults(func=cmd_export)

    bench = sub.add_parser("bench", parents=[common], help="time every method up to --max-n")
    bench.add_argument("--max-n", type=int)
    bench.add_argument("--method", help="comma-separated subset of " + ",".join(METHODS))
    bench.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bernmat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"bernmat: {exc}", file=sys.stderr)
        return EXIT_IO
    except ZeroDivisionError as exc:
        print(f"bernmat: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
