"""The lower-triangular matrix M with 1 = M.B, its exact inverse, and the
positive decompositions of |B_{2n}| read off the rows of the inverse.

Indices are 1-based throughout: entry (m, n) is row m, column n, and row n
of M^{-1} sums to B_{2n}.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .exact import binomial, factorial, format_rational
from .oracle import BernoulliTable, Method, divided_bernoulli

__all__ = [
    "TriangularMatrix",
    "DecompositionRow",
    "RowReport",
    "ClaimViolation",
    "SingularDiagonalError",
    "TriangularInverter",
    "m_entry",
    "m_row",
    "build_m",
    "invert_triangular",
    "m_inverse",
    "multiply_lower",
    "is_identity",
    "rid2_residual",
    "bernoulli_from_matrix",
    "bernoulli_table_from_matrix",
    "decomposition_row",
    "check_row",
    "diag_closed_form",
    "subdiag1_closed_form",
    "subdiag2_closed_form",
]


class ClaimViolation(ArithmeticError):
    """A structural property claimed for M^{-1} fails on a computed row."""

    def __init__(self, n: int, detail: str):
        super().__init__(f"row {n}: {detail}")
        self.n = n
        self.detail = detail


class SingularDiagonalError(ZeroDivisionError):
    pass


class TriangularMatrix:
    """Square lower-triangular matrix of Fractions, 1-based.

    Row ``m`` stores columns ``1..m``; anything above the diagonal reads as 0.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("matrix size must be >= 1")
        for m, r in enumerate(rows, start=1):
            if len(r) != m:
                raise ValueError(f"row {m} has {len(r)} entries, expected {m}")
        self._rows = rows

    @classmethod
    def identity(cls, size: int) -> TriangularMatrix:
        return cls([[1 if n == m else 0 for n in range(1, m + 1)] for m in range(1, size + 1)])

    @classmethod
    def diagonal(cls, values: Sequence) -> TriangularMatrix:
        return cls([[values[m - 1] if n == m else 0 for n in range(1, m + 1)] for m in range(1, len(values) + 1)])

    @classmethod
    def from_square(cls, square: Sequence[Sequence]) -> TriangularMatrix:
        """Build from a full square array; nonzero entries above the diagonal are rejected."""
        rows = []
        for m, r in enumerate(square, start=1):
            if any(x != 0 for x in r[m:]):
                raise ValueError(f"row {m} has entries above the diagonal")
            rows.append(r[:m])
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self._rows)

    def row(self, m: int) -> tuple[Fraction, ...]:
        if not 1 <= m <= self.size:
            raise IndexError(f"row {m} outside 1..{self.size}")
        return self._rows[m - 1]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        m, n = idx
        if not (1 <= m <= self.size and 1 <= n <= self.size):
            raise IndexError(f"entry ({m}, {n}) outside a {self.size}x{self.size} matrix")
        if n > m:
            return Fraction(0)
        return self._rows[m - 1][n - 1]

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def truncate(self, size: int) -> TriangularMatrix:
        if not 1 <= size <= self.size:
            raise ValueError(f"cannot truncate size {self.size} matrix to {size}")
        return TriangularMatrix(self._rows[:size])

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TriangularMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"TriangularMatrix(size={self.size})"


def m_entry(m: int, n: int) -> int:
    """M_{m,n} = 2 (-1)^{m+1} C(2n-1, m) C(2m+1, 2n).

    Nonzero exactly on the band ceil((m+1)/2) <= n <= m.
    """
    if m < 1 or n < 1:
        raise ValueError(f"M is indexed from 1, got ({m}, {n})")
    sign = 1 if m % 2 else -1
    return 2 * sign * binomial(2 * n - 1, m) * binomial(2 * m + 1, 2 * n)


def m_row(m: int) -> list[int]:
    return [m_entry(m, n) for n in range(1, m + 1)]


def build_m(size: int) -> TriangularMatrix:
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    return TriangularMatrix(m_row(m) for m in range(1, size + 1))


def _combine(terms: Iterable[tuple[Fraction, tuple[list[int], int]]], length: int) -> tuple[list[int], int]:
    """sum c * (nums / den) over integer rows, as (numerators, common den)."""
    terms = [(Fraction(c), r) for c, r in terms if c]
    den = 1
    for c, (_, d) in terms:
        den = math.lcm(den, c.denominator * d)
    acc = [0] * length
    for c, (nums, d) in terms:
        s = c.numerator * (den // (c.denominator * d))
        for i, x in enumerate(nums):
            if x:
                acc[i] += s * x
    return acc, den


def _reduce(nums: list[int], den: int) -> tuple[list[int], int]:
    if den < 0:
        nums, den = [-x for x in nums], -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums, den = [x // g for x in nums], den // g
    return nums, den


class TriangularInverter:
    """Exact forward substitution, one row at a time.

    Rows of the inverse of a lower-triangular matrix never change when the
    truncation grows, so :meth:`extend` only computes the new rows.  Each
    inverse row is kept as integer numerators over one common denominator,
    which keeps the inner loop in integer arithmetic.
    """

    def __init__(self, row_source: Callable[[int], Sequence]):
        self._source = row_source
        self._rows: list[tuple[list[int], int]] = []
        self._lock = threading.Lock()

    @property
    def size(self) -> int:
        return len(self._rows)

    def extend(self, size: int) -> None:
        with self._lock:
            for m in range(len(self._rows) + 1, size + 1):
                self._rows.append(self._solve_row(m))

    def _solve_row(self, m: int) -> tuple[list[int], int]:
        a = [Fraction(x) for x in self._source(m)]
        if len(a) < m:
            raise ValueError(f"row {m} of the source has only {len(a)} entries")
        diag = a[m - 1]
        if diag == 0:
            raise SingularDiagonalError(f"zero diagonal entry at ({m}, {m})")
        acc, den = _combine(((a[n - 1], self._rows[n - 1]) for n in range(1, m)), m)
        # X_m = (e_m - sum_n a_mn X_n) / a_mm
        nums = [-x for x in acc]
        nums[m - 1] += den
        nums = [x * diag.denominator for x in nums]
        return _reduce(nums, den * diag.numerator)

    def matrix(self, size: Optional[int] = None) -> TriangularMatrix:
        size = self.size if size is None else size
        self.extend(size)
        return TriangularMatrix(
            [Fraction(x, d) for x in nums] for nums, d in self._rows[:size]
        )


def invert_triangular(matrix: TriangularMatrix) -> TriangularMatrix:
    return TriangularInverter(matrix.row).matrix(matrix.size)


_M_INVERSE = TriangularInverter(m_row)


def m_inverse(size: int) -> TriangularMatrix:
    """First ``size`` rows of M^{-1}; shared and extended incrementally."""
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    return _M_INVERSE.matrix(size)


def multiply_lower(a: TriangularMatrix, b: TriangularMatrix) -> TriangularMatrix:
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    brows = [_as_int_row(r) for r in b.rows()]
    out = []
    for m in range(1, a.size + 1):
        nums, den = _combine(((a[m, n], brows[n - 1]) for n in range(1, m + 1)), m)
        out.append([Fraction(x, den) for x in nums])
    return TriangularMatrix(out)


def _as_int_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(x.denominator for x in row))
    return [x.numerator * (den // x.denominator) for x in row], den


def is_identity(matrix: TriangularMatrix) -> bool:
    return matrix == TriangularMatrix.identity(matrix.size)


def rid2_residual(n: int, table: BernoulliTable) -> Fraction:
    """(-1)^{n+1} (4n+2) sum_k (2n)!/(n! k! (n-k)!) B_{n+k+1}/(n+k+1); equals 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lead = factorial(2 * n) // factorial(n)
    total = Fraction(0)
    for k in range(n + 1):
        trinomial = lead // (factorial(k) * factorial(n - k))
        total += trinomial * divided_bernoulli(n + k + 1, table)
    sign = 1 if n % 2 else -1
    return sign * (4 * n + 2) * total


def _need_rows(n: int, minv: TriangularMatrix) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if minv.size < n:
        raise IndexError(f"inverse has {minv.size} rows, row {n} requested")


def bernoulli_from_matrix(n: int, minv: TriangularMatrix) -> Fraction:
    """B_{2n} as the n-th row sum of M^{-1}."""
    _need_rows(n, minv)
    return sum(minv.row(n), Fraction(0))


def bernoulli_table_from_matrix(max_n: int, inverter: Optional[TriangularInverter] = None) -> BernoulliTable:
    """B_0..B_{2 max_n} from row sums of M^{-1} (shared inverse unless one is given)."""
    size = max(max_n, 1)
    minv = m_inverse(size) if inverter is None else inverter.matrix(size)
    values = [Fraction(1)] + [bernoulli_from_matrix(n, minv) for n in range(1, max_n + 1)]
    return BernoulliTable(values, Method.MATRIX_INVERSE)


@dataclass(frozen=True)
class DecompositionRow:
    """|B_{2n}| as an ordered sum of positive terms, largest first."""

    n: int
    terms: tuple[Fraction, ...]
    sign: int
    columns: tuple[int, ...] = field(default=())

    @property
    def total(self) -> Fraction:
        return sum(self.terms, Fraction(0))

    @property
    def value(self) -> Fraction:
        """Signed B_{2n}."""
        return self.sign * self.total

    def subtotals(self) -> list[Fraction]:
        out, acc = [], Fraction(0)
        for t in self.terms:
            acc += t
            out.append(acc)
        return out


def decomposition_row(n: int, minv: TriangularMatrix) -> DecompositionRow:
    """Unsigned nonzero entries of row n of M^{-1}, in column order.

    Raises :class:`ClaimViolation` when the row mixes signs, when column
    order disagrees with descending magnitude, or when the term count is off.
    """
    _need_rows(n, minv)
    row = minv.row(n)
    cols = tuple(k for k, x in enumerate(row, start=1) if x != 0)
    signs = {1 if row[k - 1] > 0 else -1 for k in cols}
    if len(signs) != 1:
        raise ClaimViolation(n, "mixed signs in row")
    sign = signs.pop()
    terms = tuple(abs(row[k - 1]) for k in cols)
    for i in range(len(terms) - 1):
        if not terms[i] > terms[i + 1]:
            raise ClaimViolation(
                n, f"column {cols[i]} term {format_rational(terms[i])} not larger than column {cols[i + 1]}"
            )
    expected = 1 if n <= 2 else n - 1
    if len(terms) != expected:
        raise ClaimViolation(n, f"{len(terms)} nonzero terms, expected {expected}")
    return DecompositionRow(n, terms, sign, cols)


@dataclass
class RowReport:
    """Outcome of every structural check on one row of M^{-1}.

    Checks that do not apply to the row (column-1 vanishing and the 3/7
    ratio below n = 3) are ``None``.
    """

    n: int
    sign_uniform: bool
    monotone: bool
    dominance: bool
    column1_zero: Optional[bool] = None
    ratio_3_7: Optional[bool] = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "sign_uniform": self.sign_uniform,
            "column1_zero": self.column1_zero,
            "monotone": self.monotone,
            "dominance": self.dominance,
            "ratio_3_7": self.ratio_3_7,
            "violations": list(self.violations),
        }


def check_row(n: int, minv: TriangularMatrix) -> RowReport:
    _need_rows(n, minv)
    row = minv.row(n)
    bad: list[str] = []
    expected_sign = 1 if n % 2 else -1
    sign_ok = all(x * expected_sign > 0 for x in row if x != 0)
    if not sign_ok:
        bad.append(f"row sign is not uniformly {expected_sign:+d}")
    col1 = None
    if n >= 3:
        col1 = row[0] == 0
        if not col1:
            bad.append(f"column 1 entry {format_rational(row[0])} is nonzero")
    mags = [abs(x) for x in row]
    monotone = True
    for k in range(2, n):
        if not mags[k - 1] > mags[k]:
            monotone = False
            bad.append(f"|M^-1({n},{k})| <= |M^-1({n},{k + 1})|")
            break
    # each term beats the sum of all smaller ones: scan from the small end
    terms = [t for t in mags if t != 0]
    dominance, tail = True, Fraction(0)
    for i in range(len(terms) - 1, -1, -1):
        if not terms[i] > tail:
            dominance = False
            bad.append(f"term {i + 1} ({format_rational(terms[i])}) does not exceed the subtotal of smaller terms")
            break
        tail += terms[i]
    ratio = None
    if n >= 3:
        ratio = mags[1] != 0 and mags[2] / mags[1] == Fraction(3, 7)
        if not ratio:
            got = "undefined" if mags[1] == 0 else format_rational(mags[2] / mags[1])
            bad.append(f"column 3 / column 2 ratio is {got}, not 3/7")
    return RowReport(n, sign_ok, monotone, dominance, col1, ratio, bad)


def diag_closed_form(n: int) -> Fraction:
    """|M^{-1}_{n,n}| = (n!)^2 / (2n+1)!."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Fraction(factorial(n) ** 2, factorial(2 * n + 1))


def subdiag1_closed_form(n: int) -> Fraction:
    """|M^{-1}_{n,n-1}| = (n-2)/6 * n! (n-1)! / (2n-1)!."""
    if n < 2:
        raise ValueError(f"first sub-diagonal needs n >= 2, got {n}")
    return Fraction((n - 2) * factorial(n) * factorial(n - 1), 6 * factorial(2 * n - 1))


def subdiag2_closed_form(n: int) -> Fraction:
    """|M^{-1}_{n,n-2}| = (7/360)(n - 8/7)(n - 3) n! (n-2)! / (2n-3)!."""
    if n < 3:
        raise ValueError(f"second sub-diagonal needs n >= 3, got {n}")
    # (7/360)(n - 8/7) = (7n - 8)/360
    return Fraction((7 * n - 8) * (n - 3) * factorial(n) * factorial(n - 2), 360 * factorial(2 * n - 3))
