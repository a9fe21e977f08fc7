"""Classical Bernoulli numbers and exact zeta(2n) coefficients.

Two independent algorithms (the defining binomial recurrence and the
Akiyama-Tanigawa triangle) provide ground truth for the matrix and
q-polynomial representations.  Convention: B_1 = -1/2.
"""

from __future__ import annotations

import decimal
import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .exact import binomial, factorial

__all__ = [
    "Method",
    "RecurrenceOracle",
    "AkiyamaTanigawaOracle",
    "BernoulliTable",
    "TableRangeError",
    "ZetaEvenValue",
    "bernoulli_recurrence",
    "bernoulli_akiyama_tanigawa",
    "divided_bernoulli",
    "zeta_even_exact",
]


_PI_50 = decimal.Decimal("3.14159265358979323846264338327950288419716939937510582")


class Method(str, enum.Enum):
    RECURRENCE = "recurrence"
    AKIYAMA_TANIGAWA = "akiyama"
    MATRIX_INVERSE = "matrix"
    Q_POLYNOMIAL = "qpoly"


class TableRangeError(IndexError):
    """Requested Bernoulli index lies outside a table."""


class BernoulliTable(Mapping[int, Fraction]):
    """Immutable map ``2n -> B_{2n}`` tagged with the method that produced it.

    Odd indices are implicit: ``table[1] == -1/2`` and ``table[m] == 0`` for
    odd ``m >= 3`` whenever ``m - 1`` is covered.
    """

    def __init__(self, even_values: Iterable[Fraction], method: Method):
        self._even = tuple(Fraction(v) for v in even_values)
        if not self._even:
            raise ValueError("a Bernoulli table needs at least B_0")
        self.method = Method(method)
        self._check()

    def _check(self) -> None:
        if self._even[0] != 1:
            raise ArithmeticError(f"B_0 = {self._even[0]}, expected 1")
        if len(self._even) > 1 and self._even[1] != Fraction(1, 6):
            raise ArithmeticError(f"B_2 = {self._even[1]}, expected 1/6")
        for n, b in enumerate(self._even[1:], start=1):
            if b * (-1) ** (n + 1) <= 0:
                raise ArithmeticError(f"B_{2 * n} = {b} has the wrong sign")

    @property
    def max_index(self) -> int:
        return 2 * (len(self._even) - 1)

    def covers(self, m: int) -> bool:
        if m < 0:
            return False
        if m % 2 and m >= 3:
            return m - 1 <= self.max_index
        return m <= self.max_index

    def __getitem__(self, m: int) -> Fraction:
        if not self.covers(m):
            raise TableRangeError(f"B_{m} not covered (table max index {self.max_index}, method {self.method.value})")
        if m == 1:
            return Fraction(-1, 2)
        if m % 2:
            return Fraction(0)
        return self._even[m // 2]

    def even(self, n: int) -> Fraction:
        """B_{2n}."""
        return self[2 * n]

    def __iter__(self) -> Iterator[int]:
        return iter(range(0, self.max_index + 1, 2))

    def __len__(self) -> int:
        return len(self._even)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BernoulliTable):
            return self._even == other._even
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._even)

    def __repr__(self) -> str:
        return f"BernoulliTable(max_index={self.max_index}, method={self.method.value})"


class RecurrenceOracle:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0, solved for B_m.  Sums run over a
    # common denominator; Bernoulli denominators are squarefree and small.
    def __init__(self) -> None:
        self.values: list[Fraction] = [Fraction(1)]
        self.lock = threading.Lock()

    def extend(self, max_index: int) -> None:
        vals = self.values
        lcm = math.lcm(*(v.denominator for v in vals))
        for m in range(len(vals), max_index + 1):
            acc = 0
            for k in range(m):
                b = vals[k]
                if b:
                    acc += binomial(m + 1, k) * b.numerator * (lcm // b.denominator)
            b_m = Fraction(-acc, lcm * (m + 1))
            if m % 2 and m >= 3 and b_m != 0:
                raise ArithmeticError(f"recurrence produced B_{m} = {b_m}, expected 0")
            vals.append(b_m)
            lcm = math.lcm(lcm, b_m.denominator)

    def table(self, max_index: int) -> BernoulliTable:
        with self.lock:
            self.extend(max_index)
            evens = self.values[0 : max_index + 1 : 2]
        return BernoulliTable(evens, Method.RECURRENCE)


class AkiyamaTanigawaOracle:
    # Row m starts with a[m] = 1/(m+1); a[j-1] = j*(a[j-1] - a[j]) sweeps down
    # to a[0] = B_m (with B_1 = +1/2, flipped on output).
    def __init__(self) -> None:
        self.row: list[Fraction] = []
        self.values: list[Fraction] = []
        self.lock = threading.Lock()

    def extend(self, max_index: int) -> None:
        a = self.row
        for m in range(len(self.values), max_index + 1):
            a.append(Fraction(1, m + 1))
            for j in range(m, 0, -1):
                a[j - 1] = j * (a[j - 1] - a[j])
            b_m = a[0]
            if m == 1:
                b_m = -b_m
            elif m % 2 and b_m != 0:
                raise ArithmeticError(f"Akiyama-Tanigawa produced B_{m} = {b_m}, expected 0")
            self.values.append(b_m)

    def table(self, max_index: int) -> BernoulliTable:
        with self.lock:
            self.extend(max_index)
            evens = self.values[0 : max_index + 1 : 2]
        return BernoulliTable(evens, Method.AKIYAMA_TANIGAWA)


_RECURRENCE = RecurrenceOracle()
_AKIYAMA = AkiyamaTanigawaOracle()


def _check_index(max_index: int) -> int:
    if max_index < 0:
        raise ValueError(f"max_index must be >= 0, got {max_index}")
    # an odd bound is widened to the even index just below it; the odd
    # entry itself is implicit
    return max_index - (max_index % 2)


def bernoulli_recurrence(max_index: int) -> BernoulliTable:
    """B_0..B_{max_index} from the defining binomial recurrence (memoized)."""
    return _RECURRENCE.table(_check_index(max_index))


def bernoulli_akiyama_tanigawa(max_index: int) -> BernoulliTable:
    """B_0..B_{max_index} by the Akiyama-Tanigawa triangle (memoized)."""
    return _AKIYAMA.table(_check_index(max_index))


def divided_bernoulli(m: int, table: BernoulliTable) -> Fraction:
    """beta_m = B_m / m."""
    if m < 1:
        raise ValueError(f"divided Bernoulli number needs m >= 1, got {m}")
    return table[m] / m


@dataclass(frozen=True)
class ZetaEvenValue:
    """zeta(power) = pi_coefficient * pi**power, exactly."""

    power: int
    pi_coefficient: Fraction

    def __post_init__(self) -> None:
        if self.power < 2 or self.power % 2:
            raise ValueError(f"power must be an even integer >= 2, got {self.power}")
        if self.pi_coefficient <= 0:
            raise ValueError("pi coefficient must be positive")

    def __float__(self) -> float:
        with decimal.localcontext() as ctx:
            ctx.prec = 50
            c = decimal.Decimal(self.pi_coefficient.numerator) / self.pi_coefficient.denominator
            return float(c * _PI_50**self.power)


def zeta_even_exact(n: int, table: BernoulliTable) -> ZetaEvenValue:
    """zeta(2n) as a rational multiple of pi^{2n}: 2^{2n-1} |B_{2n}| / (2n)!."""
    if n < 1:
        raise ValueError(f"zeta_even_exact needs n >= 1, got {n}")
    b = abs(table[2 * n])
    return ZetaEvenValue(2 * n, Fraction(2 ** (2 * n - 1)) * b / factorial(2 * n))
