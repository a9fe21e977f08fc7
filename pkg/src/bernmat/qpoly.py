"""The polynomials q_l(n) and the closed form for |B_{2n}| built on them.

q_0 = 1/6 and, for l >= 1 and n >= l + 3,

    q_l(n) = (-1)^l (n-l-3)! / ((2l+3)! (n-2l-3)!)
             + sum_{j<l} (-1)^{l+j+1} (n-l-1+j)! / ((2l+1-2j)! (n-2l-1+2j)!) q_j(n+j-l)

Every factorial ratio is a falling product, so each q_l is a polynomial of
degree l.  The term of |B_{2n}| in column k < n is n! q_{n-k-1}(n) k!(k-1)/(2k+1)!.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Optional

from .exact import (
    RationalPolynomial,
    _mul_linear,
    _taylor_shift,
    factorial,
    falling_product_poly,
    poly_shift,
)
from .oracle import BernoulliTable, Method

__all__ = [
    "QPolynomialFamily",
    "default_family",
    "q_polynomial",
    "q_polynomial_reference",
    "q_scalar",
    "term_from_q",
    "b2n_from_q",
    "bernoulli_table_from_q",
]


class QPolynomialFamily:
    """Memoized q_0, q_1, ...; asking for q_l builds every lower one first.

    The builder works with r_l(m) = q_l(m + l).  In that variable the argument
    shift q_j(n + j - l) disappears (it becomes r_j(m)), and the falling
    product multiplying r_j gains exactly one linear factor each time l grows,
    so the products r_j * falling are carried forward instead of recomputed.
    All of it runs on integer numerators over one denominator per polynomial.
    """

    def __init__(self) -> None:
        self._polys: list[RationalPolynomial] = []
        self._int_forms: list[tuple[list[int], int]] = []
        # r_j numerators times the current falling product, and r_j's denominator
        self._carried: list[list[int]] = []
        self._r_den: list[int] = []
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._polys)

    def __getitem__(self, l: int) -> RationalPolynomial:
        if l < 0:
            raise IndexError(f"q_l needs l >= 0, got {l}")
        self.extend(l)
        return self._polys[l]

    def extend(self, l: int) -> None:
        with self._lock:
            while len(self._polys) <= l:
                self._next()

    def integer_form(self, l: int) -> tuple[list[int], int]:
        self.extend(l)
        return self._int_forms[l]

    def evaluate(self, l: int, n: int) -> Fraction:
        """q_l(n) using the cached integer coefficients."""
        nums, den = self.integer_form(l)
        acc = 0
        for c in reversed(nums):
            acc = acc * n + c
        return Fraction(acc, den)

    def _next(self) -> None:
        l = len(self._polys)
        # (-1)^l/(2l+3)! * prod_{i<l} (m - 3 - i)
        lead = [1]
        for i in range(l):
            lead = _mul_linear(lead, -3 - i)
        if l % 2:
            lead = [-x for x in lead]
        parts = [(lead, factorial(2 * l + 3))]
        for j in range(l):
            d = l - j
            self._carried[j] = _mul_linear(self._carried[j], j - d)
            h = self._carried[j]
            # weight (-1)^{d+1} / (2d+1)!
            parts.append((h if d % 2 else [-x for x in h], self._r_den[j] * factorial(2 * d + 1)))
        den = math.lcm(*(dd for _, dd in parts))
        nums = [0] * (l + 1)
        for p, dd in parts:
            s = den // dd
            for i, x in enumerate(p):
                nums[i] += s * x
        g = math.gcd(den, *nums)
        nums, den = [x // g for x in nums], den // g
        if len(nums) != l + 1 or nums[l] == 0:
            raise ArithmeticError(f"q_{l} does not have degree {l}")
        self._carried.append(list(nums))
        self._r_den.append(den)
        q_nums = _taylor_shift(list(nums), -l)
        self._int_forms.append((q_nums, den))
        self._polys.append(RationalPolynomial.from_integers(q_nums, den))


_DEFAULT = QPolynomialFamily()


def default_family() -> QPolynomialFamily:
    return _DEFAULT


def q_polynomial(l: int, family: Optional[QPolynomialFamily] = None) -> RationalPolynomial:
    return (family or _DEFAULT)[l]


def q_polynomial_reference(l: int, family: Optional[QPolynomialFamily] = None) -> RationalPolynomial:
    """q_l assembled literally: falling products times argument-shifted q_j.

    Cost grows like l^3 per polynomial; used to cross-check the family
    builder on small l.
    """
    family = family or _DEFAULT
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    total = falling_product_poly(l + 3, l).scale(Fraction((-1) ** l, factorial(2 * l + 3)))
    for j in range(l):
        ratio = falling_product_poly(l + 1 - j, l - j)
        weight = Fraction((-1) ** (l + j + 1), factorial(2 * l + 1 - 2 * j))
        total = total + (ratio * poly_shift(family[j], j - l)).scale(weight)
    return total


def _factorial_ratio(a: int, b: int) -> Fraction:
    # a!/b! with 1/(negative)! = 0
    if b < 0:
        return Fraction(0)
    return Fraction(factorial(a), factorial(b))


_SCALAR_MEMO: dict[tuple[int, int], Fraction] = {}


def q_scalar(l: int, n: int) -> Fraction:
    """q_l(n) at one integer point n >= l + 3, straight from the recursion."""
    if n < l + 3:
        raise ValueError(f"the recursion defines q_{l}(n) only for n >= {l + 3}, got n={n}")
    key = (l, n)
    hit = _SCALAR_MEMO.get(key)
    if hit is not None:
        return hit
    total = (-1) ** l * _factorial_ratio(n - l - 3, n - 2 * l - 3) / factorial(2 * l + 3)
    for j in range(l):
        w = (-1) ** (l + j + 1) * _factorial_ratio(n - l - 1 + j, n - 2 * l - 1 + 2 * j)
        total += w / factorial(2 * l + 1 - 2 * j) * q_scalar(j, n + j - l)
    _SCALAR_MEMO[key] = total
    return total


def term_from_q(n: int, k: int, family: Optional[QPolynomialFamily] = None) -> Fraction:
    """Column-k term of |B_{2n}|; equals |M^{-1}(n, k)|."""
    if n < 2 or not 2 <= k <= n:
        raise ValueError(f"term_from_q needs 2 <= k <= n, got n={n}, k={k}")
    if k == n:
        return Fraction(factorial(n) ** 2, factorial(2 * n + 1))
    family = family or _DEFAULT
    q = family.evaluate(n - k - 1, n)
    return factorial(n) * q * Fraction(factorial(k) * (k - 1), factorial(2 * k + 1))


def b2n_from_q(n: int, family: Optional[QPolynomialFamily] = None) -> Fraction:
    """|B_{2n}| = (n!)^2/(2n+1)! + sum_{k=2}^{n-1} n! q_{n-k-1}(n) k!(k-1)/(2k+1)!."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    family = family or _DEFAULT
    fn = factorial(n)
    total = Fraction(fn * fn, factorial(2 * n + 1))
    for k in range(2, n):
        total += fn * family.evaluate(n - k - 1, n) * Fraction(factorial(k) * (k - 1), factorial(2 * k + 1))
    return total


def bernoulli_table_from_q(max_n: int, family: Optional[QPolynomialFamily] = None) -> BernoulliTable:
    family = family or _DEFAULT
    if max_n >= 3:
        family.extend(max_n - 3)
    values = [Fraction(1)]
    for n in range(1, max_n + 1):
        b = b2n_from_q(n, family)
        values.append(b if n % 2 else -b)
    return BernoulliTable(values, Method.Q_POLYNOMIAL)
