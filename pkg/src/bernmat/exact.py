"""Exact integer/rational kernels and dense polynomials over the rationals.

Integers are Python ints and rationals are :class:`fractions.Fraction`, which
already keep the reduced form ``gcd(num, den) == 1, den > 0``.  Nothing in
this module ever converts to float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

__all__ = [
    "factorial",
    "binomial",
    "exact_div",
    "format_rational",
    "parse_rational",
    "is_reduced",
    "RationalPolynomial",
    "poly_eval",
    "poly_shift",
    "falling_product_poly",
]

Scalar = Union[int, Fraction]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), with the vanishing convention 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def exact_div(a: Scalar, b: Scalar) -> Fraction:
    """a / b as a Fraction; division by zero names both operands."""
    if b == 0:
        raise ZeroDivisionError(f"exact division {format_rational(a)} / 0")
    return Fraction(a) / Fraction(b)


def format_rational(q: Scalar) -> str:
    """Canonical text form: ``num/den``, or ``num`` when den == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`.  Accepts only ``int`` or ``int/int``."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return exact_div(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None


def is_reduced(q: Fraction) -> bool:
    return q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1


def _common_denominator(coeffs: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (c.denominator for c in coeffs), 1)


def _taylor_shift(coeffs: list, a: int) -> list:
    # In place: coefficients of p(x + a) from those of p(x).  O(d^2) adds of a*c.
    n = len(coeffs)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            coeffs[k] += a * coeffs[k + 1]
    return coeffs


class RationalPolynomial:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` multiplies ``n**i``.  Trailing zeros are stripped so the
    zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> RationalPolynomial:
        return cls((c,))

    @classmethod
    def from_integers(cls, nums: Sequence[int], den: int = 1) -> RationalPolynomial:
        """Polynomial with coefficients ``nums[i] / den``."""
        if den == 0:
            raise ZeroDivisionError("polynomial with zero common denominator")
        return cls(Fraction(c, den) for c in nums)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def integer_form(self) -> tuple[list[int], int]:
        """(numerators, D) with coefficient i equal to numerators[i] / D."""
        d = _common_denominator(self._coeffs)
        return [c.numerator * (d // c.denominator) for c in self._coeffs], d

    def __call__(self, x: Scalar) -> Fraction:
        return poly_eval(self, x)

    def __add__(self, other: RationalPolynomial | Scalar) -> RationalPolynomial:
        b = _as_poly(other)
        a = self._coeffs
        if len(a) < len(b._coeffs):
            a, bc = b._coeffs, a
        else:
            bc = b._coeffs
        out = list(a)
        for i, c in enumerate(bc):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: RationalPolynomial | Scalar) -> RationalPolynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> RationalPolynomial:
        return _as_poly(other) - self

    def __mul__(self, other: RationalPolynomial | Scalar) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return self.scale(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> RationalPolynomial:
        c = Fraction(c)
        return RationalPolynomial(c * x for x in self._coeffs)

    def shift(self, a: int) -> RationalPolynomial:
        return poly_shift(self, a)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == RationalPolynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            mag = format_rational(abs(c))
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{mag}*{mono}" if mono else mag
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _as_poly(x: RationalPolynomial | Scalar) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial.constant(x)


def poly_eval(p: RationalPolynomial, x: Scalar) -> Fraction:
    """Horner evaluation at an exact point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_shift(p: RationalPolynomial, a: int) -> RationalPolynomial:
    """The polynomial ``r`` with ``r(n) == p(n + a)``."""
    if p.degree < 1 or a == 0:
        return p
    nums, den = p.integer_form()
    return RationalPolynomial.from_integers(_taylor_shift(nums, int(a)), den)


def falling_product_poly(offset: int, length: int) -> RationalPolynomial:
    """prod_{i=0}^{length-1} (n - offset - i); the constant 1 when length == 0.

    This is the polynomial form of (n - offset)! / (n - offset - length)!.
    """
    if length < 0:
        raise ValueError(f"falling product length must be >= 0, got {length}")
    coeffs = [1]
    for i in range(length):
        coeffs = _mul_linear(coeffs, -offset - i)
    return RationalPolynomial(coeffs)


def _mul_linear(h: Sequence[int], c: int) -> list[int]:
    """Integer coefficients of h(x) * (x + c)."""
    out = [0] * (len(h) + 1)
    for i, x in enumerate(h):
        out[i] += c * x
        out[i + 1] += x
    return out
