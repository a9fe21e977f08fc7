"""Floating-point checks of the scattering-side identities.

Covers the sinc-sum identity, spherical Bessel functions, the alternating
Bessel sum for pi^n / sqrt(2), its finite zeta-value closed forms, zeta(2n)
partial sums, and the 2D cross section of the 1/r^2 potential.  Partial sums
are accumulated with :func:`math.fsum`.
"""

from __future__ import annotations

import csv
import decimal
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .exact import factorial
from .oracle import BernoulliTable, TableRangeError, zeta_even_exact

__all__ = [
    "ConvergenceReport",
    "sinc",
    "spherical_bessel_j",
    "spherical_bessel_j_array",
    "rid1_partial",
    "rid1_report",
    "bessel_sum_partial",
    "hohum_partial",
    "hohum_target",
    "hohum_report",
    "double_factorial_odd",
    "bessel_sum_coefficient",
    "bessel_sum_closed_form",
    "zeta_partial",
    "zeta_tail_bound",
    "cross_section",
]

SQRT2 = math.sqrt(2.0)

_SINC_TAYLOR_BELOW = 1e-4


def sinc(z: float) -> float:
    """sin(z)/z, equal to 1 at z = 0."""
    if abs(z) < _SINC_TAYLOR_BELOW:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    return math.sin(z) / z


def _sinc_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < _SINC_TAYLOR_BELOW
    safe = np.where(small, 1.0, z)
    z2 = z * z
    return np.where(small, 1.0 - z2 / 6.0 + z2 * z2 / 120.0, np.sin(safe) / safe)


def _series_j(n: int, z: float) -> float:
    # z^n/(2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1)).
    # Terms grow before they shrink when z is near n; 60 digits absorb the
    # cancellation.
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        zd = decimal.Decimal(z)
        term = decimal.Decimal(1)
        for i in range(1, n + 1):
            term = term * zd / (2 * i + 1)
        total = term
        half_z2 = -zd * zd / 2
        eps = decimal.Decimal(10) ** -40
        k = 0
        while True:
            k += 1
            term = term * half_z2 / (k * (2 * n + 2 * k + 1))
            total += term
            if abs(term) <= eps * abs(total):
                return float(total)


def spherical_bessel_j(n: int, z: float) -> float:
    """j_n(z) for n >= 0, z > 0.

    Upward recurrence from j_0, j_1 while n < z; the ascending series
    otherwise, where the recurrence would amplify rounding.
    """
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if not z > 0:
        raise ValueError(f"argument must be positive, got {z}")
    if n >= z and n > 0:
        return _series_j(n, z)
    s, c = math.sin(z), math.cos(z)
    j0 = s / z
    if n == 0:
        return j0
    j1 = s / (z * z) - c / z
    for i in range(1, n):
        j0, j1 = j1, (2 * i + 1) / z * j1 - j0
    return j1


def spherical_bessel_j_array(n: int, z: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    """Vectorized :func:`spherical_bessel_j` with the same branch rule."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("all arguments must be positive")
    s, c = np.sin(z), np.cos(z)
    j0 = s / z
    if n == 0:
        return j0
    j1 = s / (z * z) - c / z
    for i in range(1, n):
        j0, j1 = j1, (2 * i + 1) / z * j1 - j0
    low = np.nonzero(z <= n)[0]
    if low.size:
        j1 = j1.copy()
        for idx in low:
            j1[idx] = _series_j(n, float(z[idx]))
    return j1


@dataclass
class ConvergenceReport:
    """Truncated values of one identity against its exact target."""

    identity_name: str
    parameter: Union[int, float]
    target: float
    truncations: list[tuple[int, float, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        ls = [t[0] for t in self.truncations]
        if ls != sorted(ls):
            raise ValueError("truncations must be in ascending order")

    @classmethod
    def from_values(cls, name: str, parameter, target: float, values: Iterable[tuple[int, float]]) -> ConvergenceReport:
        rows = sorted((int(L), float(v), abs(float(v) - target)) for L, v in values)
        return cls(name, parameter, target, rows)

    def errors(self) -> list[float]:
        return [e for _, _, e in self.truncations]

    def errors_decreasing(self) -> bool:
        errs = self.errors()
        return all(b < a for a, b in zip(errs, errs[1:]))

    def to_dict(self) -> dict:
        return {
            "identity": self.identity_name,
            "parameter": self.parameter,
            "target": self.target,
            "truncations": [{"L": L, "value": v, "abs_error": e} for L, v, e in self.truncations],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["L", "value", "abs_error"])
        for L, v, e in self.truncations:
            w.writerow([L, repr(v), repr(e)])
        return buf.getvalue()


def _prefix_sums(terms: np.ndarray, cuts: Sequence[int]) -> list[float]:
    return [math.fsum(terms[:L]) for L in cuts]


def _rid1_terms(x: float, L: int) -> np.ndarray:
    l = np.arange(1, L + 1, dtype=float)
    signs = np.where(np.arange(1, L + 1) % 2, -1.0, 1.0)
    return 2.0 * signs * _sinc_array(np.pi * np.sqrt(l * l + x * x))


def rid1_partial(x: float, L: int) -> float:
    """sinc(pi x) + 2 sum_{l=1}^{L} (-1)^l sinc(pi sqrt(l^2 + x^2)); tends to 1."""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    return math.fsum([sinc(math.pi * x), *_rid1_terms(x, L)])


def rid1_report(x: float, cuts: Sequence[int]) -> ConvergenceReport:
    cuts = sorted(cuts)
    terms = _rid1_terms(x, cuts[-1])
    head = sinc(math.pi * x)
    values = [(L, math.fsum([head, *terms[:L]])) for L in cuts]
    return ConvergenceReport.from_values("rid1", x, 1.0, values)


def double_factorial_odd(n: int) -> int:
    """(2n+1)!! = (2n+1)! / (2^n n!)."""
    return factorial(2 * n + 1) // (2**n * factorial(n))


def _bessel_terms(n: int, N: int) -> np.ndarray:
    l = np.arange(1, N + 1, dtype=float)
    signs = np.where(np.arange(1, N + 1) % 2, -1.0, 1.0)
    return signs * SQRT2 * spherical_bessel_j_array(n, np.pi * l) / l**n


def bessel_sum_partial(n: int, N: int) -> float:
    """sum_{l<=N} (-1)^l J_{n+1/2}(pi l) / l^{n+1/2}, via J_{n+1/2}(pi l) = sqrt(2l) j_n(pi l)."""
    if n < 1 or N < 1:
        raise ValueError(f"need n >= 1 and N >= 1, got n={n}, N={N}")
    return math.fsum(_bessel_terms(n, N))


def hohum_target(n: int) -> float:
    return math.pi**n / SQRT2


def hohum_partial(n: int, N: int) -> float:
    """-(2n+1)!! * bessel_sum_partial(n, N); tends to pi^n / sqrt(2)."""
    return -double_factorial_odd(n) * bessel_sum_partial(n, N)


def hohum_report(n: int, cuts: Sequence[int]) -> ConvergenceReport:
    cuts = sorted(cuts)
    terms = _bessel_terms(n, cuts[-1])
    pref = -double_factorial_odd(n)
    values = [(N, pref * s) for N, s in zip(cuts, _prefix_sums(terms, cuts))]
    return ConvergenceReport.from_values("hohum", n, hohum_target(n), values)


def _recip_gamma_int(m: int) -> Fraction:
    # 1/Gamma(m) for integer m; zero at the poles m <= 0
    if m <= 0:
        return Fraction(0)
    return Fraction(1, factorial(m - 1))


def bessel_sum_coefficient(n: int, table: BernoulliTable) -> Fraction:
    """Exact rational R with sum_l (-1)^l J_{n+1/2}(l pi)/l^{n+1/2} = R sqrt(2) pi^n.

    Evaluates the finite zeta-value closed form (separate even and odd n
    branches), with each zeta(2s) taken as an exact rational times pi^{2s}.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not table.covers(2 * n):
        raise TableRangeError(f"closed form for n={n} needs B_{2 * n}; table stops at {table.max_index}")
    h = n // 2
    total = Fraction(0)
    for k in range((n - 1) // 2 + 1):
        zeta = zeta_even_exact(k + h + 1, table).pi_coefficient
        sign = -1 if k % 2 else 1
        top = factorial(2 * h + 2 * k + 1)
        if n % 2 == 0:
            # zeta(2k+2h+2) / pi^{2k+2} leaves pi^{2h} = pi^n
            total += sign * top * _recip_gamma_int(2 * h - 2 * k) * zeta / (factorial(2 * k + 1) * 2 ** (2 * k + 1))
        else:
            # zeta(2k+2h+2) / pi^{2k+1} leaves pi^{2h+1} = pi^n
            total += sign * top * _recip_gamma_int(2 * h + 2 - 2 * k) * zeta / (factorial(2 * k) * 2 ** (2 * k))
    outer = -1 if h % 2 else 1
    if n % 2:
        outer = -outer
    return outer * total


def bessel_sum_closed_form(n: int, table: BernoulliTable) -> float:
    c = bessel_sum_coefficient(n, table)
    return float(c) * SQRT2 * math.pi**n


def zeta_partial(s: int, K: int) -> float:
    """sum_{k=1}^{K} k^{-s}."""
    if s < 2 or s % 2:
        raise ValueError(f"s must be an even integer >= 2, got {s}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    k = np.arange(1, K + 1, dtype=float)
    return math.fsum(k ** (-float(s)))


def zeta_tail_bound(s: int, K: int) -> float:
    """Upper bound on sum_{k>K} k^{-s} from the integral test: 1/((s-1) K^{s-1})."""
    return math.exp(-(s - 1) * math.log(K) - math.log(s - 1))


def cross_section(mass: float, kappa: float, k: float, hbar: float) -> float:
    """2D integrated cross section 2 pi^2 m kappa / (hbar^2 k) for V = kappa/r^2."""
    for name, v in (("mass", mass), ("kappa", kappa), ("k", k), ("hbar", hbar)):
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")
    return 2.0 * math.pi**2 * mass * kappa / (hbar * hbar * k)
