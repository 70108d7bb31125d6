"""Multivariate gamma and beta functions and partitional Pochhammer symbols.

Values that overflow quickly are returned as :class:`LogValue` pairs.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from scipy.special import gammaln, gammasgn

from .errors import DomainError, PoleError
from .partitions import Partition

_POCHHAMMER_LOOP_MAX = 30


class LogValue(NamedTuple):
    """A real number stored as ``sign * exp(log_magnitude)``."""

    log_magnitude: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        sign = self.sign * other.sign
        if sign == 0:
            return ZERO
        return LogValue(self.log_magnitude + other.log_magnitude, sign)

    def __truediv__(self, other):
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return ZERO
        return LogValue(self.log_magnitude - other.log_magnitude, self.sign * other.sign)

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0:
            return ZERO
        return cls(math.log(abs(x)), 1 if x > 0 else -1)


ZERO = LogValue(-math.inf, 0)


def _check_bound(a: float, bound: float, what: str) -> None:
    if not a > bound:
        raise DomainError(f"{what} requires a > {bound:g}, got a = {a:g}")


def mv_gamma_ln(m: int, a: float) -> LogValue:
    """``log Gamma_m(a)`` for real ``a > (m-1)/2``."""
    _check_bound(a, (m - 1) / 2, f"Gamma_{m}")
    total = m * (m - 1) / 4 * math.log(math.pi)
    total += sum(float(gammaln(a - i / 2)) for i in range(m))
    return LogValue(total, 1)


def pochhammer(x: float, n: int) -> float:
    """Rising factorial ``x (x+1) ... (x+n-1)``."""
    if n <= _POCHHAMMER_LOOP_MAX:
        out = 1.0
        for j in range(n):
            out *= x + j
        return out
    # a non-positive integer x inside the range gives an exact zero
    if x <= 0 and float(x).is_integer() and -x < n:
        return 0.0
    sign = gammasgn(x + n) * gammasgn(x)
    return float(sign * math.exp(gammaln(x + n) - gammaln(x)))


def gen_pochhammer(m: int, a: float, kappa) -> float:
    """Generalized Pochhammer symbol ``prod_i (a - (i-1)/2)_{k_i}``."""
    kappa = Partition(kappa)
    if len(kappa) > m:
        raise ValueError(f"{kappa} has more than {m} parts")
    out = 1.0
    for i, k in enumerate(kappa):
        out *= pochhammer(a - i / 2, k)
    return out


def mv_gamma_partition_ln(m: int, a: float, kappa, negate: bool = False) -> LogValue:
    """``Gamma_m[a, kappa]``, or ``Gamma_m[a, -kappa]`` when ``negate``.

    Both are evaluated from the gamma product over shifted arguments.
    """
    kappa = Partition(kappa)
    parts = kappa.padded(m)
    if negate:
        k1 = parts[0] if m else 0
        _check_bound(a, (m - 1) / 2 + k1, f"Gamma_{m}[a, -kappa]")
        args = [a - parts[m - 1 - i] - i / 2 for i in range(m)]
    else:
        _check_bound(a, (m - 1) / 2, f"Gamma_{m}[a, kappa]")
        args = [a + parts[i] - i / 2 for i in range(m)]
    total = m * (m - 1) / 4 * math.log(math.pi)
    sign = 1
    for x in args:
        if x <= 0 and float(x).is_integer():
            raise PoleError(f"gamma pole at argument {x:g}")
        total += float(gammaln(x))
        sign *= int(gammasgn(x))
    return LogValue(total, sign)


def mv_beta_ln(m: int, a: float, b: float) -> LogValue:
    """``log beta_m(a, b) = log Gamma_m(a) + log Gamma_m(b) - log Gamma_m(a+b)``."""
    _check_bound(a, (m - 1) / 2, f"beta_{m} first argument")
    _check_bound(b, (m - 1) / 2, f"beta_{m} second argument")
    return LogValue(
        mv_gamma_ln(m, a).log_magnitude
        + mv_gamma_ln(m, b).log_magnitude
        - mv_gamma_ln(m, a + b).log_magnitude,
        1,
    )
