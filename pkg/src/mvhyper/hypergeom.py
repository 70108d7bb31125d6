"""Hypergeometric functions pFq of a real symmetric matrix argument.

The series is summed degree by degree over partitions, using zonal
polynomials evaluated from the eigenvalues of the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from scipy import special

from .errors import DivergenceError, DomainError, PoleError, ResourceError
from .partitions import enumerate_partitions
from .specialfun import gen_pochhammer
from .zonal import DEFAULT_CEILING, build_zonal_table

_GRID_TOL = 1e-9
_EXP_MAX = 700.0
_STOP_RUN = 3


@dataclass(frozen=True)
class TruncationPolicy:
    """How far to sum a series and when to stop early.

    ``growth_ratio`` only applies to formally divergent series (``p > q + 1``):
    a degree contribution larger than ``growth_ratio`` times the previous one
    trips the guard.

    With ``accelerate`` set, a convergent series that reaches ``max_degree``
    without meeting ``tol`` is extrapolated from its degree partial sums by
    Wynn's epsilon algorithm.  Turn it off when the degree-``K`` polynomial
    itself is the quantity wanted.
    """

    max_degree: int = 30
    tol: float = 1e-10
    growth_ratio: float = 1.0
    ceiling: int = DEFAULT_CEILING
    accelerate: bool = True
    polynomial: bool = False

    def as_polynomial(self) -> "TruncationPolicy":
        """Same degree, but summed as the exact degree-``K`` polynomial.

        No early stop, no extrapolation and no convergence-domain check.
        """
        return replace(self, polynomial=True, accelerate=False)

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        if not self.tol >= 0:
            raise ValueError("tol must be non-negative")


@dataclass(frozen=True)
class HypergeomSpec:
    upper: Tuple[float, ...] = ()
    lower: Tuple[float, ...] = ()
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def with_params(self, upper=None, lower=None) -> "HypergeomSpec":
        return HypergeomSpec(
            self.upper if upper is None else upper,
            self.lower if lower is None else lower,
            self.truncation,
        )


class ConvergenceReport(NamedTuple):
    degrees: int  # highest degree included
    last_term: float  # magnitude of the last degree contribution
    reason: str  # zero_argument | converged | terminated | max_degree | accelerated


def _near_int(x: float) -> bool:
    return abs(x - round(x)) < _GRID_TOL


def terminating_degree(upper: Sequence[float], m: int):
    """Degree beyond which every term vanishes, or ``None``.

    A factor ``(a)_kappa`` is zero for all ``kappa`` with ``k_1 > N`` when
    ``a = -N``; partitions of weight above ``m N`` all have ``k_1 > N``.
    """
    degrees = [m * int(round(-a)) for a in upper if a <= _GRID_TOL and _near_int(a)]
    return min(degrees) if degrees else None


@lru_cache(maxsize=256)
def _coefficients(upper: Tuple[float, ...], lower: Tuple[float, ...], K: int, m: int):
    """Per-degree arrays of ``prod (a)_kappa / prod (b)_kappa``."""
    out = []
    for k in range(K + 1):
        row = []
        for kappa in enumerate_partitions(k, m):
            num = 1.0
            for a in upper:
                num *= gen_pochhammer(m, _snap(a), kappa)
            den = 1.0
            for b in lower:
                den *= gen_pochhammer(m, _snap(b), kappa)
            if den == 0.0:
                if num != 0.0:
                    raise PoleError(f"lower parameter hits a pole at partition {tuple(kappa)}")
                row.append(0.0)
            else:
                row.append(num / den)
        out.append(np.array(row))
    return tuple(out)


def _snap(x: float) -> float:
    # values within the grid tolerance of a half-integer are treated as exact
    r = round(2 * x) / 2
    return r if abs(x - r) < _GRID_TOL else x


def hyperg_eigen(spec: HypergeomSpec, eigenvalues, full_output: bool = False):
    """pFq evaluated at a symmetric matrix with the given eigenvalues."""
    x = np.atleast_1d(np.asarray(eigenvalues, dtype=float))
    m = x.size
    pol = spec.truncation
    if not np.any(x):
        return (1.0, ConvergenceReport(0, 0.0, "zero_argument")) if full_output else 1.0

    term_deg = terminating_degree(spec.upper, m)
    if term_deg is not None:
        if term_deg > pol.ceiling:
            raise ResourceError(
                f"terminating degree {term_deg} exceeds table ceiling {pol.ceiling}"
            )
        K = term_deg
    else:
        K = pol.max_degree
        if K > pol.ceiling:
            raise ResourceError(f"max_degree {K} exceeds table ceiling {pol.ceiling}")
        if spec.p == spec.q + 1 and np.max(np.abs(x)) >= 1 and not pol.polynomial:
            raise DivergenceError(
                f"{spec.p}F{spec.q} needs spectral radius < 1, got {np.max(np.abs(x)):.4g}"
            )
    divergent_type = spec.p > spec.q + 1 and term_deg is None and not pol.polynomial

    table = build_zonal_table(K, m, ceiling=pol.ceiling)
    coefs = _coefficients(spec.upper, spec.lower, K, m)
    terms = []
    partials = []
    run = 0
    reason = "terminated" if term_deg is not None else "max_degree"
    last = 0.0
    prev = None
    log_fact = 0.0
    for k in range(K + 1):
        if k:
            log_fact += math.log(k)
        zon = table.degree_values(k, x)
        contrib = coefs[k] * zon / math.exp(log_fact)
        terms.extend(contrib.tolist())
        partials.append(math.fsum(terms))
        d_k = abs(math.fsum(contrib))
        last = d_k
        if divergent_type and prev is not None and prev > 0 and d_k > pol.growth_ratio * prev:
            raise DivergenceError(
                f"{spec.p}F{spec.q} terms grow at degree {k} before reaching tolerance"
            )
        prev = d_k
        if term_deg is None and k > 0 and not pol.polynomial:
            total = abs(partials[-1])
            if d_k <= pol.tol * total:
                run += 1
                if run >= _STOP_RUN:
                    reason = "converged"
                    break
            else:
                run = 0
    value = math.fsum(terms)
    if reason == "max_degree" and pol.accelerate and not divergent_type:
        value, reason = _accelerated(partials, value)
    report = ConvergenceReport(k, last, reason)
    return (value, report) if full_output else value


def wynn_epsilon(partial_sums: Sequence[float]) -> Tuple[float, float]:
    """Wynn epsilon extrapolation of a sequence of partial sums.

    Every even column of the epsilon table offers an estimate at its lower
    end; the one whose last two entries agree best is returned together with
    that disagreement, which serves as an error indicator.
    """
    s = [float(v) for v in partial_sums]
    prev = [0.0] * (len(s) + 1)
    cur = s[:]
    best = (abs(s[-1] - s[-2]) if len(s) > 1 else math.inf, s[-1])
    for col in range(1, len(s)):
        nxt = []
        for i in range(len(cur) - 1):
            diff = cur[i + 1] - cur[i]
            if diff == 0.0:
                # an exactly converged column; later ones are undefined
                return (cur[-1], 0.0) if col % 2 == 1 else (best[1], best[0])
            nxt.append(prev[i + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        if col % 2 == 0 and len(cur) > 1:
            cand = (abs(cur[-1] - cur[-2]), cur[-1])
            if math.isfinite(cand[1]) and cand[0] < best[0]:
                best = cand
    return best[1], best[0]


def _accelerated(partials, raw):
    if len(partials) < 5:
        return raw, "max_degree"
    est, err = wynn_epsilon(partials)
    raw_err = abs(partials[-1] - partials[-2])
    if math.isfinite(est) and err < raw_err:
        return est, "accelerated"
    return raw, "max_degree"


def hyperg_matrix(spec: HypergeomSpec, Y, full_output: bool = False):
    """pFq(a; b; Y) for a real symmetric matrix ``Y``."""
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if Y.shape[0] != Y.shape[1]:
        raise ValueError("Y must be square")
    if np.abs(Y - Y.T).max() > 1e-9 * max(1.0, np.abs(Y).max()):
        raise DomainError("Y must be symmetric")
    return hyperg_eigen(spec, np.linalg.eigvalsh((Y + Y.T) / 2), full_output)


def hyperg_scalar(spec: HypergeomSpec, x: float, full_output: bool = False):
    """Scalar pFq by the term-ratio recursion, with the same stopping rules."""
    x = float(x)
    pol = spec.truncation
    if x == 0.0:
        return (1.0, ConvergenceReport(0, 0.0, "zero_argument")) if full_output else 1.0
    term_deg = terminating_degree(spec.upper, 1)
    if term_deg is None and spec.p == spec.q + 1 and abs(x) >= 1:
        raise DivergenceError(f"{spec.p}F{spec.q} needs |x| < 1, got {x:.4g}")
    K = term_deg if term_deg is not None else pol.max_degree
    if K > pol.ceiling:
        raise ResourceError(f"degree {K} exceeds ceiling {pol.ceiling}")
    upper = [_snap(a) for a in spec.upper]
    lower = [_snap(b) for b in spec.lower]
    divergent_type = spec.p > spec.q + 1 and term_deg is None
    terms = [1.0]
    partials = [1.0]
    term = 1.0
    run = 0
    reason = "terminated" if term_deg is not None else "max_degree"
    k = 0
    for k in range(1, K + 1):
        num = math.prod(a + k - 1 for a in upper)
        den = math.prod(b + k - 1 for b in lower)
        if den == 0.0:
            if num != 0.0 and term != 0.0:
                raise PoleError(f"lower parameter hits a pole at degree {k}")
            term = 0.0
        else:
            new = term * num / den * x / k
            if divergent_type and term != 0 and abs(new) > pol.growth_ratio * abs(term):
                raise DivergenceError(f"{spec.p}F{spec.q} terms grow at degree {k}")
            term = new
        terms.append(term)
        partials.append(math.fsum(terms))
        if term_deg is None:
            if abs(term) <= pol.tol * abs(math.fsum(terms)):
                run += 1
                if run >= _STOP_RUN:
                    reason = "converged"
                    break
            else:
                run = 0
    value = math.fsum(terms)
    if reason == "max_degree" and pol.accelerate and not divergent_type:
        value, reason = _accelerated(partials, value)
    report = ConvergenceReport(k, abs(terms[-1]), reason)
    return (value, report) if full_output else value


def _cancel(upper, lower):
    upper, lower = list(upper), list(lower)
    for a in list(upper):
        for b in lower:
            if a == b:
                upper.remove(a)
                lower.remove(b)
                break
    return tuple(upper), tuple(lower)


def hyperg_auto(spec: HypergeomSpec, eigenvalues) -> float:
    """Evaluate pFq using closed forms where they exist, else the series.

    Closed forms: equal upper/lower pairs cancel, 0F0 is the exponential
    trace, 1F0 is a determinant power.  For a scalar argument the common
    Kummer/Gauss/Bessel-type cases go through :mod:`scipy.special`, which
    covers arguments well outside the reach of a degree-30 series.
    """
    x = np.atleast_1d(np.asarray(eigenvalues, dtype=float))
    if not np.any(x):
        return 1.0
    upper, lower = _cancel(spec.upper, spec.lower)
    if terminating_degree(upper, x.size) is None:
        if not upper and not lower:
            return math.exp(math.fsum(x))
        if len(upper) == 1 and not lower:
            if np.any(x >= 1):
                raise DivergenceError("1F0 argument needs eigenvalues below 1")
            return math.exp(-upper[0] * math.fsum(np.log1p(-x)))
        if x.size == 1:
            v = _scalar_closed(upper, lower, float(x[0]))
            if v is not None:
                return v
    return hyperg_eigen(spec.with_params(upper, lower), x)


def _scalar_closed(upper, lower, x):
    shape = (len(upper), len(lower))
    if shape == (0, 1):
        return float(special.hyp0f1(lower[0], x))
    if shape == (1, 1):
        a, b = upper[0], lower[0]
        if x > _EXP_MAX:
            # overflows a double; scipy's series also stalls for huge arguments
            return math.inf
        if x < -_EXP_MAX:
            return _kummer_large_negative(a, b, -x)
        if x < 0:
            return float(math.exp(x) * special.hyp1f1(b - a, b, -x))
        return float(special.hyp1f1(a, b, x))
    if shape == (2, 1):
        if x >= 1:
            raise DivergenceError("2F1 argument must be below 1")
        return float(special.hyp2f1(upper[0], upper[1], lower[0], x))
    return None


def _kummer_large_negative(a: float, b: float, x: float) -> float:
    """``1F1(a; b; -x)`` for ``x > 700`` from its algebraic asymptotic series.

    The exponentially small companion term is below double precision, so
    only ``Gamma(b)/Gamma(b-a) x^{-a} sum_s (a)_s (a-b+1)_s / (s! x^s)``
    remains; it is summed up to its smallest term.
    """
    if b - a <= 0 and float(b - a).is_integer():
        return 0.0  # e^{-x} times a polynomial: underflows
    term, total = 1.0, 1.0
    for s in range(1, 200):
        nxt = term * (a + s - 1) * (a - b + s) / (s * x)
        if abs(nxt) >= abs(term) or nxt == 0:
            break
        term = nxt
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    log_pref = special.gammaln(b) - special.gammaln(b - a) - a * math.log(x)
    return float(special.gammasgn(b - a) * math.exp(log_pref) * total)


def kummer_transform_check(b: float, c: float, Y, truncation: TruncationPolicy | None = None) -> float:
    """Relative residual of ``1F1(b;c;-Y) = etr(-Y) 1F1(c-b;c;Y)``, both sides by series."""
    pol = truncation or TruncationPolicy()
    x = np.linalg.eigvalsh(np.atleast_2d(np.asarray(Y, dtype=float)))
    lhs = hyperg_eigen(HypergeomSpec((b,), (c,), pol), -x)
    rhs = math.exp(-math.fsum(x)) * hyperg_eigen(HypergeomSpec((c - b,), (c,), pol), x)
    return _rel(lhs, rhs)


def euler_transform_check(a: float, b: float, c: float, Y, truncation: TruncationPolicy | None = None) -> float:
    """Relative residual of ``2F1(a,b;c;Y) = |I-Y|^{c-a-b} 2F1(c-a,c-b;c;Y)``."""
    pol = truncation or TruncationPolicy()
    x = np.linalg.eigvalsh(np.atleast_2d(np.asarray(Y, dtype=float)))
    lhs = hyperg_eigen(HypergeomSpec((a, b), (c,), pol), x)
    det = math.exp((c - a - b) * math.fsum(np.log1p(-x)))
    rhs = det * hyperg_eigen(HypergeomSpec((c - a, c - b), (c,), pol), x)
    return _rel(lhs, rhs)


def _rel(lhs: float, rhs: float) -> float:
    if rhs == 0:
        return abs(lhs)
    return abs(lhs - rhs) / abs(rhs)
