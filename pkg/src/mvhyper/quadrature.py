"""One-dimensional integration helpers built on QUADPACK (``scipy.integrate.quad``)."""

from __future__ import annotations

import math
import warnings
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate, optimize

RTOL = 1e-12
LIMIT = 400


class QuadResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def _quad(f, lo, hi, rtol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(f, lo, hi, epsabs=0, epsrel=rtol, limit=LIMIT, full_output=1)[:3]
    return val, err, info["neval"]


def _sum(parts) -> QuadResult:
    return QuadResult(
        math.fsum(p[0] for p in parts), math.fsum(p[1] for p in parts), sum(p[2] for p in parts)
    )


def quad_interval(f: Callable[[float], float], lo: float, hi: float, rtol: float = RTOL) -> QuadResult:
    return _sum([_quad(f, lo, hi, rtol)])


def quad_halfline(f: Callable[[float], float], rtol: float = RTOL, split: float = 1.0) -> QuadResult:
    """Integral of ``f`` over ``(0, inf)``, split at ``split``."""
    return _sum([_quad(f, 0.0, split, rtol), _quad(f, split, np.inf, rtol)])


def quad_line(f: Callable[[float], float], rtol: float = RTOL, center: float = 0.0, width: float = 1.0) -> QuadResult:
    """Integral of ``f`` over the real line, split around ``center``."""
    pts = [-np.inf, center - width, center, center + width, np.inf]
    return _sum([_quad(f, lo, hi, rtol) for lo, hi in zip(pts[:-1], pts[1:])])


def log_quad_halfline(log_f: Callable[[float], float], rtol: float = RTOL) -> tuple:
    """``log`` of the integral of ``exp(log_f(y))`` over ``(0, inf)``.

    The integral is taken in ``u = log y`` on either side of the maximum of
    ``log_f(e^u) + u``, located on a coarse grid and refined, so sharp peaks
    far from ``y = 1`` are not missed.  Returns ``(log_value, evaluations)``.
    """

    def h(u):
        if not -700 < u < 700:
            return -math.inf
        v = log_f(math.exp(u))
        return v + u if math.isfinite(v) else -math.inf

    grid = np.arange(-60.0, 60.5, 0.5)
    vals = [h(u) for u in grid]
    start = float(grid[int(np.argmax(vals))])
    peak = optimize.minimize_scalar(lambda u: -h(u), bounds=(start - 0.5, start + 0.5), method="bounded")
    u0, h0 = float(peak.x), -float(peak.fun)

    def g(u):
        return math.exp(h(u) - h0)

    left = _quad(g, -np.inf, u0, rtol)
    right = _quad(g, u0, np.inf, rtol)
    total = left[0] + right[0]
    return h0 + math.log(total), len(grid) + left[2] + right[2] + peak.nfev
