"""Log-densities of the matrix-variate families.

Shape convention follows :mod:`mvhyper.matrixops`: ``X`` is ``n x m``,
``Sigma`` is ``m x m`` and ``Theta`` is ``n x n``.  ``Delta`` always denotes
the symmetrized kernel ``Sigma^{-1/2} (X-mu)' Theta^{-1} (X-mu) Sigma^{-1/2}``.

Every function returns a natural-log density.  Constants are the ones that
survive independent quadrature / Monte-Carlo normalization; see the README
for the places where they differ from printed formulas.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from scipy import special

from .errors import DivergenceError, DomainError, UnsupportedCaseError
from .hypergeom import (
    _EXP_MAX,
    HypergeomSpec,
    TruncationPolicy,
    _scalar_closed,
    hyperg_auto,
    hyperg_eigen,
    terminating_degree,
)
from .matrixops import EllipticalParams, SpdMatrix, product_eigenvalues, quad_form, symmetrize
from .quadrature import log_quad_halfline
from .specialfun import mv_beta_ln, mv_gamma_ln

LOG_2PI = math.log(2 * math.pi)
LOG_PI = math.log(math.pi)
_RANK_TOL = 1e-12


# ---------------------------------------------------------------- helpers


def _lg(m, a):
    return mv_gamma_ln(m, a).log_magnitude


def _lb(m, a, b):
    return mv_beta_ln(m, a, b).log_magnitude


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def _bound(name: str, value: float, bound: float) -> None:
    _require(value > bound, f"{name} must exceed {bound:g}, got {value:g}")


def _log_positive(value: float, what: str) -> float:
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"{what} evaluated to {value!r}; the density is not defined here")
    return math.log(value)


def _spd(a, name) -> SpdMatrix:
    return a if isinstance(a, SpdMatrix) else SpdMatrix(a, name)


def _sym(a, m: int, name: str) -> np.ndarray:
    a = symmetrize(np.atleast_2d(np.asarray(a, dtype=float)))
    if a.shape != (m, m):
        raise DomainError(f"{name} must be {m}x{m}, got {a.shape}")
    return a


def _scale_logdet(params: EllipticalParams) -> float:
    return params.n / 2 * params.sigma.logdet + params.m / 2 * params.theta.logdet


def _kernel_eigs(params: EllipticalParams, X) -> np.ndarray:
    """Eigenvalues of Delta, descending, clipped at zero."""
    with np.errstate(over="ignore", invalid="ignore"):
        delta = quad_form(params, X)
    if not np.all(np.isfinite(delta)):
        raise DomainError("X is too far from mu: the kernel overflows double precision")
    return np.clip(np.linalg.eigvalsh(delta)[::-1], 0.0, None)


def _rank(eigs: np.ndarray) -> int:
    top = eigs.max() if eigs.size else 0.0
    if top <= 0:
        return 0
    return int(np.sum(eigs > _RANK_TOL * top))


def k_surrogate(spec: HypergeomSpec, m: int) -> int:
    """Largest first part ``k_1`` the truncated kernel can reach."""
    term = terminating_degree(spec.upper, 1)
    if term is not None:
        return term
    return spec.truncation.max_degree


def _poly_policy(spec: HypergeomSpec) -> HypergeomSpec:
    return HypergeomSpec(spec.upper, spec.lower, spec.truncation.as_polynomial())


def gauss_neg(a: float, b: float, c: float, z, truncation: Optional[TruncationPolicy] = None) -> float:
    """``2F1(a, b; c; -Z)`` for a positive semi-definite ``Z`` given by its eigenvalues.

    The scalar case uses :func:`scipy.special.hyp2f1`.  For matrices the
    series is summed at ``Z (I+Z)^{-1}`` after a Pfaff transformation, which
    keeps the argument inside the unit ball; a terminating variant is
    preferred when one exists.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z < 0):
        raise DomainError("gauss_neg needs a positive semi-definite argument")
    if not np.any(z):
        return 1.0
    if z.size == 1:
        return float(special.hyp2f1(a, b, c, -z[0]))
    pol = truncation or TruncationPolicy()
    w = z / (1 + z)
    log1p = math.fsum(np.log1p(z))
    # (I+Z)^{-a} 2F1(a, c-b; c; W)  or  (I+Z)^{-b} 2F1(c-a, b; c; W)
    variants = [(a, (a, c - b)), (b, (c - a, b))]
    term = [terminating_degree(up, z.size) is not None for _, up in variants]
    if term[0] != term[1]:
        order = [0] if term[0] else [1]
    else:
        # larger c - A - B converges faster near the boundary
        order = [0, 1] if (b - a) >= (a - b) else [1, 0]
    power, upper = variants[order[0]]
    series = hyperg_eigen(HypergeomSpec(upper, (c,), pol), w)
    return math.exp(-power * log1p) * series


def confluent_neg(b: float, c: float, z, truncation: Optional[TruncationPolicy] = None) -> float:
    """``1F1(b; c; -Z)`` for positive semi-definite ``Z`` via the Kummer relation."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if not np.any(z):
        return 1.0
    if z.size == 1:
        x = float(z[0])
        if x > _EXP_MAX:
            return _scalar_closed((b,), (c,), -x)
        v = float(special.hyp1f1(c - b, c, x))
        if math.isfinite(v) and v > 0:
            return math.exp(math.log(v) - x)
        return float(special.hyp1f1(b, c, -x))
    pol = truncation or TruncationPolicy()
    return math.exp(-math.fsum(z)) * hyperg_eigen(HypergeomSpec((c - b,), (c,), pol), z)


# ---------------------------------------------------------- elliptical laws


def logpdf_matrix_normal(params: EllipticalParams, X) -> float:
    eigs = _kernel_eigs(params, X)
    m, n = params.m, params.n
    return -m * n / 2 * LOG_2PI - _scale_logdet(params) - 0.5 * math.fsum(eigs)


def logpdf_matricvariate_t(nu: float, params: EllipticalParams, X) -> float:
    m, n = params.m, params.n
    _bound("nu", nu, m - 1)
    eigs = _kernel_eigs(params, X)
    const = _lg(m, (n + nu) / 2) - m * n / 2 * LOG_PI - _lg(m, nu / 2) - _scale_logdet(params)
    return const - (n + nu) / 2 * math.fsum(np.log1p(eigs))


# ------------------------------------------------------ gamma-type mixing


def check_hg_gamma(a: float, xi: SpdMatrix, upsilon: np.ndarray, spec: HypergeomSpec) -> None:
    m = xi.dim
    _bound("a", a, (m - 1) / 2)
    _require(spec.p <= spec.q, f"the kernel {spec.p}F{spec.q} is not integrable; need p <= q")
    _sym(upsilon, m, "Upsilon")


def _hg_gamma_norm_ln(a, xi: SpdMatrix, upsilon, spec) -> float:
    eig = product_eigenvalues(upsilon, xi.inverse)
    norm = hyperg_auto(spec.with_params(spec.upper + (a,), spec.lower), eig)
    return a * xi.logdet - _lg(xi.dim, a) - _log_positive(norm, "normalizing series")


def logpdf_hg_gamma_inv(a: float, xi, upsilon, spec: HypergeomSpec, P) -> float:
    """Inverted hypergeometric gamma-type density at the SPD matrix ``P``."""
    xi = _spd(xi, "Xi")
    check_hg_gamma(a, xi, upsilon, spec)
    P = _spd(P, "P")
    m = xi.dim
    pinv = P.inverse
    kernel = hyperg_auto(spec, product_eigenvalues(upsilon, SpdMatrix(pinv)))
    tr = float(np.sum(xi.array * pinv))
    return (
        _hg_gamma_norm_ln(a, xi, upsilon, spec)
        - tr
        - (a + (m + 1) / 2) * P.logdet
        + _log_positive(kernel, "kernel series")
    )


def logpdf_hg_gamma(a: float, xi, upsilon, spec: HypergeomSpec, Y) -> float:
    """Density of ``Y = P^{-1}`` when ``P`` is inverted hypergeometric gamma-type."""
    xi = _spd(xi, "Xi")
    check_hg_gamma(a, xi, upsilon, spec)
    Y = _spd(Y, "Y")
    m = xi.dim
    kernel = hyperg_auto(spec, product_eigenvalues(upsilon, Y))
    tr = float(np.sum(xi.array * Y.array))
    return (
        _hg_gamma_norm_ln(a, xi, upsilon, spec)
        - tr
        + (a - (m + 1) / 2) * Y.logdet
        + _log_positive(kernel, "kernel series")
    )


# ------------------------------------------------------- beta-type mixing


def check_hg_beta2(a: float, b: float, xi: np.ndarray, spec: HypergeomSpec) -> None:
    m = xi.shape[0]
    _bound("a", a, (m - 1) / 2)
    if np.any(xi):
        k1 = k_surrogate(spec, m)
        _bound(f"b (with kernel degree bound k1 = {k1})", b, (m - 1) / 2 + k1)
    else:
        _bound("b", b, (m - 1) / 2)


def _hg_beta2_norm_ln(a, b, xi, spec) -> float:
    m = xi.shape[0]
    base = _lb(m, a, b)
    if not np.any(xi):
        return -base
    poly = _poly_policy(spec)
    full = HypergeomSpec(spec.upper + (a,), spec.lower + (-b + (m + 1) / 2,), poly.truncation)
    norm = hyperg_eigen(full, -np.linalg.eigvalsh(xi))
    return -base - _log_positive(norm, "normalizing series")


def _hg_beta2_kernel(xi, spec, eig) -> float:
    if not np.any(xi):
        return 1.0
    return hyperg_eigen(_poly_policy(spec), eig)


def logpdf_hg_beta2(a: float, b: float, xi, spec: HypergeomSpec, Y) -> float:
    """Hypergeometric beta type II density at the SPD matrix ``Y``.

    The kernel series is the degree-``K`` polynomial set by the truncation
    policy (or the terminating degree), so its normalizing constant is exact.
    """
    Y = _spd(Y, "Y")
    m = Y.dim
    xi = _sym(xi, m, "Xi")
    check_hg_beta2(a, b, xi, spec)
    kernel = _hg_beta2_kernel(xi, spec, product_eigenvalues(xi, Y))
    logdet_1p = float(np.sum(np.log1p(Y.eigenvalues)))
    return (
        _hg_beta2_norm_ln(a, b, xi, spec)
        + (a - (m + 1) / 2) * Y.logdet
        - (a + b) * logdet_1p
        + _log_positive(kernel, "kernel polynomial")
    )


def logpdf_hg_beta2_inv(a: float, b: float, xi, spec: HypergeomSpec, P) -> float:
    """Density of ``P = Y^{-1}`` for ``Y`` hypergeometric beta type II."""
    P = _spd(P, "P")
    m = P.dim
    xi = _sym(xi, m, "Xi")
    check_hg_beta2(a, b, xi, spec)
    kernel = _hg_beta2_kernel(xi, spec, product_eigenvalues(xi, SpdMatrix(P.inverse)))
    logdet_1p = float(np.sum(np.log1p(P.eigenvalues)))
    return (
        _hg_beta2_norm_ln(a, b, xi, spec)
        + (b - (m + 1) / 2) * P.logdet
        - (a + b) * logdet_1p
        + _log_positive(kernel, "kernel polynomial")
    )


# ------------------------------------------- generalised hypergeometric


GEN_FORMS = ("gauss", "confluent")


def check_gen_hg(form, alpha, a, b, c, m) -> None:
    if form not in GEN_FORMS:
        raise DomainError(f"form must be one of {GEN_FORMS}, got {form!r}")
    lo = (m - 1) / 2
    _bound("alpha", alpha, lo)
    _bound("b - alpha", b - alpha, lo)
    _bound("c - alpha", c - alpha, lo)
    if form == "gauss":
        _bound("a - alpha", a - alpha, lo)
        _bound("c - a", c - a, lo)


def gen_hg_const_ln(form, alpha, a, b, c, xi: SpdMatrix) -> float:
    """Log normalizing constant of the generalised hypergeometric density.

    ``gauss``: |Xi|^alpha G[a] G[b] G[c-alpha] / (G[alpha] G[a-alpha] G[b-alpha] G[c]).
    ``confluent``: |Xi|^alpha G[b] G[c-alpha] / (G[alpha] G[c] G[b-alpha]).
    """
    m = xi.dim
    out = alpha * xi.logdet + _lg(m, b) + _lg(m, c - alpha) - _lg(m, alpha) - _lg(m, c) - _lg(m, b - alpha)
    if form == "gauss":
        out += _lg(m, a) - _lg(m, a - alpha)
    return out


def _gen_kernel(form, a, b, c, z, truncation=None) -> float:
    if form == "gauss":
        return gauss_neg(a, b, c, z, truncation)
    return confluent_neg(b, c, z, truncation)


def logpdf_gen_hg(form: str, alpha: float, a: float, b: float, c: float, xi, Y,
                  truncation: Optional[TruncationPolicy] = None) -> float:
    """Generalised hypergeometric density at SPD ``Y`` (``a`` is unused for ``confluent``)."""
    xi = _spd(xi, "Xi")
    Y = _spd(Y, "Y")
    m = xi.dim
    check_gen_hg(form, alpha, a, b, c, m)
    z = np.clip(product_eigenvalues(xi.array, Y), 0, None)
    kernel = _gen_kernel(form, a, b, c, z, truncation)
    return (
        gen_hg_const_ln(form, alpha, a, b, c, xi)
        + (alpha - (m + 1) / 2) * Y.logdet
        + _log_positive(kernel, "kernel")
    )


def logpdf_gen_hg_inv(form: str, alpha: float, a: float, b: float, c: float, xi, P,
                      truncation: Optional[TruncationPolicy] = None) -> float:
    xi = _spd(xi, "Xi")
    P = _spd(P, "P")
    m = xi.dim
    check_gen_hg(form, alpha, a, b, c, m)
    z = np.clip(product_eigenvalues(xi.array, SpdMatrix(P.inverse)), 0, None)
    kernel = _gen_kernel(form, a, b, c, z, truncation)
    return (
        gen_hg_const_ln(form, alpha, a, b, c, xi)
        - (alpha + (m + 1) / 2) * P.logdet
        + _log_positive(kernel, "kernel")
    )


# ------------------------------------------------------------- compounds


def _normal_mix_scalar(a, xi, ups, spec: HypergeomSpec, t, d, scale_logdet) -> float:
    """Inverse-gamma-type scalar mixture of a normal with ``d`` coordinates.

    Shared by the matrix compound at ``m = 1`` and the scale mixture, so the
    two agree to the last bit.
    """
    s = xi + t / 2
    norm = hyperg_auto(spec.with_params(spec.upper + (a,), spec.lower), [ups / xi])
    kern = hyperg_auto(spec.with_params(spec.upper + (a + d / 2,), spec.lower), [ups / s])
    return (
        float(special.gammaln(a + d / 2))
        + a * math.log(xi)
        - d / 2 * LOG_2PI
        - float(special.gammaln(a))
        - scale_logdet
        - _log_positive(norm, "normalizing series")
        - (a + d / 2) * math.log(s)
        + _log_positive(kern, "kernel series")
    )


def logpdf_compound_thm1(a: float, xi, upsilon, spec: HypergeomSpec, params: EllipticalParams, X) -> float:
    """Matrix normal compounded with the inverted hypergeometric gamma-type law."""
    xi = _spd(xi, "Xi")
    m, n = params.m, params.n
    if xi.dim != m:
        raise DomainError(f"Xi must be {m}x{m}")
    upsilon = _sym(upsilon, m, "Upsilon")
    check_hg_gamma(a, xi, upsilon, spec)
    delta = quad_form(params, X)
    if m == 1:
        return _normal_mix_scalar(
            a, float(xi.array[0, 0]), float(upsilon[0, 0]), spec,
            float(np.trace(delta)), n, _scale_logdet(params),
        )
    M = SpdMatrix(xi.array + delta / 2, "Xi + Delta/2")
    kern = hyperg_auto(spec.with_params(spec.upper + (a + n / 2,), spec.lower),
                       product_eigenvalues(upsilon, SpdMatrix(M.inverse)))
    return (
        _lg(m, a + n / 2)
        + _hg_gamma_norm_ln(a, xi, upsilon, spec)
        - m * n / 2 * LOG_2PI
        - _scale_logdet(params)
        - (a + n / 2) * M.logdet
        + _log_positive(kern, "kernel series")
    )


def thm1_kummer_kernel(a: float, n: int, Z) -> float:
    """``1F1(a+n/2; a; Z) = etr(Z) 1F1(-n/2; a; -Z)``, a polynomial for even ``n``."""
    z = np.atleast_1d(np.asarray(Z, dtype=float))
    tail = hyperg_eigen(HypergeomSpec((-n / 2,), (a,)), -z)
    return math.exp(math.fsum(z)) * tail


def logpdf_scale_mixture_thm5(a: float, xi: float, upsilon: float, spec: HypergeomSpec,
                              params: EllipticalParams, X) -> float:
    """Normal scale mixture driven by a scalar inverted hypergeometric gamma-type law."""
    _bound("a", a, 0)
    _bound("xi", xi, 0)
    _require(upsilon >= 0, f"upsilon must be non-negative, got {upsilon:g}")
    _require(spec.p <= spec.q, f"the kernel {spec.p}F{spec.q} is not integrable; need p <= q")
    delta = quad_form(params, X)
    return _normal_mix_scalar(
        a, float(xi), float(upsilon), spec, float(np.trace(delta)),
        params.m * params.n, _scale_logdet(params),
    )


def check_thm2(a, b, xi, spec, m, n) -> None:
    _bound("a", a, (m - 1) / 2)
    if np.any(xi):
        if m != 1:
            raise UnsupportedCaseError("the compound with Xi != 0 is only evaluated for m = 1")
        _bound(f"b (with kernel degree bound k1 = {k_surrogate(spec, m)})",
               b, (m + n - 1) / 2 + k_surrogate(spec, m))
    else:
        _bound("b", b, (m + n - 1) / 2)


def _thm2_central(a, b, m, n, eigs) -> float:
    """log of beta_m[a',b']/beta_m[a,b] E[etr(-Delta Y/2)] with Y ~ BII_m(a', b')."""
    a2, b2 = a + n / 2, b - n / 2
    rank = _rank(eigs)
    if rank >= 2:
        raise UnsupportedCaseError(
            "the inverted-beta compound is evaluated only for rank(Delta) <= 1 (m = 1 or n = 1)"
        )
    log_e = 0.0
    if rank == 1:
        delta = float(eigs.max())
        b1 = b2 - (m - 1) / 2
        u = float(special.hyperu(a2, 1 - b1, delta / 2))
        log_e = float(special.gammaln(a2 + b1) - special.gammaln(b1)) + _log_positive(u, "hyperu")
    return _lb(m, a2, b2) - _lb(m, a, b) + log_e


def logpdf_compound_thm2(a: float, b: float, xi, spec: HypergeomSpec, params: EllipticalParams, X) -> float:
    """Matrix normal compounded with the inverted hypergeometric beta type II law."""
    m, n = params.m, params.n
    xi = _sym(xi, m, "Xi")
    check_thm2(a, b, xi, spec, m, n)
    eigs = _kernel_eigs(params, X)
    head = -m * n / 2 * LOG_2PI - _scale_logdet(params)
    if not np.any(xi):
        return head + _thm2_central(a, b, m, n, eigs)
    # m = 1: the degree-K kernel turns the mixture into a finite sum of
    # central mixtures with shape parameters (a + k, b - k)
    x = float(xi[0, 0])
    logs, signs = [], []
    coef = 1.0
    for k in range(k_surrogate(spec, 1) + 1):
        if k:
            coef *= math.prod(u + k - 1 for u in spec.upper)
            coef /= math.prod(v + k - 1 for v in spec.lower) * k
        w = coef * x ** k
        if w == 0:
            continue
        logs.append(math.log(abs(w)) + _lb(1, a + k, b - k) + _thm2_central(a + k, b - k, 1, n, eigs))
        signs.append(math.copysign(1.0, w))
    total, sign = special.logsumexp(logs, b=signs, return_sign=True)
    _require(sign > 0, "mixture weights sum to a non-positive value")
    return head + float(total) + _hg_beta2_norm_ln(a, b, xi, spec)


def check_thm3(form, alpha, a, b, c, m) -> None:
    check_gen_hg(form, alpha, a, b, c, m)


def _thm3_mixture_m1(form, alpha, a, b, c, xi, n, delta) -> float:
    """log E[y^{n/2} exp(-delta y / 2)] for y from the scalar generalised hypergeometric law."""
    const = gen_hg_const_ln(form, alpha, a, b, c, SpdMatrix([[xi]]))
    power = alpha + n / 2 - 1

    def log_f(y):
        if delta * y > 1e4:
            return -math.inf
        k = _gen_kernel(form, a, b, c, [xi * y])
        return power * math.log(y) - delta * y / 2 + (math.log(k) if k > 0 else -math.inf)

    return const + log_quad_halfline(log_f)[0]


def logpdf_compound_thm3(form: str, alpha: float, a: float, b: float, c: float, xi,
                         params: EllipticalParams, X, method: str = "auto",
                         truncation: Optional[TruncationPolicy] = None) -> float:
    """Matrix normal compounded with the inverted generalised hypergeometric law.

    ``method``: ``series`` sums the closed-form hypergeometric kernel,
    ``quadrature`` integrates the scalar mixture (``m = 1`` only), ``auto``
    uses quadrature at ``m = 1`` for the ``gauss`` form, whose closed-form
    3F1 kernel is only an asymptotic series, and the series otherwise.
    """
    xi = _spd(xi, "Xi")
    m, n = params.m, params.n
    check_thm3(form, alpha, a, b, c, m)
    eigs = _kernel_eigs(params, X)
    if _rank(eigs) < m or eigs.min() <= 0:
        raise DomainError("Delta is singular; this compound needs X - mu of full column rank (n >= m)")
    if method == "auto":
        method = "quadrature" if (m == 1 and form == "gauss") else "series"
    head = -m * n / 2 * LOG_2PI - _scale_logdet(params)
    if method == "quadrature":
        if m != 1:
            raise UnsupportedCaseError("mixture quadrature is available only for m = 1")
        return head + _thm3_mixture_m1(form, alpha, a, b, c, float(xi.array[0, 0]), n, float(eigs[0]))
    if method != "series":
        raise DomainError(f"unknown method {method!r}")
    s = alpha + n / 2
    delta = SpdMatrix(quad_form(params, X))
    z = np.clip(product_eigenvalues(2 * xi.array, SpdMatrix(delta.inverse)), 0, None)
    pol = truncation or TruncationPolicy()
    if form == "gauss":
        kern = hyperg_eigen(HypergeomSpec((a, b, s), (c,), pol), -z)
    else:
        kern = gauss_neg(b, s, c, z, pol)
    const = (
        m * alpha * math.log(2)
        + gen_hg_const_ln(form, alpha, a, b, c, xi)
        + _lg(m, s)
        - m * n / 2 * LOG_PI
        - _scale_logdet(params)
    )
    return const - s * delta.logdet + _log_positive(kern, "kernel series")


THM4_METHODS = ("auto", "direct", "euler", "pfaff")


def check_thm4(nu, a, b, m, n) -> None:
    _bound("nu", nu, m - 1)
    _bound("a", a, (m - 1) / 2)
    _bound("b", b, (m + n - 1) / 2)


def _thm4_expectation_ln(nu, a, b, m, n, eigs, method, pol) -> float:
    """log of beta_m[a',b']/beta_m[a,b] E[|I + Delta Y|^{-gamma}], Y ~ BII_m(a', b')."""
    a2, b2, g = a + n / 2, b - n / 2, (n + nu) / 2
    ratio = _lb(m, a2, b2) - _lb(m, a, b)
    rank = _rank(eigs)
    if rank == 0:
        return ratio
    if rank == 1 and m > 1 or m == 1:
        d = float(eigs.max())
        b1 = b2 - (m - 1) / 2
        C = a2 + b1 + g
        lead = _lb(1, a2, b1 + g) - _lb(1, a2, b1)
        if method == "euler":
            val = d ** b1 * special.hyp2f1(b1 + g, a2 + b1, C, 1 - d)
        else:
            val = special.hyp2f1(a2, g, C, 1 - d)
        return ratio + lead + _log_positive(float(val), "2F1")
    if rank < m:
        raise UnsupportedCaseError("Delta of rank between 2 and m - 1 is outside every convergent form")
    C = a + b + g
    lead = _lb(m, a2, b2 + g) - _lb(m, a2, b2)
    ld = float(np.sum(np.log(eigs)))
    direct_r = float(np.max(np.abs(1 - eigs)))
    pfaff_r = float(np.max(np.abs(1 - 1 / eigs)))
    if method == "auto":
        method = "direct" if direct_r <= pfaff_r else "pfaff"
    if method in ("direct", "euler"):
        if direct_r >= 1:
            raise DivergenceError(f"kernel argument I - Delta has spectral radius {direct_r:.4g} >= 1")
        if method == "direct":
            val = hyperg_eigen(HypergeomSpec((a2, g), (C,), pol), 1 - eigs)
        else:
            val = math.exp(b2 * ld) * hyperg_eigen(HypergeomSpec((b2 + g, a + b), (C,), pol), 1 - eigs)
    elif method == "pfaff":
        if pfaff_r >= 1:
            raise DivergenceError(f"kernel argument I - Delta^-1 has spectral radius {pfaff_r:.4g} >= 1")
        w = 1 - 1 / eigs
        if g - a2 >= a2 - g:
            val = math.exp(-a2 * ld) * hyperg_eigen(HypergeomSpec((a2, C - g), (C,), pol), w)
        else:
            val = math.exp(-g * ld) * hyperg_eigen(HypergeomSpec((g, C - a2), (C,), pol), w)
    else:
        raise DomainError(f"method must be one of {THM4_METHODS}")
    return ratio + lead + _log_positive(val, "2F1 series")


def logpdf_compound_thm4(nu: float, a: float, b: float, params: EllipticalParams, X,
                         method: str = "auto", truncation: Optional[TruncationPolicy] = None) -> float:
    """Matricvariate T compounded with the central inverted beta type II law."""
    m, n = params.m, params.n
    check_thm4(nu, a, b, m, n)
    eigs = _kernel_eigs(params, X)
    const = _lg(m, (n + nu) / 2) - m * n / 2 * LOG_PI - _lg(m, nu / 2) - _scale_logdet(params)
    return const + _thm4_expectation_ln(nu, a, b, m, n, eigs, method, truncation or TruncationPolicy())
