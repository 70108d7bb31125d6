"""Random generation for the special cases with exact constructions.

All samplers take a :class:`RngStream` (or a ``numpy.random.Generator``) and
a draw count, and return arrays with the draw index first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .matrixops import EllipticalParams, SpdMatrix


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream identified by ``(seed, stream)``.

    Streams with different ids are spawned from the same seed sequence and
    are statistically independent.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, stream: int) -> "RngStream":
        return RngStream(self.seed, stream)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngStream or numpy Generator")


def _chol(a, name):
    return (a if isinstance(a, SpdMatrix) else SpdMatrix(a, name)).chol


def _bartlett(df: float, m: int, g: np.random.Generator, size: int) -> np.ndarray:
    """Lower-triangular ``A`` with ``A A'`` Wishart(df, I)."""
    A = np.zeros((size, m, m))
    for i in range(m):
        A[:, i, i] = np.sqrt(g.chisquare(df - i, size))
        if i:
            A[:, i, :i] = g.standard_normal((size, i))
    return A


def sample_wishart(df: float, scale, rng, size: int) -> np.ndarray:
    """Wishart draws ``L A A' L'`` by the Bartlett decomposition (``scale = L L'``)."""
    L = _chol(scale, "scale")
    m = L.shape[0]
    if not df > m - 1:
        raise DomainError(f"Wishart degrees of freedom must exceed {m - 1}, got {df:g}")
    LA = L @ _bartlett(df, m, _gen(rng), size)
    W = LA @ np.swapaxes(LA, -1, -2)
    return (W + np.swapaxes(W, -1, -2)) / 2


def sample_gamma_matrix(a: float, xi, rng, size: int) -> np.ndarray:
    """Matrix gamma draws with density proportional to ``etr(-Xi Y) |Y|^{a-(m+1)/2}``."""
    xi = xi if isinstance(xi, SpdMatrix) else SpdMatrix(xi, "Xi")
    if not a > (xi.dim - 1) / 2:
        raise DomainError(f"a must exceed {(xi.dim - 1) / 2:g}, got {a:g}")
    return sample_wishart(2 * a, xi.inverse / 2, rng, size)


def sample_inv_hg_gamma_special(a: float, xi, rng, size: int) -> np.ndarray:
    """Inverted gamma-type draws ``P = Y^{-1}``; the hypergeometric factor is 1 (``Upsilon = 0``).

    With ``Y = T T'`` from the Bartlett factor, ``P = M' M`` for ``M = T^{-1}``,
    a Gram matrix, so no general inverse of a near-singular draw is formed.
    """
    xi = xi if isinstance(xi, SpdMatrix) else SpdMatrix(xi, "Xi")
    m = xi.dim
    if not a > (m - 1) / 2:
        raise DomainError(f"a must exceed {(m - 1) / 2:g}, got {a:g}")
    L = np.linalg.cholesky(xi.inverse / 2)
    T = L @ _bartlett(2 * a, m, _gen(rng), size)
    M = np.linalg.solve(T, np.broadcast_to(np.eye(m), T.shape))
    P = np.swapaxes(M, -1, -2) @ M
    return (P + np.swapaxes(P, -1, -2)) / 2


def sample_beta2(a: float, b: float, m: int, rng, size: int) -> np.ndarray:
    """Beta type II draws: ``Y = L^{-T} W1 L^{-1}`` with ``W2 = L L'``.

    ``W1`` and ``W2`` are independent matrix gamma draws with shapes ``a`` and
    ``b`` and unit scale.  ``L`` is the Bartlett factor of ``W2`` itself, so
    no Cholesky factorization of a near-singular draw is needed.
    """
    lo = (m - 1) / 2
    if not (a > lo and b > lo):
        raise DomainError(f"a and b must exceed {lo:g}, got a={a:g}, b={b:g}")
    g = _gen(rng)
    # unit-scale matrix gamma = Wishart(2a, I/2)
    A1 = _bartlett(2 * a, m, g, size) / np.sqrt(2)
    L = _bartlett(2 * b, m, g, size) / np.sqrt(2)
    M = np.linalg.solve(np.swapaxes(L, -1, -2), A1)  # L^{-T} A1
    Y = M @ np.swapaxes(M, -1, -2)
    return (Y + np.swapaxes(Y, -1, -2)) / 2


def sample_inv_hg_beta2_special(a: float, b: float, m: int, rng, size: int) -> np.ndarray:
    """Inverted beta type II draws (``Xi = 0``): density ``|P|^{b-(m+1)/2} |I+P|^{-(a+b)}``."""
    return sample_beta2(b, a, m, rng, size)


def sample_matrix_normal(params: EllipticalParams, rng, size: int, column_scale: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix normal draws ``mu + L_Theta Z R'`` where ``R R'`` is the column scale.

    ``column_scale`` may hold one ``m x m`` matrix per draw; it defaults to Sigma.
    """
    g = _gen(rng)
    n, m = params.n, params.m
    Z = g.standard_normal((size, n, m))
    left = params.theta.chol @ Z
    if column_scale is None:
        R = params.sigma.chol
    else:
        R = np.linalg.cholesky(column_scale)
    return params.mu + left @ np.swapaxes(R, -1, -2)


def sample_compound(mixing: Callable, conditional: Callable, rng, size: int) -> np.ndarray:
    """Draw ``P`` from ``mixing(rng, size)``, then ``X | P`` from ``conditional(P, rng)``.

    Both callables receive the same generator so one stream drives the pair.
    """
    g = _gen(rng)
    P = mixing(g, size)
    return conditional(P, g)


def normal_given_scale(params: EllipticalParams) -> Callable:
    """Conditional sampler for ``X | P ~ N(mu, Sigma^{1/2} P Sigma^{1/2}, Theta)``."""
    root = params.sigma.sqrt

    def draw(P, g):
        return sample_matrix_normal(params, g, P.shape[0], root @ P @ root)

    return draw


def t_given_scale(nu: float, params: EllipticalParams) -> Callable:
    """Conditional sampler for a matricvariate T with column scale ``Sigma^{1/2} P Sigma^{1/2}``."""
    root = params.sigma.sqrt
    m = params.m

    def draw(P, g):
        size = P.shape[0]
        S = sample_inv_hg_gamma_special(nu / 2, np.eye(m) / 2, g, size)
        scale = root @ P @ root
        L = np.linalg.cholesky(scale)
        inner = L @ S @ np.swapaxes(L, -1, -2)
        return sample_matrix_normal(params, g, size, (inner + np.swapaxes(inner, -1, -2)) / 2)

    return draw


def sample_matricvariate_t(nu: float, params: EllipticalParams, rng, size: int) -> np.ndarray:
    return t_given_scale(nu, params)(np.broadcast_to(np.eye(params.m), (size, params.m, params.m)), _gen(rng))


def sample_compound_thm1(a: float, xi, params: EllipticalParams, rng, size: int) -> np.ndarray:
    """Compound of the matrix normal with the ``Upsilon = 0`` inverted gamma-type law."""
    return sample_compound(
        lambda g, k: sample_inv_hg_gamma_special(a, xi, g, k), normal_given_scale(params), rng, size
    )


def sample_compound_thm2(a: float, b: float, params: EllipticalParams, rng, size: int) -> np.ndarray:
    """Compound of the matrix normal with the ``Xi = 0`` inverted beta type II law."""
    m = params.m
    return sample_compound(
        lambda g, k: sample_inv_hg_beta2_special(a, b, m, g, k), normal_given_scale(params), rng, size
    )


def sample_compound_thm4(nu: float, a: float, b: float, params: EllipticalParams, rng, size: int) -> np.ndarray:
    """Compound of the matricvariate T with the ``Xi = 0`` inverted beta type II law."""
    m = params.m
    return sample_compound(
        lambda g, k: sample_inv_hg_beta2_special(a, b, m, g, k), t_given_scale(nu, params), rng, size
    )


def sample_scale_mixture_thm5(a: float, xi: float, params: EllipticalParams, rng, size: int) -> np.ndarray:
    """Normal scale mixture with a scalar inverse-gamma mixing law (``upsilon = 0``)."""
    m = params.m

    def mixing(g, k):
        s = sample_inv_hg_gamma_special(a, [[xi]], g, k)
        return s * np.eye(m)

    return sample_compound(mixing, normal_given_scale(params), rng, size)
