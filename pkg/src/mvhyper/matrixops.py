"""Symmetric / SPD matrix helpers and the quadratic-form kernel.

Shape convention: ``X`` and ``mu`` are ``n x m``; ``Sigma`` is ``m x m``;
``Theta`` is ``n x n``.  The kernel ``(X - mu)' Theta^{-1} (X - mu)`` is then
``m x m`` and conforms with ``Sigma``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import linalg

from .errors import DimensionError, DomainError

_SYM_RTOL = 1e-9


def _as_square(a, name="matrix") -> np.ndarray:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def symmetrize(a) -> np.ndarray:
    a = _as_square(a)
    scale = max(np.abs(a).max(), 1.0)
    if np.abs(a - a.T).max() > _SYM_RTOL * scale:
        raise DomainError("matrix is not symmetric")
    return (a + a.T) / 2


class SpdMatrix:
    """Symmetric positive-definite matrix with cached factorizations.

    Construction runs a Cholesky factorization; failure raises
    :class:`DomainError` naming the smallest eigenvalue.  Nothing is
    regularized.
    """

    def __init__(self, a, name: str = "matrix"):
        if isinstance(a, SpdMatrix):
            a = a.array
        self.name = name
        self.array = symmetrize(_as_square(a, name))
        self.array.setflags(write=False)
        try:
            self.chol = np.linalg.cholesky(self.array)
        except np.linalg.LinAlgError:
            smallest = np.linalg.eigvalsh(self.array).min()
            raise DomainError(
                f"{name} is not positive definite (smallest eigenvalue {smallest:.3g})"
            ) from None

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @cached_property
    def logdet(self) -> float:
        return float(2 * np.log(np.diag(self.chol)).sum())

    @cached_property
    def _eigh(self):
        w, v = np.linalg.eigh(self.array)
        return w[::-1], v[:, ::-1]

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return self._eigh[0]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = linalg.cho_solve((self.chol, True), np.eye(self.dim))
        return (inv + inv.T) / 2

    @cached_property
    def sqrt(self) -> np.ndarray:
        w, v = self._eigh
        root = (v * np.sqrt(w)) @ v.T
        return (root + root.T) / 2

    @cached_property
    def inv_sqrt(self) -> np.ndarray:
        w, v = self._eigh
        root = (v / np.sqrt(w)) @ v.T
        return (root + root.T) / 2

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.array, dtype=dtype)

    def __repr__(self) -> str:
        return f"SpdMatrix({self.array.tolist()!r})"


def spd_sqrt(a) -> SpdMatrix:
    """Symmetric positive-definite square root."""
    return SpdMatrix(SpdMatrix(a).sqrt)


def spd_inverse(a) -> SpdMatrix:
    return SpdMatrix(SpdMatrix(a).inverse)


def logdet(a) -> float:
    return SpdMatrix(a).logdet


def eigenvalues(a) -> np.ndarray:
    """Eigenvalues of an SPD matrix, sorted descending."""
    return SpdMatrix(a).eigenvalues


def product_eigenvalues(a, b) -> np.ndarray:
    """Eigenvalues of ``a @ b`` for symmetric ``a`` and SPD ``b``, descending.

    They coincide with those of ``L' a L`` where ``b = L L'``, which is symmetric.
    """
    b = b if isinstance(b, SpdMatrix) else SpdMatrix(b)
    a = symmetrize(a)
    if a.shape != b.array.shape:
        raise DimensionError(f"shapes {a.shape} and {b.array.shape} do not conform")
    s = b.chol.T @ a @ b.chol
    return np.linalg.eigvalsh((s + s.T) / 2)[::-1]


@dataclass(frozen=True)
class EllipticalParams:
    """Location ``mu`` (n x m), column scale ``sigma`` (m x m), row scale ``theta`` (n x n)."""

    mu: np.ndarray
    sigma: SpdMatrix
    theta: SpdMatrix

    def __post_init__(self):
        mu = np.atleast_2d(np.asarray(self.mu, dtype=float))
        sigma = self.sigma if isinstance(self.sigma, SpdMatrix) else SpdMatrix(self.sigma, "Sigma")
        theta = self.theta if isinstance(self.theta, SpdMatrix) else SpdMatrix(self.theta, "Theta")
        if mu.shape != (theta.dim, sigma.dim):
            raise DimensionError(
                f"mu has shape {mu.shape}; expected (n, m) = ({theta.dim}, {sigma.dim})"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "theta", theta)

    @property
    def m(self) -> int:
        return self.sigma.dim

    @property
    def n(self) -> int:
        return self.theta.dim

    @classmethod
    def standard(cls, n: int, m: int) -> "EllipticalParams":
        return cls(np.zeros((n, m)), np.eye(m), np.eye(n))

    def check_point(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim < 2:
            X = X.reshape(self.n, self.m)
        if X.shape != self.mu.shape:
            raise DimensionError(f"X has shape {X.shape}; expected {self.mu.shape}")
        return X


def quad_form(params: EllipticalParams, X) -> np.ndarray:
    """``Sigma^{-1/2} (X-mu)' Theta^{-1} (X-mu) Sigma^{-1/2}`` as a symmetric PSD array."""
    X = params.check_point(X)
    D = X - params.mu
    half = linalg.solve_triangular(params.theta.chol, D, lower=True)  # L^{-1} D
    inner = half.T @ half
    s = params.sigma.inv_sqrt
    out = s @ inner @ s
    return (out + out.T) / 2


def read_matrix(path) -> np.ndarray:
    """Read a dense matrix from whitespace-delimited text or a JSON array of rows."""
    text = Path(path).read_text()
    return parse_matrix(text)


def parse_matrix(text: str) -> np.ndarray:
    stripped = text.strip()
    if stripped.startswith("["):
        return np.atleast_2d(np.asarray(json.loads(stripped), dtype=float))
    rows = [line.split() for line in stripped.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return np.atleast_2d(np.asarray(rows, dtype=float))
