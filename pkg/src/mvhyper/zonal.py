"""Zonal polynomials of a real symmetric matrix, evaluated from its eigenvalues.

Each ``C_kappa`` is expanded over the monomial symmetric functions ``m_lambda``.
The expansion shape comes from James' recurrence for Jack polynomials at
parameter 2; the overall scale of each ``C_kappa`` is then fixed so that the
degree-``k`` zonals sum to ``(tr Y)^k``.  Coefficients are exact rationals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import ResourceError
from .partitions import Partition, dominates, enumerate_partitions

DEFAULT_CEILING = 40
TABLE_DIR_ENV = "MVHYPER_TABLE_DIR"
_FORMAT_TAG = "mvhyper-zonal-table v1"


def _rho(parts: Sequence[int]) -> int:
    return sum(k * (k - i - 1) for i, k in enumerate(parts))


def _multinomial(parts: Sequence[int]) -> int:
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


def _shape(kappa: Partition, lambdas: Tuple[Partition, ...], m: int) -> Dict[Partition, Fraction]:
    """Monomial coefficients of the Jack(2) polynomial of ``kappa``, leading term 1."""
    coef: Dict[Partition, Fraction] = {kappa: Fraction(1)}
    rho_k = _rho(kappa)
    for lam in lambdas:
        if lam == kappa or not dominates(kappa, lam):
            continue
        parts = lam.padded(m)
        total = Fraction(0)
        for j in range(m):
            lj = parts[j]
            if lj == 0:
                break
            for i in range(j):
                li = parts[i]
                for t in range(1, lj + 1):
                    moved = list(parts)
                    moved[i] = li + t
                    moved[j] = lj - t
                    mu = Partition(sorted(moved, reverse=True))
                    c_mu = coef.get(mu)
                    if c_mu:
                        total += (li - lj + 2 * t) * c_mu
        coef[lam] = total / (rho_k - _rho(parts))
    return coef


@lru_cache(maxsize=None)
def _degree_coefficients(k: int, m: int) -> Tuple[Tuple[Partition, Dict[Partition, Fraction]], ...]:
    lambdas = enumerate_partitions(k, m)
    shapes = {kappa: _shape(kappa, lambdas, m) for kappa in lambdas}
    # reverse-lex order is a linear extension of dominance, so the
    # sum identity is triangular in it
    scale: Dict[Partition, Fraction] = {}
    for lam in lambdas:
        acc = Fraction(_multinomial(lam))
        for kappa, s in scale.items():
            acc -= s * shapes[kappa].get(lam, 0)
        scale[lam] = acc
    return tuple(
        (kappa, {lam: scale[kappa] * c for lam, c in shapes[kappa].items() if c})
        for kappa in lambdas
    )


@dataclass(frozen=True)
class _DegreeBlock:
    kappas: Tuple[Partition, ...]
    lambdas: Tuple[Partition, ...]
    matrix: np.ndarray  # (n_kappa, n_lambda) float coefficients
    exponents: Tuple[np.ndarray, ...]  # distinct permutations of each padded lambda


@dataclass(frozen=True)
class ZonalTable:
    """Exact monomial expansions of every ``C_kappa`` up to ``max_degree``."""

    max_degree: int
    max_parts: int
    coefficients: Dict[Partition, Dict[Partition, Fraction]] = field(repr=False)
    _blocks: Tuple[_DegreeBlock, ...] = field(repr=False, compare=False)

    def __contains__(self, kappa) -> bool:
        return Partition(kappa) in self.coefficients

    def block(self, k: int) -> _DegreeBlock:
        if k > self.max_degree:
            raise KeyError(f"degree {k} exceeds table degree {self.max_degree}")
        return self._blocks[k]

    def degree_values(self, k: int, eigenvalues) -> np.ndarray:
        """``C_kappa`` for every ``kappa`` of weight ``k``; shape ``(..., n_kappa)``."""
        x = np.asarray(eigenvalues, dtype=float)
        if x.shape[-1] > self.max_parts:
            raise ValueError(
                f"table built for {self.max_parts} variables, got {x.shape[-1]}"
            )
        blk = self.block(k)
        monos = _monomials(x, blk, self.max_parts)
        return monos @ blk.matrix.T

    def exact_degree_values(self, k: int, eigenvalues) -> List[Fraction]:
        """Like :meth:`degree_values` for one point, in exact rational arithmetic.

        Each float eigenvalue is taken at its exact binary value, so
        cancellation-prone arguments can be checked without rounding.
        """
        x = [Fraction(float(v)) for v in np.ravel(eigenvalues)]
        m = len(x)
        if m > self.max_parts:
            raise ValueError(f"table built for {self.max_parts} variables, got {m}")
        blk = self.block(k)
        monos = []
        for lam, exps in zip(blk.lambdas, blk.exponents):
            total = Fraction(0)
            if len(lam) <= m:
                for row in exps:
                    if any(row[m:]):
                        continue
                    term = Fraction(1)
                    for xi, e in zip(x, row[:m]):
                        term *= xi ** int(e)
                    total += term
            monos.append(total)
        return [
            sum((self.coefficients[kap].get(lam, 0) * mono for lam, mono in zip(blk.lambdas, monos)), Fraction(0))
            for kap in blk.kappas
        ]


def _monomials(x: np.ndarray, blk: _DegreeBlock, m_table: int) -> np.ndarray:
    m = x.shape[-1]
    out = np.zeros(x.shape[:-1] + (len(blk.lambdas),))
    kmax = max((lam[0] for lam in blk.lambdas if lam), default=0)
    powers = x[..., :, None] ** np.arange(kmax + 1)  # (..., m, kmax+1)
    cols = np.arange(m)
    for idx, (lam, exps) in enumerate(zip(blk.lambdas, blk.exponents)):
        if len(lam) > m:
            continue
        if m < m_table:
            # fewer variables than the table: only placements inside the first m survive
            exps = exps[np.all(exps[:, m:] == 0, axis=1), :m]
        out[..., idx] = powers[..., cols, exps].prod(axis=-1).sum(axis=-1)
    return out


def _exponent_rows(lam: Partition, m: int) -> np.ndarray:
    padded = lam.padded(m)
    return np.array(sorted(set(permutations(padded))), dtype=int).reshape(-1, m)


def build_zonal_table(max_degree: int, max_parts: int, ceiling: int = DEFAULT_CEILING) -> ZonalTable:
    """Build (or fetch from the in-process cache) the table for ``(K, m)``."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if max_parts < 1:
        raise ValueError("max_parts must be at least 1")
    if max_degree > ceiling:
        raise ResourceError(f"zonal table degree {max_degree} exceeds ceiling {ceiling}")
    return _build(max_degree, max_parts)


@lru_cache(maxsize=None)
def _build(max_degree: int, max_parts: int) -> ZonalTable:
    coefficients = _load_cached(max_degree, max_parts)
    if coefficients is None:
        coefficients = {}
        for k in range(max_degree + 1):
            for kappa, row in _degree_coefficients(k, max_parts):
                coefficients[kappa] = row
        _store_cached(max_degree, max_parts, coefficients)
    return _assemble(max_degree, max_parts, coefficients)


def _assemble(K: int, m: int, coefficients) -> ZonalTable:
    blocks = []
    for k in range(K + 1):
        kappas = enumerate_partitions(k, m)
        matrix = np.array(
            [[float(coefficients[kap].get(lam, 0)) for lam in kappas] for kap in kappas]
        ).reshape(len(kappas), len(kappas))
        exps = tuple(_exponent_rows(lam, m) for lam in kappas)
        blocks.append(_DegreeBlock(kappas, kappas, matrix, exps))
    return ZonalTable(K, m, coefficients, tuple(blocks))


def zonal_eval(table: ZonalTable, kappa, eigenvalues) -> float:
    """``C_kappa(diag(eigenvalues))``."""
    kappa = Partition(kappa)
    if kappa.weight > table.max_degree or kappa not in table.coefficients:
        raise KeyError(f"{kappa} is not in the table (degree {table.max_degree})")
    x = np.asarray(eigenvalues, dtype=float).ravel()
    if len(kappa) > len(x):
        return 0.0
    blk = table.block(kappa.weight)
    return float(table.degree_values(kappa.weight, x)[blk.kappas.index(kappa)])


# -- textual dump / load -------------------------------------------------------

def _fmt_part(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p) if p else "-"


def _parse_part(s: str) -> Partition:
    return Partition(()) if s == "-" else Partition(int(x) for x in s.split(","))


def dump_table(table: ZonalTable, path) -> None:
    """Write one line per partition: ``kappa | lambda=coef ...`` with exact rationals."""
    lines = [f"# {_FORMAT_TAG} max_degree={table.max_degree} max_parts={table.max_parts}"]
    for kappa, row in table.coefficients.items():
        terms = " ".join(f"{_fmt_part(lam)}={c}" for lam, c in row.items())
        lines.append(f"{_fmt_part(kappa)} | {terms}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_table(path) -> ZonalTable:
    text = Path(path).read_text().splitlines()
    header = text[0]
    if _FORMAT_TAG not in header:
        raise ValueError(f"{path}: not a zonal table dump")
    fields = dict(tok.split("=") for tok in header.split() if "=" in tok)
    K, m = int(fields["max_degree"]), int(fields["max_parts"])
    return _assemble(K, m, _parse_lines(text[1:]))


def _parse_lines(lines: List[str]) -> Dict[Partition, Dict[Partition, Fraction]]:
    out: Dict[Partition, Dict[Partition, Fraction]] = {}
    for line in lines:
        if not line.strip():
            continue
        head, _, rest = line.partition("|")
        row = {}
        for tok in rest.split():
            lam, _, c = tok.partition("=")
            row[_parse_part(lam)] = Fraction(c)
        out[_parse_part(head.strip())] = row
    return out


def _cache_path(K: int, m: int):
    root = os.environ.get(TABLE_DIR_ENV)
    if not root:
        return None
    return Path(root) / f"zonal_K{K}_m{m}.txt"


def _load_cached(K: int, m: int):
    path = _cache_path(K, m)
    if path is None or not path.exists():
        return None
    lines = path.read_text().splitlines()
    if not lines or _FORMAT_TAG not in lines[0]:
        return None
    return _parse_lines(lines[1:])


def _store_cached(K: int, m: int, coefficients) -> None:
    path = _cache_path(K, m)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {_FORMAT_TAG} max_degree={K} max_parts={m}"]
    for kappa, row in coefficients.items():
        lines.append(f"{_fmt_part(kappa)} | " + " ".join(f"{_fmt_part(l)}={c}" for l, c in row.items()))
    path.write_text("\n".join(lines) + "\n")
