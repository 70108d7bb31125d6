"""Integer partitions with a bounded number of parts."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Tuple


class Partition(tuple):
    """Immutable non-increasing tuple of positive parts.

    Trailing zeros are dropped, so ``Partition((2, 1, 0)) == Partition((2, 1))``.
    Being a tuple, a partition hashes and compares like one and can key
    coefficient tables directly.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, tuple(p for p in parts if p > 0))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def padded(self, m: int) -> Tuple[int, ...]:
        if len(self) > m:
            raise ValueError(f"{self} has more than {m} parts")
        return tuple(self) + (0,) * (m - len(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def _generate(k: int, max_parts: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _generate(k - first, max_parts - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(k: int, max_parts: int) -> Tuple[Partition, ...]:
    """All partitions of ``k`` with at most ``max_parts`` parts.

    Output is in reverse-lexicographic order, largest first part first.
    ``k == 0`` gives the single empty partition.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if max_parts < 1:
        raise ValueError("max_parts must be at least 1")
    return tuple(Partition(p) for p in _generate(k, max_parts, k))


@lru_cache(maxsize=None)
def partition_count(k: int, max_parts: int) -> int:
    """Number of partitions of ``k`` into at most ``max_parts`` parts."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if max_parts < 1:
        raise ValueError("max_parts must be at least 1")
    # p(k, j) = p(k, j-1) + p(k-j, j), parts bounded by j via conjugation
    table = [[0] * (max_parts + 1) for _ in range(k + 1)]
    for j in range(max_parts + 1):
        table[0][j] = 1
    for n in range(1, k + 1):
        for j in range(1, max_parts + 1):
            table[n][j] = table[n][j - 1] + (table[n - j][j] if n >= j else 0)
    return table[k][max_parts]


def dominates(mu: Partition, lam: Partition) -> bool:
    """True when ``mu`` dominates ``lam`` (same weight, partial sums >=)."""
    if mu.weight != lam.weight:
        return False
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu[i] if i < len(mu) else 0
        s_lam += lam[i] if i < len(lam) else 0
        if s_mu < s_lam:
            return False
    return True
