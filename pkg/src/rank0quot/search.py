"""Vectorised searches for integer pairs (a, b) at which a binary form takes square values.

Candidates are sieved with square-residue tables (looked up by ``(a mod m, b mod m)``)
and the survivors are checked exactly with :func:`math.isqrt`.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

_MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@lru_cache(maxsize=None)
def _squares(m: int) -> np.ndarray:
    table = np.zeros(m, dtype=bool)
    table[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return table


def _residue_table(coeffs: tuple[int, ...], m: int) -> np.ndarray:
    """Boolean m x m table: is F(a, b) a square mod m, indexed by (a mod m, b mod m)."""
    d = len(coeffs) - 1
    a = np.arange(m, dtype=np.int64)[:, None]
    b = np.arange(m, dtype=np.int64)[None, :]
    total = np.zeros((m, m), dtype=np.int64)
    for i, c in enumerate(coeffs):
        term = np.full((m, m), c % m, dtype=np.int64)
        for _ in range(i):
            term = term * a % m
        for _ in range(d - i):
            term = term * b % m
        total = (total + term) % m
    return _squares(m)[total]


class SquareSieve:
    """Square-value sieve for one integral binary form (coefficient i multiplies a^i b^(d-i))."""

    def __init__(self, coeffs: Sequence[int]):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.tables = [(m, _residue_table(self.coeffs, m)) for m in _MODULI]

    def value(self, a: int, b: int) -> int:
        d = len(self.coeffs) - 1
        return sum(c * a ** i * b ** (d - i) for i, c in enumerate(self.coeffs))

    def hits(self, a: np.ndarray, b: np.ndarray) -> Iterator[tuple[int, int, int]]:
        """Yield ``(a, b, isqrt(F(a, b)))`` for every pair where F(a, b) is a perfect square."""
        idx = np.arange(a.size)
        for m, table in self.tables:
            keep = table[a[idx] % m, b[idx] % m]
            idx = idx[keep]
            if idx.size == 0:
                return
        for k in idx:
            ai, bi = int(a[k]), int(b[k])
            v = self.value(ai, bi)
            if v >= 0:
                r = math.isqrt(v)
                if r * r == v:
                    yield ai, bi, r


def coprime_pairs(a_bound: int, b_values: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    """All (a, b) with |a| <= a_bound, b in b_values and gcd(a, b) = 1, b-major order."""
    a = np.arange(-a_bound, a_bound + 1, dtype=np.int64)
    A, B = [], []
    for b in b_values:
        mask = np.gcd(a, b) == 1
        A.append(a[mask])
        B.append(np.full(int(mask.sum()), b, dtype=np.int64))
    if not A:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(A), np.concatenate(B)


def square_points(coeffs: Sequence[int], a_bound: int, b_values: Iterable[int],
                  block: int = 2_000_000) -> Iterator[tuple[int, int, int]]:
    """Stream square hits over coprime pairs, processing ``b_values`` in order."""
    sieve = SquareSieve(coeffs)
    batch: list[int] = []
    per_b = 2 * a_bound + 1
    for b in b_values:
        batch.append(b)
        if len(batch) * per_b >= block:
            yield from sieve.hits(*coprime_pairs(a_bound, batch))
            batch = []
    if batch:
        yield from sieve.hits(*coprime_pairs(a_bound, batch))


def smallest_square_point(coeffs: Sequence[int], height_bound: int,
                          stages: Sequence[int] = (10, 100, 1000)) -> tuple[int, int, int] | None:
    """A hit (a, b, r) of least height max(|a|, b) with b >= 1, or None up to ``height_bound``."""
    for H in [s for s in stages if s < height_bound] + [height_bound]:
        best = None
        for a, b, r in square_points(coeffs, H, range(1, H + 1)):
            key = (max(abs(a), b), b, a)
            if best is None or key < best[0]:
                best = (key, (a, b, r))
        if best is not None:
            return best[1]
    return None
