"""Exact combinatorial kernels: binomials, multinomials, falling powers,
Stirling numbers of the second kind and their associated (blocks >= 2)
variant, and compositions with a minimum part size.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterator, Sequence, overload

from . import _kernels
from .poly import ONE, Poly

__all__ = [
    "Composition",
    "StirlingTable",
    "assoc_stirling2",
    "binom",
    "compositions",
    "compositions_min2",
    "falling_power",
    "multinomial",
    "ordered_partition_count",
    "stirling2",
]


@overload
def binom(n: int, k: int) -> int: ...
@overload
def binom(n: Poly, k: int) -> Poly: ...


def binom(n, k):
    """Binomial coefficient; with a Poly argument returns ``n^(k falling)/k!``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(n, Poly):
        return falling_power(n, k).scale(Fraction(1, factorial(k)))
    if n < 0:
        raise ValueError("numeric n must be non-negative")
    return comb(n, k)


def multinomial(d: int, parts: Sequence[int]) -> int:
    """``d! / prod(parts!)`` if the parts are non-negative and sum to d, else 0."""
    if sum(parts) != d or any(x < 0 for x in parts):
        return 0
    return factorial(d) // prod(factorial(x) for x in parts)


@overload
def falling_power(x: int, d: int) -> int: ...
@overload
def falling_power(x: Poly, d: int) -> Poly: ...


def falling_power(x, d):
    """``x (x-1) ... (x-d+1)``; the empty product for d = 0 is 1."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if isinstance(x, Poly):
        out = ONE
        for i in range(d):
            out = out * (x - i)
        return out
    out = 1
    for i in range(d):
        out *= x - i
    return out


class StirlingTable:
    """Memo table of partition counts with a minimum block size.

    ``min_block=1`` gives the Stirling numbers of the second kind,
    ``min_block=2`` the associated Stirling numbers. The table grows by
    doubling under a lock; lookups of already-built rows need no lock since
    the row list is replaced, never mutated.
    """

    def __init__(self, min_block: int, initial: int = 32):
        self.min_block = min_block
        self._lock = threading.Lock()
        self._rows = _kernels.stirling_table(initial, min_block)

    def __call__(self, m: int, j: int) -> int:
        if m < 0 or j < 0:
            raise ValueError("arguments must be non-negative")
        if j > m:
            return 0
        rows = self._rows
        if m >= len(rows):
            with self._lock:
                if m >= len(self._rows):
                    self._rows = _kernels.stirling_table(max(m, 2 * len(self._rows)), self.min_block)
                rows = self._rows
        return rows[m][j]

    def row(self, m: int) -> list[int]:
        self(m, 0)
        return list(self._rows[m])


_STIRLING2 = StirlingTable(1)
_ASSOC_STIRLING2 = StirlingTable(2)


def stirling2(m: int, j: int) -> int:
    """Number of partitions of an m-set into j non-empty blocks."""
    return _STIRLING2(m, j)


def assoc_stirling2(m: int, j: int) -> int:
    """Number of partitions of an m-set into j blocks of size at least 2."""
    return _ASSOC_STIRLING2(m, j)


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)


def compositions(d: int, k: int, min_part: int = 1) -> Iterator[Composition]:
    """Ordered k-tuples of parts >= min_part summing to d, in lexicographic order."""
    if k < 0 or d < 0:
        return
    if k == 0:
        if d == 0:
            yield Composition(())
        return
    spare = d - k * min_part
    if spare < 0:
        return

    def rec(prefix: tuple[int, ...], left: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield prefix + (left + min_part,)
            return
        for extra in range(left + 1):
            yield from rec(prefix + (extra + min_part,), left - extra, slots - 1)

    for parts in rec((), spare, k):
        yield Composition(parts)


def compositions_min2(d: int, k: int) -> Iterator[Composition]:
    return compositions(d, k, min_part=2)


def ordered_partition_count(d: int, k: int, min_part: int = 1) -> int:
    """Sum of multinomials over compositions; counts labelled set partitions."""
    return sum(multinomial(d, c.parts) for c in compositions(d, k, min_part))
