"""
Brute-force t-core counting from Young diagrams.

This is the ground truth the closed formulas and eta expansions are checked
against, so it deliberately avoids generating functions: cores are found by
enumerating every partition and inspecting its hook numbers.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "BudgetExceeded",
    "Partition",
    "DEFAULT_ENUMERATION_CAP",
    "partitions",
    "hook_numbers",
    "is_t_core",
    "count_t_cores",
    "core_counts",
    "tuple_counts",
    "count_tuples",
]

DEFAULT_ENUMERATION_CAP = 40


class BudgetExceeded(ValueError):
    """Requested n is above the enumeration cap."""


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive: %r" % (parts,))
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be weakly decreasing: %r" % (parts,))
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __repr__(self):
        return "Partition(%s)" % list(self)


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of n, largest part first, in reverse lexicographic order."""
    if largest is None:
        largest = n

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    for p in gen(n, largest):
        yield Partition(p)


def hook_numbers(p: Partition) -> Counter:
    """Multiset of hook lengths, one per cell of the Young diagram."""
    conj = p.conjugate()
    hooks = Counter()
    for i, row in enumerate(p):
        for j in range(row):
            hooks[row - j + conj[j] - i - 1] += 1
    return hooks


def is_t_core(p: Partition, t: int) -> bool:
    if t < 2:
        raise ValueError("t must be at least 2, got %r" % (t,))
    return all(h % t for h in hook_numbers(p))


def _check_cap(n, cap):
    if cap is None:
        cap = DEFAULT_ENUMERATION_CAP
    if n > cap:
        raise BudgetExceeded("n = %d exceeds the enumeration cap %d" % (n, cap))


@lru_cache(maxsize=None)
def _count(n, t):
    return sum(1 for p in partitions(n) if is_t_core(p, t))


def count_t_cores(n: int, t: int, cap: int | None = None) -> int:
    """Number of t-core partitions of n by exhaustive enumeration."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if t < 2:
        raise ValueError("t must be at least 2, got %r" % (t,))
    _check_cap(n, cap)
    return _count(n, t)


def core_counts(n_max: int, t: int, cap: int | None = None) -> list[int]:
    return [count_t_cores(n, t, cap) for n in range(n_max + 1)]


def tuple_counts(n_max: int, t: int, k: int, cap: int | None = None) -> list[int]:
    """[A_{t,k}(0), ..., A_{t,k}(n_max)] from enumerated core counts.

    The single-core counts come from enumeration; the k-fold convolution is
    done on those numbers rather than by listing the tuples.
    """
    if k < 1:
        raise ValueError("k must be at least 1, got %r" % (k,))
    base = core_counts(n_max, t, cap)
    acc = base
    for _ in range(k - 1):
        acc = [sum(base[m] * acc[i - m] for m in range(i + 1)) for i in range(n_max + 1)]
    return acc


def count_tuples(n: int, t: int, k: int, cap: int | None = None) -> int:
    """Number of k-tuples of t-cores with total weight n."""
    return tuple_counts(n, t, k, cap)[n]
