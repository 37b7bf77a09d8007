"""Exact combinatorial numbers used throughout the closed forms.

Everything here is arbitrary-precision integer (or ``fractions.Fraction``)
arithmetic.  The Stirling triangles are memoized module-wide, so repeated
queries after the first are dictionary lookups.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

__all__ = [
    "stirling_first",
    "stirling_second",
    "lah",
    "bell",
    "ascending_factorial",
]


@lru_cache(maxsize=None)
def stirling_first(i: int, j: int) -> int:
    """Unsigned Stirling number of the first kind ``[i, j]``.

    Counts permutations of an ``i``-element set with exactly ``j`` cycles.
    Computed by the triangle ``[i, j] = [i-1, j-1] + (i-1) [i-1, j]``.
    """
    if i < 0 or j < 0:
        raise ValueError("Stirling indices must be nonnegative")
    if i == 0:
        return 1 if j == 0 else 0
    if j == 0 or j > i:
        return 0
    return stirling_first(i - 1, j - 1) + (i - 1) * stirling_first(i - 1, j)


@lru_cache(maxsize=None)
def stirling_second(i: int, j: int) -> int:
    """Stirling number of the second kind ``{i, j}``.

    Counts partitions of an ``i``-element set into exactly ``j`` blocks.
    Computed by the triangle ``{i, j} = {i-1, j-1} + j {i-1, j}``.
    """
    if i < 0 or j < 0:
        raise ValueError("Stirling indices must be nonnegative")
    if i == 0:
        return 1 if j == 0 else 0
    if j == 0 or j > i:
        return 0
    return stirling_second(i - 1, j - 1) + j * stirling_second(i - 1, j)


def lah(i: int, j: int) -> int:
    """Lah number ``L(i, j) = C(i-1, j-1) * i! / j!``.

    Counts partitions of an ``i``-element set into ``j`` nonempty linearly
    ordered blocks.  Zero for ``j > i``.
    """
    if i < 1 or j < 1:
        raise ValueError("Lah indices must be positive")
    if j > i:
        return 0
    return comb(i - 1, j - 1) * (factorial(i) // factorial(j))


def bell(n: int) -> int:
    """Bell number: the number of set partitions of an ``n``-element set."""
    if n < 0:
        raise ValueError("Bell index must be nonnegative")
    return sum(stirling_second(n, j) for j in range(n + 1))


def ascending_factorial(x, k: int):
    """Ascending factorial ``x (x+1) ... (x+k-1)``; the empty product is 1.

    Exact for int or Fraction ``x``; works elementwise on floats too.
    """
    if k < 0:
        raise ValueError("ascending factorial length must be nonnegative")
    out = 1
    for m in range(k):
        out = out * (x + m)
    return out
