"""Sparse square matrices over exact rationals.

``RatMatrix`` stores a dict of sparse rows of ``fractions.Fraction`` entries;
zero entries are never stored, so equality, identity tests and products are
exact.  ``TriMatrix`` ties a matrix to a ``PartitionLattice`` and is the
carrier for generator and eigenvector matrices, whose support lives on
refinement-comparable pairs (hence upper triangular in the lattice's linear
extension).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .partitions import PartitionLattice

__all__ = ["RatMatrix", "TriMatrix"]

_ZERO = Fraction(0)


class RatMatrix:
    """Square sparse matrix with Fraction entries (dict-of-rows storage)."""

    __slots__ = ("size", "_rows")

    def __init__(self, size: int):
        if size < 0:
            raise ValueError("matrix size must be nonnegative")
        self.size = size
        self._rows: dict[int, dict[int, Fraction]] = {}

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        out = cls(size)
        for i in range(size):
            out._rows[i] = {i: Fraction(1)}
        return out

    def _check_index(self, i: int, j: int) -> None:
        if not (0 <= i < self.size and 0 <= j < self.size):
            raise IndexError(f"index ({i}, {j}) outside {self.size}x{self.size}")

    def set(self, i: int, j: int, value) -> None:
        self._check_index(i, j)
        value = Fraction(value)
        row = self._rows.get(i)
        if value == 0:
            if row is not None:
                row.pop(j, None)
                if not row:
                    del self._rows[i]
            return
        if row is None:
            row = self._rows[i] = {}
        row[j] = value

    def get(self, i: int, j: int) -> Fraction:
        self._check_index(i, j)
        row = self._rows.get(i)
        if row is None:
            return _ZERO
        return row.get(j, _ZERO)

    def nonzeros(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (row, col, value) sorted by (row, col)."""
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._rows.get(i, {}))

    def row_sum(self, i: int) -> Fraction:
        return sum(self._rows.get(i, {}).values(), _ZERO)

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.size != other.size:
            raise ValueError("matrix sizes differ")
        out = RatMatrix(self.size)
        orows = other._rows
        for i, row in self._rows.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                orow = orows.get(k)
                if orow is None:
                    continue
                for j, b in orow.items():
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            cleaned = {j: v for j, v in acc.items() if v != 0}
            if cleaned:
                out._rows[i] = cleaned
        return out

    def scaled_cols(self, diag: Sequence[Fraction]) -> "RatMatrix":
        """Right-multiplication by diag(d): entry (i, j) scaled by d[j]."""
        if len(diag) != self.size:
            raise ValueError("diagonal length differs from matrix size")
        out = RatMatrix(self.size)
        for i, row in self._rows.items():
            cleaned = {}
            for j, v in row.items():
                w = v * diag[j]
                if w != 0:
                    cleaned[j] = w
            if cleaned:
                out._rows[i] = cleaned
        return out

    def scaled_rows(self, diag: Sequence[Fraction]) -> "RatMatrix":
        """Left-multiplication by diag(d): entry (i, j) scaled by d[i]."""
        if len(diag) != self.size:
            raise ValueError("diagonal length differs from matrix size")
        out = RatMatrix(self.size)
        for i, row in self._rows.items():
            d = diag[i]
            if d == 0:
                continue
            out._rows[i] = {j: v * d for j, v in row.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.size == other.size and self._rows == other._rows

    def __hash__(self):
        raise TypeError("RatMatrix is mutable and unhashable")

    def is_identity(self) -> bool:
        if len(self._rows) != self.size:
            return False
        return all(row == {i: 1} for i, row in self._rows.items())

    def is_upper(self) -> bool:
        return all(i <= j for i, j, _ in self.nonzeros())

    def is_lower(self) -> bool:
        return all(i >= j for i, j, _ in self.nonzeros())

    def to_float(self) -> np.ndarray:
        out = np.zeros((self.size, self.size))
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i, j] = float(v)
        return out

    def __repr__(self) -> str:
        return f"<RatMatrix {self.size}x{self.size}, {self.nnz()} nonzero>"


class TriMatrix(RatMatrix):
    """A RatMatrix indexed by a partition lattice.

    The intended support is refinement-comparable pairs (π, ρ) with π ≤ ρ,
    which the lattice's linear extension makes upper triangular.
    """

    __slots__ = ("lattice",)

    def __init__(self, lattice: PartitionLattice):
        super().__init__(len(lattice))
        self.lattice = lattice

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        """Flat copy of the sparse entries keyed by (row, col)."""
        return {(i, j): v for i, j, v in self.nonzeros()}

    def support_respects_order(self) -> bool:
        """True iff every nonzero entry sits on a pair with π ≤ ρ."""
        lat = self.lattice
        return all(
            i <= j and lat[i].refines(lat[j]) for i, j, _ in self.nonzeros()
        )
