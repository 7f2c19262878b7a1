"""Dense matrices with polynomial entries (module maps over O(C^d))."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import RingMismatchError, ShapeError
from .poly import PolyRing, Polynomial
from .scalars import GaussianRational


class PolyMatrix:
    """Immutable matrix of polynomials over a fixed ring."""

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(row) for row in entries)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ShapeError("ragged polynomial matrix")
            for p in row:
                if p.ring != ring:
                    raise RingMismatchError("entry in a different ring")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = rows

    @classmethod
    def zero(cls, ring: PolyRing, nrows: int, ncols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scale=None) -> "PolyMatrix":
        diag = ring.one() if scale is None else _as_poly(ring, scale)
        z = ring.zero()
        return cls(
            ring,
            [[diag if i == j else z for j in range(n)] for i in range(n)],
        )

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def _check_ring(self, other: "PolyMatrix"):
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("shape mismatch in matrix addition")
        return PolyMatrix(
            self.ring,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ring, [[-p for p in row] for row in self.entries]
        )

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ShapeError("inner dimensions differ")
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                total = self.ring.zero()
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    total = total + a * b
                row.append(total)
            rows.append(row)
        return PolyMatrix(self.ring, rows)

    __matmul__ = matmul

    def scale(self, factor) -> "PolyMatrix":
        factor = _as_poly(self.ring, factor)
        return PolyMatrix(
            self.ring, [[factor * p for p in row] for row in self.entries]
        )

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ring,
            [
                [self.entries[i][j] for i in range(self.nrows)]
                for j in range(self.ncols)
            ],
        )

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(p) for p in row] for row in self.entries])

    def trace(self) -> Polynomial:
        if self.nrows != self.ncols:
            raise ShapeError("trace of a non-square matrix")
        total = self.ring.zero()
        for k in range(self.nrows):
            total = total + self.entries[k][k]
        return total

    def partial_derivative(self, index: int) -> "PolyMatrix":
        return self.map_entries(lambda p: p.partial_derivative(index))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def max_total_degree(self) -> int:
        """Largest entry total degree; -1 for the zero matrix."""
        degree = -1
        for row in self.entries:
            for p in row:
                degree = max(degree, p.total_degree())
        return degree

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.ring!r})"

    def to_strings(self) -> list:
        return [[str(p) for p in row] for row in self.entries]


def _as_poly(ring: PolyRing, value) -> Polynomial:
    if isinstance(value, Polynomial):
        if value.ring != ring:
            raise RingMismatchError("scale factor in a different ring")
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return ring.constant(value)
    raise TypeError(f"cannot scale by {value!r}")


def poly_det(matrix: PolyMatrix) -> Polynomial:
    """Determinant by cofactor expansion (fine at desk scale)."""
    if matrix.nrows != matrix.ncols:
        raise ShapeError("determinant of a non-square matrix")
    n = matrix.nrows
    ring = matrix.ring
    if n == 0:
        return ring.one()

    def rec(rows, cols):
        if len(cols) == 1:
            return matrix.entries[rows[0]][cols[0]]
        total = ring.zero()
        top, rest = rows[0], rows[1:]
        for position, col in enumerate(cols):
            entry = matrix.entries[top][col]
            if entry.is_zero():
                continue
            minor = rec(rest, cols[:position] + cols[position + 1 :])
            term = entry * minor
            total = total + term if position % 2 == 0 else total - term
        return total

    return rec(tuple(range(n)), tuple(range(n)))
