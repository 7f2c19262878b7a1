"""Exact sparse linear algebra over Q(i).

Matrices are lists of sparse rows (dict column -> nonzero scalar).  Pivoting
is deterministic: columns are processed left to right and the candidate row
with the fewest nonzero entries (ties broken by position) wins, so every
kernel/image basis this module produces is reproducible bit for bit.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import ShapeError, SingularMatrixError
from .scalars import GaussianRational

Vector = dict  # column index -> nonzero GaussianRational


def vec_add(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for k, v in b.items():
        acc = out.get(k)
        total = v if acc is None else acc + v
        if total:
            out[k] = total
        elif k in out:
            del out[k]
    return out


def vec_scale(a: Vector, scale) -> Vector:
    if not scale:
        return {}
    return {k: v * scale for k, v in a.items()}


def vec_axpy(target: Vector, scale, source: Vector) -> Vector:
    """target + scale*source, returned as a fresh dict."""
    if not scale:
        return dict(target)
    out = dict(target)
    for k, v in source.items():
        delta = scale * v
        acc = out.get(k)
        total = delta if acc is None else acc + delta
        if total:
            out[k] = total
        elif k in out:
            del out[k]
    return out


def vec_from_list(values: Sequence) -> Vector:
    out = {}
    for k, v in enumerate(values):
        v = GaussianRational.coerce(v)
        if v:
            out[k] = v
    return out


def vec_to_list(vector: Vector, length: int) -> list:
    out = [GaussianRational(0)] * length
    for k, v in vector.items():
        out[k] = v
    return out


class EchelonBasis:
    """Reduced row-echelon rows with their pivot columns, kept sorted.

    Supports membership reduction: reduce(v) subtracts the unique combination
    of stored rows matching v's pivot coordinates, leaving the canonical
    residual of v modulo the row space.
    """

    __slots__ = ("rows", "pivots")

    def __init__(self):
        self.rows = []  # list of Vector, row k has pivot self.pivots[k]
        self.pivots = []  # ascending column indices

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Vector) -> Vector:
        out = dict(vector)
        for pivot, row in zip(self.pivots, self.rows):
            coeff = out.get(pivot)
            if coeff:
                out = vec_axpy(out, -coeff, row)
        return out

    def reduce_with_coords(self, vector: Vector):
        """(residual, coords) where coords[k] multiplies stored row k."""
        out = dict(vector)
        coords = [GaussianRational(0)] * len(self.rows)
        for index, (pivot, row) in enumerate(zip(self.pivots, self.rows)):
            coeff = out.get(pivot)
            if coeff:
                coords[index] = coeff
                out = vec_axpy(out, -coeff, row)
        return out, coords

    def insert(self, vector: Vector) -> bool:
        """Reduce and insert; returns True when the vector enlarged the span."""
        residual = self.reduce(vector)
        if not residual:
            return False
        pivot = min(residual)
        scale = residual[pivot].inverse()
        row = vec_scale(residual, scale)
        # back-substitute into existing rows to keep them fully reduced
        for k, existing in enumerate(self.rows):
            coeff = existing.get(pivot)
            if coeff:
                self.rows[k] = vec_axpy(existing, -coeff, row)
        position = 0
        while position < len(self.pivots) and self.pivots[position] < pivot:
            position += 1
        self.pivots.insert(position, pivot)
        self.rows.insert(position, row)
        return True

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)


class SparseMatrix:
    """Sparse exact matrix; rows are dicts from column index to scalar."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        if len(rows) != nrows:
            raise ShapeError("row count mismatch")
        self.rows = rows

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ShapeError("ragged matrix")
            rows.append(vec_from_list(row))
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{k: GaussianRational(1)} for k in range(n)])

    def to_dense(self) -> list:
        return [vec_to_list(row, self.ncols) for row in self.rows]

    def set(self, i: int, j: int, value):
        value = GaussianRational.coerce(value)
        if value:
            self.rows[i][j] = value
        elif j in self.rows[i]:
            del self.rows[i][j]

    def get(self, i: int, j: int) -> GaussianRational:
        return self.rows[i].get(j, GaussianRational(0))

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def transpose(self) -> "SparseMatrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                rows[j][i] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ShapeError("inner dimensions differ")
        rows = []
        for row in self.rows:
            acc: Vector = {}
            for k, v in row.items():
                acc = vec_axpy(acc, v, other.rows[k])
            rows.append(acc)
        return SparseMatrix(self.nrows, other.ncols, rows)

    def apply(self, vector: Vector) -> Vector:
        """Matrix times column vector (vector indexed by column)."""
        out: Vector = {}
        for i, row in enumerate(self.rows):
            total = GaussianRational(0)
            for j, v in row.items():
                coeff = vector.get(j)
                if coeff:
                    total = total + v * coeff
            if total:
                out[i] = total
        return out

    # -- elimination ---------------------------------------------------------

    def _rref_rows(self, augmented: Optional[list] = None):
        """Reduced row echelon form of the row list.

        Returns (pivot_cols, rows, aug_rows): rows sorted by pivot column,
        each normalized to pivot 1 and fully reduced.  The optional augmented
        rows receive the same row operations (used for solve/inverse).
        """
        work = [dict(row) for row in self.rows]
        aug = [dict(row) for row in augmented] if augmented is not None else None
        order = list(range(self.nrows))
        done = []  # (pivot_col, work_index)
        used = set()
        for col in range(self.ncols):
            best = None
            for idx in order:
                if idx in used:
                    continue
                coeff = work[idx].get(col)
                if coeff:
                    score = (len(work[idx]), idx)
                    if best is None or score < best[0]:
                        best = (score, idx)
            if best is None:
                continue
            pivot_idx = best[1]
            used.add(pivot_idx)
            scale = work[pivot_idx][col].inverse()
            work[pivot_idx] = vec_scale(work[pivot_idx], scale)
            if aug is not None:
                aug[pivot_idx] = vec_scale(aug[pivot_idx], scale)
            pivot_row = work[pivot_idx]
            for idx in order:
                if idx == pivot_idx:
                    continue
                coeff = work[idx].get(col)
                if coeff:
                    work[idx] = vec_axpy(work[idx], -coeff, pivot_row)
                    if aug is not None:
                        aug[idx] = vec_axpy(aug[idx], -coeff, aug[pivot_idx])
            done.append((col, pivot_idx))
        pivot_cols = [col for col, _ in done]
        rows = [work[idx] for _, idx in done]
        if aug is None:
            return pivot_cols, rows, None
        aug_rows = [aug[idx] for _, idx in done]
        leftover = [idx for idx in order if idx not in used]
        # rows that reduced to zero keep their augmented parts (consistency data)
        aug_zero = [aug[idx] for idx in leftover]
        return pivot_cols, rows, (aug_rows, aug_zero)

    def rref(self):
        pivot_cols, rows, _ = self._rref_rows()
        return pivot_cols, rows

    def rank(self) -> int:
        pivot_cols, _ = self.rref()
        return len(pivot_cols)

    def nullspace(self) -> list:
        """Canonical kernel basis: one vector per free column, ascending."""
        pivot_cols, rows = self.rref()
        pivot_of = dict(zip(pivot_cols, rows))
        free_cols = [c for c in range(self.ncols) if c not in pivot_of]
        basis = []
        for free in free_cols:
            vector: Vector = {free: GaussianRational(1)}
            for col, row in pivot_of.items():
                coeff = row.get(free)
                if coeff:
                    vector[col] = -coeff
            basis.append(vector)
        return basis

    def column_space_basis(self) -> list:
        """Canonical image basis: RREF rows of the transpose."""
        _, rows = self.transpose().rref()
        return rows

    def solve(self, rhs: Vector) -> Optional[Vector]:
        """One solution of A x = rhs, or None when inconsistent."""
        aug = [dict() for _ in range(self.nrows)]
        for i, v in rhs.items():
            if v:
                aug[i][0] = v
        pivot_cols, rows, aug_data = self._rref_rows(aug)
        aug_rows, aug_zero = aug_data
        for leftover in aug_zero:
            if leftover:
                return None
        solution: Vector = {}
        for col, arow in zip(pivot_cols, aug_rows):
            v = arow.get(0)
            if v:
                solution[col] = v
        return solution

    def inverse(self) -> "SparseMatrix":
        if self.nrows != self.ncols:
            raise ShapeError("only square matrices can be inverted")
        identity = [
            {k: GaussianRational(1)} for k in range(self.nrows)
        ]
        pivot_cols, _, aug_data = self._rref_rows(identity)
        if len(pivot_cols) != self.nrows:
            raise SingularMatrixError("matrix is singular")
        aug_rows, _ = aug_data
        rows = [dict() for _ in range(self.nrows)]
        for col, arow in zip(pivot_cols, aug_rows):
            rows[col] = arow
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# graded carriers
# ---------------------------------------------------------------------------


class GradedVectorSpace:
    """Finite-dimensional vector space with labeled basis per degree."""

    __slots__ = ("labels",)

    def __init__(self, labels: Optional[dict] = None):
        self.labels = {}
        if labels:
            for degree, names in labels.items():
                self.add_degree(degree, names)

    def add_degree(self, degree, names: Sequence[str]):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate basis labels in degree {degree!r}")
        if names:
            self.labels[degree] = names

    def dim(self, degree) -> int:
        return len(self.labels.get(degree, ()))

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.labels.values())

    def degrees(self):
        return sorted(self.labels, key=repr)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorSpace):
            return NotImplemented
        return self.labels == other.labels

    def __repr__(self):
        dims = {d: len(v) for d, v in self.labels.items()}
        return f"GradedVectorSpace({dims})"


class LinearMapExact:
    """Exact linear map between graded spaces, with a parity tag."""

    __slots__ = ("domain", "codomain", "matrix", "parity")

    def __init__(self, domain, codomain, matrix: SparseMatrix, parity: int = 0):
        dom_dim = domain.total_dim if isinstance(domain, GradedVectorSpace) else domain
        cod_dim = (
            codomain.total_dim if isinstance(codomain, GradedVectorSpace) else codomain
        )
        if matrix.ncols != dom_dim or matrix.nrows != cod_dim:
            raise ShapeError(
                f"matrix is {matrix.nrows}x{matrix.ncols}, expected "
                f"{cod_dim}x{dom_dim}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.parity = parity % 2

    def compose(self, other: "LinearMapExact") -> "LinearMapExact":
        return LinearMapExact(
            other.domain,
            self.codomain,
            self.matrix.matmul(other.matrix),
            self.parity + other.parity,
        )


def kernel_and_image(linear_map) -> tuple:
    """Exact kernel and image bases; rank-nullity is asserted.

    Accepts a LinearMapExact or a bare SparseMatrix.
    """
    matrix = linear_map.matrix if isinstance(linear_map, LinearMapExact) else linear_map
    kernel = matrix.nullspace()
    image = matrix.column_space_basis()
    assert len(kernel) + len(image) == matrix.ncols, "rank-nullity violated"
    return kernel, image
