"""The Jacobi algebra O(C^d)/(dW), its dimension, and the residue trace.

The trace is the global Grothendieck residue functional, computed exactly by
the Bezoutian dual-basis construction: write the Bezoutian of the partials as
sum_{a,b} C[a][b] m_a(x) m_b(y) modulo the Jacobi ideal in both variable
groups; then C^{-1} is the Gram matrix of the residue pairing on the standard
monomial basis.  This normalization automatically satisfies
trace(det Hessian) = dim, which is asserted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateTraceError,
    NonIsolatedCriticalLocusError,
    SingularMatrixError,
)
from .groebner import GroebnerBasis
from .lgpair import LGPair
from .linalg import SparseMatrix
from .poly import PolyRing, Polynomial
from .polymatrix import PolyMatrix, poly_det
from .scalars import GaussianRational


def jacobi_groebner(lg: LGPair) -> GroebnerBasis:
    """Groebner basis of the ideal of partial derivatives of W."""
    return GroebnerBasis.compute([p for p in lg.partials() if not p.is_zero()])


def is_critical_set_finite(lg: LGPair) -> bool:
    return jacobi_groebner(lg).is_zero_dimensional()


class JacobiAlgebra:
    """Finite-dimensional quotient algebra with a multiplication table."""

    __slots__ = ("lg", "gb", "basis", "index", "table", "unit_index")

    def __init__(self, lg: LGPair, gb: GroebnerBasis):
        self.lg = lg
        self.gb = gb
        self.basis = tuple(gb.standard_monomials())
        self.index = {exps: k for k, exps in enumerate(self.basis)}
        unit = (0,) * lg.ring.nvars
        self.unit_index = self.index.get(unit)
        self.table = self._build_table()

    @property
    def ring(self) -> PolyRing:
        return self.lg.ring

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_zero_algebra(self) -> bool:
        return not self.basis

    def _build_table(self):
        table = []
        for a in self.basis:
            row = []
            for b in self.basis:
                product = self.ring.monomial(
                    tuple(x + y for x, y in zip(a, b))
                )
                row.append(self.nf_coords(product))
            table.append(tuple(row))
        return tuple(table)

    def basis_poly(self, k: int) -> Polynomial:
        return self.ring.monomial(self.basis[k])

    def nf_coords(self, p: Polynomial) -> tuple:
        """Coordinates of the normal form of p in the standard basis."""
        reduced = self.gb.normal_form(p)
        coords = [GaussianRational(0)] * len(self.basis)
        for exps, coeff in reduced.terms.items():
            coords[self.index[exps]] = coeff
        return tuple(coords)

    def coords_to_poly(self, coords: Sequence) -> Polynomial:
        total = self.ring.zero()
        for k, c in enumerate(coords):
            c = GaussianRational.coerce(c)
            if c:
                total = total + self.ring.monomial(self.basis[k], c)
        return total

    def multiply_coords(self, u: Sequence, v: Sequence) -> tuple:
        out = [GaussianRational(0)] * len(self.basis)
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                scale = ua * vb
                for k, t in enumerate(self.table[a][b]):
                    if t:
                        out[k] = out[k] + scale * t
        return tuple(out)


def jacobi_algebra(lg: LGPair) -> JacobiAlgebra:
    """Quotient by the Jacobi ideal; requires a finite critical set."""
    gb = jacobi_groebner(lg)
    if not gb.is_zero_dimensional():
        raise NonIsolatedCriticalLocusError(
            "the critical set of W is not finite; the quotient algebra is "
            "infinite-dimensional (run the Koszul cohomology tables for "
            "degreewise diagnostics instead)"
        )
    return JacobiAlgebra(lg, gb)


def milnor_number(lg: LGPair) -> int:
    return jacobi_algebra(lg).dimension


def hessian_determinant(lg: LGPair) -> Polynomial:
    d = lg.dimension
    partials = lg.partials()
    rows = [
        [partials[i].partial_derivative(j) for j in range(d)] for i in range(d)
    ]
    return poly_det(PolyMatrix(lg.ring, rows))


# ---------------------------------------------------------------------------
# residue trace via the Bezoutian
# ---------------------------------------------------------------------------


def _fresh_suffix(names):
    suffix = "_y"
    while any((name + suffix) in names for name in names):
        suffix += "_"
    return suffix


def _embed(p: Polynomial, ring2: PolyRing, offset: int, d: int) -> Polynomial:
    terms = {}
    for exps, coeff in p.terms.items():
        padded = [0] * ring2.nvars
        for k, e in enumerate(exps):
            padded[offset + k] = e
        terms[tuple(padded)] = coeff
    return Polynomial(ring2, terms)


def _divided_difference(p: Polynomial, x_index: int, y_index: int) -> Polynomial:
    """(p - p[x->y]) / (x - y), computed term by term without division."""
    ring = p.ring
    out = ring.zero()
    for exps, coeff in p.terms.items():
        k = exps[x_index]
        if k == 0:
            continue
        base = list(exps)
        for t in range(k):
            step = list(base)
            step[x_index] = t
            step[y_index] = exps[y_index] + (k - 1 - t)
            out = out + ring.monomial(tuple(step), coeff)
    return out


def bezoutian_determinant(lg: LGPair, ring2: PolyRing) -> Polynomial:
    """Determinant of the Bezoutian matrix of the partials in x and y groups."""
    d = lg.dimension
    partials = [_embed(p, ring2, 0, d) for p in lg.partials()]
    rows = []
    substituted = list(partials)  # g_j with the first i variables moved to y
    for i in range(d):
        row = []
        for j in range(d):
            row.append(_divided_difference(substituted[j], i, d + i))
        rows.append(row)
        if i + 1 < d:
            substituted = [
                _substitute_var(g, i, d + i) for g in substituted
            ]
    return poly_det(PolyMatrix(ring2, rows))


def _substitute_var(p: Polynomial, source: int, target: int) -> Polynomial:
    terms = {}
    for exps, coeff in p.terms.items():
        moved = list(exps)
        moved[target] += moved[source]
        moved[source] = 0
        key = tuple(moved)
        acc = terms.get(key)
        total = coeff if acc is None else acc + coeff
        if total:
            terms[key] = total
        elif key in terms:
            del terms[key]
    return Polynomial(p.ring, terms)


class ResidueTrace:
    """The residue functional on a Jacobi algebra, with its Gram matrix."""

    __slots__ = ("algebra", "values", "gram", "scale")

    def __init__(self, algebra: JacobiAlgebra, values, gram: SparseMatrix, scale):
        self.algebra = algebra
        self.values = tuple(values)
        self.gram = gram
        self.scale = scale

    def of_coords(self, coords: Sequence) -> GaussianRational:
        total = GaussianRational(0)
        for c, v in zip(coords, self.values):
            c = GaussianRational.coerce(c)
            if c and v:
                total = total + c * v
        return total

    def of_poly(self, p: Polynomial) -> GaussianRational:
        return self.of_coords(self.algebra.nf_coords(p))


def residue_trace(
    algebra: JacobiAlgebra, lg: LGPair, scale=Fraction(1)
) -> ResidueTrace:
    """Grothendieck residue trace normalized so trace(det Hessian) = dim.

    scale multiplies the whole functional (the Cardy check treats the overall
    normalization as a solvable unknown, so it is exposed here).
    """
    if algebra.is_zero_algebra():
        raise DegenerateTraceError(
            "the Jacobi algebra is zero; no trace exists"
        )
    d = lg.dimension
    names = lg.ring.variables
    suffix = _fresh_suffix(names)
    ring2 = PolyRing(names + tuple(name + suffix for name in names))

    delta = bezoutian_determinant(lg, ring2)

    # G_x union G_y is a Groebner basis: the two groups have disjoint
    # variables, so all cross S-pairs have coprime leading terms.
    gens_x = [_embed(g, ring2, 0, d) for g in algebra.gb.generators]
    gens_y = [_embed(g, ring2, d, d) for g in algebra.gb.generators]
    combined = GroebnerBasis(ring2, gens_x + gens_y)
    reduced = combined.normal_form(delta)

    mu = algebra.dimension
    c_matrix = SparseMatrix(mu, mu)
    for exps, coeff in reduced.terms.items():
        x_part = exps[:d]
        y_part = exps[d:]
        c_matrix.set(algebra.index[x_part], algebra.index[y_part], coeff)
    try:
        gram_unscaled = c_matrix.inverse()
    except SingularMatrixError as exc:
        raise DegenerateTraceError(
            "degenerate residue pairing: the critical locus is not isolated "
            "or the algebra data is corrupted"
        ) from exc

    # symmetry and the trace(hessian) = dim normalization are theorems for
    # finite critical sets; treat violations as internal errors
    assert gram_unscaled == gram_unscaled.transpose(), "Gram matrix not symmetric"
    values = [
        gram_unscaled.get(algebra.unit_index, k) for k in range(mu)
    ]
    hess_coords = algebra.nf_coords(hessian_determinant(lg))
    check = GaussianRational(0)
    for c, v in zip(hess_coords, values):
        if c and v:
            check = check + c * v
    assert check == GaussianRational(mu), "hessian normalization failed"

    scale = GaussianRational.coerce(scale)
    scaled_values = [scale * v for v in values]
    gram_rows = [
        {k: scale * v for k, v in row.items()} for row in gram_unscaled.rows
    ]
    gram = SparseMatrix(mu, mu, gram_rows)
    return ResidueTrace(algebra, scaled_values, gram, scale)
