"""Exact elimination: kernels, images, inverses, echelon reduction."""

import random

import pytest

from lgtft.errors import SingularMatrixError
from lgtft.linalg import (
    EchelonBasis,
    GradedVectorSpace,
    LinearMapExact,
    SparseMatrix,
    kernel_and_image,
    vec_to_list,
)
from lgtft.scalars import GaussianRational, I

from oracles import dense_rank


def g(x):
    return GaussianRational(x)


def test_identity_kernel_image():
    m = SparseMatrix.identity(3)
    kernel, image = kernel_and_image(m)
    assert len(kernel) == 0
    assert len(image) == 3


def test_zero_map():
    m = SparseMatrix(2, 2)
    kernel, image = kernel_and_image(m)
    assert len(kernel) == 2
    assert len(image) == 0


def test_single_relation_kernel():
    m = SparseMatrix.from_dense([[g(1), I]])
    kernel, image = kernel_and_image(m)
    assert len(kernel) == 1
    assert vec_to_list(kernel[0], 2) == [GaussianRational(0, -1), g(1)]


def test_rank_matches_dense_oracle_randomized():
    rng = random.Random(7)
    for _ in range(40):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        entries = [
            [
                GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1))
                if rng.random() < 0.6
                else g(0)
                for _ in range(ncols)
            ]
            for _ in range(nrows)
        ]
        m = SparseMatrix.from_dense(entries)
        kernel, image = kernel_and_image(m)  # asserts rank-nullity internally
        assert len(image) == dense_rank(entries)


def test_solve_and_inverse():
    m = SparseMatrix.from_dense([[g(2), g(1)], [g(1), g(1)]])
    rhs = {0: g(3), 1: g(2)}
    solution = m.solve(rhs)
    assert m.apply(solution) == rhs
    inv = m.inverse()
    assert m.matmul(inv).rows == SparseMatrix.identity(2).rows


def test_inconsistent_solve_returns_none():
    m = SparseMatrix.from_dense([[g(1), g(1)], [g(2), g(2)]])
    assert m.solve({0: g(0), 1: g(1)}) is None


def test_singular_inverse_raises():
    m = SparseMatrix.from_dense([[g(1), g(2)], [g(2), g(4)]])
    with pytest.raises(SingularMatrixError):
        m.inverse()


def test_echelon_basis_membership_and_coords():
    basis = EchelonBasis()
    assert basis.insert({0: g(1), 1: g(2)})
    assert basis.insert({1: g(1), 2: g(1)})
    assert not basis.insert({0: g(1), 1: g(3), 2: g(1)})  # dependent
    assert basis.dim == 2
    vector = {0: g(2), 1: g(5), 2: g(1)}
    residual, coords = basis.reduce_with_coords(vector)
    rebuilt = {}
    for coeff, row in zip(coords, basis.rows):
        for k, v in row.items():
            rebuilt[k] = rebuilt.get(k, g(0)) + coeff * v
    for k, v in residual.items():
        rebuilt[k] = rebuilt.get(k, g(0)) + v
    assert {k: v for k, v in rebuilt.items() if v} == vector


def test_graded_vector_space_and_linear_map():
    space = GradedVectorSpace({0: ["a", "b"], 1: ["c"]})
    assert space.total_dim == 3
    assert space.dim(0) == 2
    with pytest.raises(ValueError):
        GradedVectorSpace({0: ["a", "a"]})
    matrix = SparseMatrix(3, 3)
    lm = LinearMapExact(space, space, matrix, parity=0)
    kernel, image = kernel_and_image(lm)
    assert len(kernel) == 3 and not image
