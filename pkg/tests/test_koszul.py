"""Contraction complex construction and graded cohomology tables."""

import pytest

from lgtft.errors import ValidationError
from lgtft.jacobi import jacobi_groebner
from lgtft.koszul import (
    KoszulComplex,
    apply_iota,
    check_vanishing_negative_degrees,
    contraction_iota,
    koszul_cohomology,
)
from lgtft.lgpair import make_lg_pair
from lgtft.linalg import EchelonBasis
from lgtft.poly import mono_mul, mono_weighted_degree, monomials_of_weighted_degree
from lgtft.scalars import GaussianRational

from oracles import dense_rank, monomials_up_to


def test_d1_complex_is_minus_2ix():
    lg = make_lg_pair(["x"], "x^2")
    complex_ = contraction_iota(lg)
    images = complex_.differential_entries((0,))
    assert len(images) == 1
    target, coeff = images[0]
    assert target == ()
    assert str(coeff) == "-2*i*x"


def test_d2_contraction_formula():
    lg = make_lg_pair(["x", "y"], "x^2+y^2")
    complex_ = contraction_iota(lg)
    images = dict(complex_.differential_entries((0, 1)))
    # d_x wedge d_y maps to -i(2x d_y - 2y d_x)
    assert str(images[(1,)]) == "-2*i*x"
    assert str(images[(0,)]) == "2*i*y"


@pytest.mark.parametrize("w", ["x^2*y", "x^3+y^3", "x^2+y^2+z^2 + x*y"])
def test_iota_squared_zero(w):
    variables = ["x", "y", "z"][: 3 if "z" in w else 2]
    lg = make_lg_pair(variables, w)
    complex_ = KoszulComplex(lg)  # asserts iota^2 = 0 internally
    for size in range(2, lg.dimension + 1):
        for subset in complex_.subsets[-size]:
            element = [(subset, lg.ring.one())]
            once = apply_iota(complex_, element)
            assert apply_iota(complex_, once) == []


def test_unit_ideal_all_cohomology_zero():
    lg = make_lg_pair(["x"], "x")
    table = koszul_cohomology(lg, 10)
    assert table.totals == {-1: 0, 0: 0}


def test_quadric_2d():
    lg = make_lg_pair(["x", "y"], "x^2+y^2")
    table = koszul_cohomology(lg, 10)
    assert table.totals[-2] == 0
    assert table.totals[-1] == 0
    assert table.totals[0] == 1


def test_negative_bound_rejected():
    lg = make_lg_pair(["x"], "x^2")
    with pytest.raises(ValidationError):
        koszul_cohomology(lg, -1)


def test_h0_matches_staircase_counts():
    # weighted grading: H^0 in degree m counts standard monomials of degree m
    for variables, w in [(["x", "y"], "x^3+y^3"), (["x", "y"], "x^4+y^4")]:
        lg = make_lg_pair(variables, w)
        table = koszul_cohomology(lg, 20)
        gb = jacobi_groebner(lg)
        standard = gb.standard_monomials()
        by_degree = {}
        for exps in standard:
            m = mono_weighted_degree(exps, lg.weights)
            by_degree[m] = by_degree.get(m, 0) + 1
        assert table.dims[0] == by_degree
        assert table.totals[0] == len(standard)


def test_x2y_witness_is_nonbounding_cocycle():
    lg = make_lg_pair(["x", "y"], "x^2*y")
    report = check_vanishing_negative_degrees(lg, 8)
    assert not report.vanishes
    k, m = report.witness_degree
    assert k == -1
    complex_ = contraction_iota(lg)
    # cocycle: iota kills it
    assert apply_iota(complex_, report.witness) == []
    # non-bounding: not in the image of the incoming differential
    assert not _in_image(complex_, lg, k, m, report.witness)


def _in_image(complex_, lg, k, m, element):
    weights = lg.weights
    degree_w = lg.weighted_degree

    def piece(kk, mm):
        basis = []
        for subset in complex_.subsets.get(kk, ()):
            offset = sum(degree_w - weights[j] for j in subset)
            remaining = mm - offset
            if remaining < 0:
                continue
            for exps in monomials_of_weighted_degree(weights, remaining):
                basis.append((subset, exps))
        return basis

    target = piece(k, m)
    index = {e: r for r, e in enumerate(target)}
    image = EchelonBasis()
    for subset, exps in piece(k - 1, m):
        acc = {}
        for image_subset, coeff in complex_.differential_entries(subset):
            for e, c in coeff.terms.items():
                key = (image_subset, mono_mul(exps, e))
                row = index[key]
                acc[row] = acc.get(row, GaussianRational(0)) + c
        image.insert({r: v for r, v in acc.items() if v})
    vector = {}
    for subset, poly in element:
        for exps, coeff in poly.terms.items():
            vector[index[(subset, exps)]] = coeff
    return image.contains(vector)


@pytest.mark.parametrize(
    "variables,w,bound",
    [
        (["x"], "x^4", 10),
        (["x", "y"], "x^3+y^3", 9),
        (["x", "y"], "x^2*y", 8),
    ],
)
def test_dims_match_bruteforce_oracle(variables, w, bound):
    """Graded dims equal raw coefficient-matrix ranks computed independently."""
    lg = make_lg_pair(variables, w)
    table = koszul_cohomology(lg, bound)
    complex_ = contraction_iota(lg)
    weights = lg.weights
    degree_w = lg.weighted_degree

    def piece(k, m):
        basis = []
        for subset in complex_.subsets.get(k, ()):
            offset = sum(degree_w - weights[j] for j in subset)
            for exps in monomials_up_to(lg.dimension, m):
                if mono_weighted_degree(exps, weights) + offset == m:
                    basis.append((subset, exps))
        return basis

    def dense_matrix(k, m):
        source = piece(k, m)
        target = piece(k + 1, m)
        index = {e: r for r, e in enumerate(target)}
        rows = [
            [GaussianRational(0)] * len(source) for _ in range(len(target))
        ]
        for col, (subset, exps) in enumerate(source):
            for image_subset, coeff in complex_.differential_entries(subset):
                for e, c in coeff.terms.items():
                    row = index[(image_subset, mono_mul(exps, e))]
                    rows[row][col] = rows[row][col] + c
        return rows, len(source), len(target)

    for k in range(-lg.dimension, 1):
        for m in range(0, bound + 1):
            rows, ncols, _ = dense_matrix(k, m)
            rank_out = dense_rank(rows) if (k < 0 and ncols) else 0
            rows_in, ncols_in, _ = dense_matrix(k - 1, m)
            rank_in = dense_rank(rows_in) if (k > -lg.dimension and ncols_in) else 0
            expected = ncols - rank_out - rank_in
            assert table.dim(k, m) == expected


def test_windowed_mode_for_inhomogeneous_w():
    lg = make_lg_pair(["x"], "x^2 + x^3")
    assert lg.weights is None
    table = koszul_cohomology(lg, 8)
    assert table.mode == "total_degree"
    assert table.stabilized
    assert table.totals[0] == 2  # mu(x^2+x^3) = 2
    assert table.totals[-1] == 0
    report = check_vanishing_negative_degrees(lg, 8)
    assert report.vanishes


def test_serialization_roundtrip_fields():
    lg = make_lg_pair(["x", "y"], "x^3+y^3")
    payload = koszul_cohomology(lg, 8).to_jsonable()
    assert payload["mode"] == "weighted"
    assert payload["bound"] == 8
    assert payload["totals"]["0"] == 4
