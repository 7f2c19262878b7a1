"""Buchberger's algorithm, normal forms, and staircase combinatorics."""

import random

import pytest

from lgtft.groebner import GroebnerBasis, normal_form, s_polynomial
from lgtft.poly import PolyRing


@pytest.fixture
def rxy():
    return PolyRing(["x", "y"])


def test_principal_ideal_monic(rxy):
    gb = GroebnerBasis.compute([rxy.parse("3*x^2")])
    assert [str(g) for g in gb.generators] == ["x^2"]


def test_already_reduced(rxy):
    gb = GroebnerBasis.compute([rxy.parse("x"), rxy.parse("y")])
    assert {str(g) for g in gb.generators} == {"x", "y"}


def test_x2y_jacobi_ideal(rxy):
    # the partials of x^2*y generate (2xy, x^2)
    gb = GroebnerBasis.compute([rxy.parse("2*x*y"), rxy.parse("x^2")])
    leads = {g.leading_term()[0] for g in gb.generators}
    assert leads == {(2, 0), (1, 1)}  # staircase excludes x^2 and x*y
    assert not gb.is_zero_dimensional()  # no pure power of y


def test_normal_form_examples():
    rx = PolyRing(["x"])
    gb = GroebnerBasis.compute([rx.parse("x^2")])
    assert gb.normal_form(rx.parse("x^3")).is_zero()
    assert gb.normal_form(rx.parse("x+1")) == rx.parse("x+1")
    assert gb.normal_form(rx.parse("x^2+x")) == rx.parse("x")


def test_normal_form_idempotent_and_linear(rxy):
    gb = GroebnerBasis.compute([rxy.parse("x^2 - y"), rxy.parse("y^2")])
    rng = random.Random(3)
    for _ in range(25):
        p = _random_poly(rxy, rng)
        q = _random_poly(rxy, rng)
        nf_p = gb.normal_form(p)
        assert gb.normal_form(nf_p) == nf_p
        assert gb.normal_form(p + q) == gb.normal_form(p) + gb.normal_form(q)
        # membership: p - NF(p) lies in the ideal
        assert gb.normal_form(p - nf_p).is_zero()


def test_buchberger_criterion_on_random_ideals(rxy):
    rng = random.Random(11)
    for _ in range(15):
        gens = [_random_poly(rxy, rng) for _ in range(rng.randint(1, 3))]
        gens = [p for p in gens if not p.is_zero()]
        if not gens:
            continue
        gb = GroebnerBasis.compute(gens)  # verify() runs inside
        for i in range(len(gb.generators)):
            for j in range(i):
                s = s_polynomial(gb.generators[i], gb.generators[j])
                assert normal_form(s, gb.generators).is_zero()
        # original generators are in the ideal
        for p in gens:
            assert gb.contains(p)


def test_unit_ideal_staircase(rxy):
    gb = GroebnerBasis.compute([rxy.parse("x + 1"), rxy.parse("x")])
    assert gb.is_zero_dimensional()
    assert gb.standard_monomials() == []


def test_staircase_enumeration():
    rx = PolyRing(["x", "y"])
    gb = GroebnerBasis.compute([rx.parse("x^2"), rx.parse("y^2")])
    monomials = gb.standard_monomials()
    assert set(monomials) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    infinite = GroebnerBasis.compute([rx.parse("x^2"), rx.parse("x*y")])
    with pytest.raises(ValueError):
        infinite.standard_monomials()


def _random_poly(ring, rng):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = (rng.randint(0, 3), rng.randint(0, 3))
        terms[exps] = rng.randint(-4, 4)
    return ring.from_terms(terms)
