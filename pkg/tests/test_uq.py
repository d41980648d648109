import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uqgalois import uq
from uqgalois.freealg import PresentationError, TensorPoly, tensor
from uqgalois.scalar import ONE, Q, ZERO, Scalar

LABELS = (-1, 0, 1)
TRIPLES = list(itertools.product(LABELS, repeat=3))


def test_labels():
    assert uq.label("+") == 1 and uq.label("-") == -1 and uq.label("0") == 0
    with pytest.raises(uq.LabelError):
        uq.label(2)
    assert uq.label("1/2", expert=True) == Fraction(1, 2)
    assert uq.make_uq("+") is uq.make_uq(1, 1)


def test_delta_examples():
    U = uq.make_uq(1)
    E, K = U.gen("E"), U.gen("K")
    assert uq.delta_uq(1, 1, 1, E) == tensor(E, K) + tensor(U.gen("Ki"), E)
    assert uq.delta_uq(1, 1, 1, U.one()) == TensorPoly.one((U, U))


@pytest.mark.parametrize("mu, nu, ups", TRIPLES)
def test_delta_preserves_relations(mu, nu, ups):
    assert uq.check_delta_relations(mu, nu, ups).passed


@pytest.mark.parametrize("mu, nu, ups", TRIPLES)
def test_commutator_cancellation(mu, nu, ups):
    lhs, rhs = uq.commutator_cancellation(mu, nu, ups)
    assert lhs - rhs == TensorPoly.zero(lhs.pres)
    assert uq.check_commutator_steps(mu, nu, ups).passed


def test_commutator_first_display_has_four_terms():
    # Delta(E) Delta(F) before reduction: four products of the two summands
    L = R = uq.make_uq(1)
    e = [tensor(L.gen("E"), R.gen("K")), tensor(L.gen("Ki"), R.gen("E"))]
    f = [tensor(L.gen("F"), R.gen("K")), tensor(L.gen("Ki"), R.gen("F"))]
    products = [a * b for a in e for b in f]
    assert len(products) == 4 and all(p.terms for p in products)
    assert sum(products[1:], products[0]) == (e[0] + e[1]) * (f[0] + f[1])


def test_coassociativity_all_quadruples():
    for quad in itertools.product(LABELS, repeat=4):
        assert uq.check_coassociativity(*quad).passed, quad


def test_counit():
    U = uq.make_uq(0)
    assert uq.counit_uq(0, U.gen("E")) == ZERO
    assert uq.counit_uq(0, U.gen("K")) == ONE
    with pytest.raises(PresentationError):
        uq.counit_uq(0, uq.make_uq(0, 1).gen("K"))
    # (eps (x) id) Delta = id
    for g in ("E", "F", "K"):
        d = uq.delta_uq(0, 0, 0, U.gen(g))
        assert d.map_leg(0, uq.counit_hom(Fraction(0))).to_ncpoly() == U.gen(g)


def test_antipode_examples():
    U = uq.make_uq(1, -1)
    E, F = U.gen("E"), U.gen("F")
    V = uq.make_uq(-1, 1)
    assert uq.antipode_uq(1, -1, E) == V.gen("E").scale(-Q)
    assert uq.antipode_uq(1, -1, E * F) == V.gen("F") * V.gen("E")
    lam = uq.lambda_constant()
    comm = uq.antipode_uq(1, -1, E * F - F * E)
    assert comm + (V.gen("K") ** 2).scale(lam * -1) - (V.gen("Ki") ** 2).scale(lam) == V.zero()


@pytest.mark.parametrize("mu, nu", list(itertools.product(LABELS, repeat=2)))
def test_antipode_relations_and_star(mu, nu):
    assert uq.check_antipode_relations(mu, nu).passed
    assert uq.check_star_antipode(mu, nu).passed


def test_antipode_identities_examples():
    U = uq.make_uq(1)
    for x in (U.gen("E"), U.gen("K"), U.gen("E") * U.gen("F")):
        assert uq.check_antipode_identities(1, -1, x).passed
    assert uq.counit_uq(1, U.gen("E") * U.gen("F")) == ZERO


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(LABELS), st.sampled_from(LABELS))
def test_antipode_identities_random(seed, mu, nu):
    x = uq.random_uq(mu, mu, random.Random(seed), 3)
    assert uq.check_antipode_identities(mu, nu, x).passed


@pytest.mark.parametrize("mu, nu, ups", TRIPLES)
def test_flip_law(mu, nu, ups):
    assert uq.check_flip_law(mu, nu, ups).passed


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(TRIPLES))
def test_delta_multiplicative(seed, triple):
    mu, nu, ups = triple
    rng = random.Random(seed)
    x, y = uq.random_uq(mu, nu, rng, 3), uq.random_uq(mu, nu, rng, 3)
    d = lambda p: uq.delta_uq(mu, nu, ups, p)
    assert d(x * y) == d(x) * d(y)


def test_weak_unit_two_labels():
    sys = uq.build_colinking((-1, 1))
    one = sys.unit()
    d1 = sys.delta(one)
    assert d1 != sys.tensor(one, one)
    assert len(d1.parts) == 8 and d1.nterms() == 8
    assert sys.counit_scalar(one) == Scalar(2)


def test_antipode_squared_on_diagonal_k():
    U = uq.make_uq(0)
    K = U.gen("K")
    assert uq.antipode_uq(0, 0, uq.antipode_uq(0, 0, K)) == K


def test_weak_hopf_small_run():
    rep = uq.check_weak_hopf_axioms(uq.build_colinking((0, 1)), samples=5, seed=1)
    assert rep.passed
    ids = {e.id.split("[")[0] for e in rep.entries}
    assert "weakhopf.delta_unit_is_weak" in ids and "weakhopf.A7.first" in ids


def test_colinking_label_validation():
    with pytest.raises(uq.LabelError):
        uq.build_colinking((1,))
