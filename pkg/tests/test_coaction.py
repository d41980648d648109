import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uqgalois import coaction, pol
from uqgalois.freealg import TensorPoly, random_element, tensor
from uqgalois.scalar import Q

from oracles import embeddable, isomorphic

LABELS = (-1, 0, 1)
TAUS = (-2, -1, 0, 1, 2)
GRID = [(m, n, t) for m in LABELS for n in LABELS for t in TAUS]


def test_gamma_examples():
    G = coaction.make_gamma(1, -1, 2)
    B, P = G.B, G.P
    L = pol.pol_letters(P)
    gz = G.image("z")
    coeff = TensorPoly(gz.pres, {k: c for k, c in gz.terms.items() if k[0] == B.word(("x",))})
    assert coeff == tensor(B.gen("x"), L["b*"] * L["a"])
    assert G(B.one()) == TensorPoly.one((B, P))


def test_gamma_at_mu_zero_has_two_terms():
    G = coaction.make_gamma(0, 1, 3)
    B, P = G.B, G.P
    a, b = P.gen("a0"), P.gen("b0")
    assert G.image("x") == tensor(B.gen("x"), a * a) + tensor(B.one(), b * a).scale(Q * 3)


@pytest.mark.parametrize("mu, nu, tau", [(1, 1, 1), (0, -1, 2), (-1, 0, -2)])
def test_counit_leg(mu, nu, tau):
    G = coaction.make_gamma(mu, nu, tau)
    eps = pol.counit_pol_hom(G.P.params[0])
    for g in G.B.gens:
        assert G.image(g).map_leg(1, eps).to_ncpoly() == G.B.gen(g)


@pytest.mark.parametrize("mu, nu, tau", GRID)
def test_gamma_relations_and_infinitesimal(mu, nu, tau):
    assert coaction.check_gamma_relations(mu, nu, tau).passed
    assert coaction.check_infinitesimal_compat(mu, nu, tau).passed
    assert coaction.check_spin1_omega(mu, nu, tau).passed


@pytest.mark.parametrize("mu, nu, tau", GRID[::7])
def test_comodule(mu, nu, tau):
    assert coaction.check_comodule(mu, nu, tau, samples=5).passed


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(GRID))
def test_gamma_multiplicative(seed, point):
    G = coaction.make_gamma(*point)
    rng = random.Random(seed)
    x, y = random_element(G.B, rng, 3), random_element(G.B, rng, 3)
    assert G(x * y) == G(x) * G(y)


@pytest.mark.parametrize("v", pol.VARIANTS)
def test_spin1(v):
    assert coaction.spin1_check(v).passed


def test_spin1_needs_extension():
    M = coaction.spin1_matrix("+")
    assert not M[0][1].is_rational() and M[0][0].is_rational()


# ergodicity: fixed-space dimensions computed by the rank certificate and frozen ----

@pytest.mark.parametrize("point", [(1, 1, 1), (0, 0, 0), (-1, 1, -2), (0, -1, 2)])
def test_ergodic_degree6(point):
    res = coaction.fixed_space(*point, 6)
    assert res.unknowns == 49
    assert res.certificate.rank == 48 and res.certificate.exact
    assert res.fixed_dimension == 1


@pytest.mark.parametrize("mu, nu, tau", GRID)
def test_ergodic_degree3(mu, nu, tau):
    assert coaction.check_ergodic(mu, nu, tau, 3).passed


@pytest.mark.parametrize("mu, nu, tau", [(1, 1, 1), (0, 0, 0), (0, 1, 0), (-1, -1, 2)])
def test_z_is_not_fixed(mu, nu, tau):
    G = coaction.make_gamma(mu, nu, tau)
    z = G.B.gen("z")
    assert G(z) != tensor(z, G.P.one())


# coideals --------------------------------------------------------------------------

@pytest.mark.parametrize("mu, nu, tau", GRID)
def test_coideal_grid(mu, nu, tau):
    res = coaction.coideal_embed(mu, nu, tau)
    assert res.embeddable == embeddable(nu, tau)
    assert res.report.passed
    if res.embeddable:
        inj = [e for e in res.report.entries if e.id == "coideal.injective"]
        assert inj and inj[0].detail["rank"] == 25
    else:
        assert res.reason


def test_coideal_reasons():
    assert "no solution" in coaction.coideal_decision(1, 1, 2)[1]
    assert "r = s = t = 0" in coaction.coideal_decision(1, 0, 0)[1]


def test_coideal_image_example():
    res = coaction.coideal_embed(1, -1, 1)
    P = pol.make_pol("+")
    a, b = P.gen("a"), P.gen("b")
    assert res.images["x"] == (a * a).scale(-Q) + (b * a).scale(Q) + (b * b).scale(Q * Q)


# equivariant isomorphisms ------------------------------------------------------------

def test_classification_table():
    positives = 0
    for mu in LABELS:
        for nu, nu2 in itertools.product(LABELS, repeat=2):
            for tau, tau2 in itertools.product(TAUS, repeat=2):
                res = coaction.classify_iso(mu, nu, tau, nu2, tau2)
                assert res.isomorphic == isomorphic(nu, tau, nu2, tau2), (mu, nu, tau, nu2, tau2)
                assert res.report.passed
                positives += res.isomorphic
    assert positives == 3 * 35


def test_iso_theta():
    assert coaction.iso_decision(0, 2, 0, -1)[:2] == (True, Fraction(-2))
    assert coaction.iso_decision(1, 2, 1, 1)[0] is False
    assert coaction.iso_decision(1, 0, 1, 0)[:2] == (True, 1)
