import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uqgalois import pairing, pol, uq
from uqgalois.freealg import PresentationError, TensorPoly, random_element, tensor
from uqgalois.linalg import certified_rank, rank_exact, rank_mod_p
from uqgalois.parser import parse_expression
from uqgalois.scalar import ONE, Q, S, ZERO

MUS = (1, -1, 0)


# Pol ---------------------------------------------------------------------------

def test_pol_examples():
    P = pol.make_pol("+")
    a, b, c, d = (P.gen(g) for g in ("a", "b", "c", "d"))
    assert d * a == P.one() + (b * c).scale(Q.inverse())
    assert a * d - (b * c).scale(Q) == P.one()
    assert b * c == c * b
    assert pol.delta_pol("+", a) == tensor(a, a) + tensor(c, b)
    assert pol.delta_pol("+", P.one()) == TensorPoly.one((P, P))
    assert pol.delta_pol("+", d * a - (c * b).scale(Q.inverse())) == TensorPoly.one((P, P))
    P0 = pol.make_pol("0")
    assert P0.gen("a0") * P0.gen("a0s") == P0.one()


def test_pol_antipode_instances():
    P = pol.make_pol("+")
    D = pol.delta_pol("+", P.gen("a"))
    assert D.map_leg(0, pol.antipode_pol_hom("+")).multiply_legs() == P.one()
    assert D.map_leg(1, pol.antipode_pol_hom("+")).multiply_legs() == P.one()
    P0 = pol.make_pol("0")
    a0, b0 = P0.gen("a0"), P0.gen("b0")
    assert pol.antipode_pol("0", b0) * a0 + a0 * b0 == P0.zero()
    D0 = pol.delta_pol("0", b0)
    assert D0.map_leg(0, pol.antipode_pol_hom("0")).multiply_legs() == P0.zero()


@pytest.mark.parametrize("v", pol.VARIANTS)
def test_pol_hopf(v):
    assert pol.check_pol_hopf(v, samples=10).passed


def test_zero_coproduct_grid():
    assert pol.check_zero_coproduct_grid().passed


# pairing -------------------------------------------------------------------------

def test_generator_values():
    U, P = uq.make_uq(1), pol.make_pol("+")
    L = pol.pol_letters(P)
    p = lambda x, y: pairing.pair(1, x, y)
    assert p(U.gen("K"), P.gen("a")) == S.inverse()
    assert p(U.gen("E"), L["b"] * L["a"]) == S.inverse()
    assert p(U.gen("F"), L["b*"] * L["a"]) == -(S**-3)
    assert p(U.gen("K"), L["a"] ** 2) == Q.inverse()
    assert p(U.gen("F"), L["b*"].scale(-Q)) == ONE
    assert p(U.one(), P.one()) == ONE


@pytest.mark.parametrize("mu", MUS)
def test_pairing_axioms(mu):
    rep = pairing.check_pairing_axioms(mu, samples=8)
    assert rep.passed, rep.failures[:1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(MUS))
def test_two_evaluators_agree(seed, mu):
    rng = random.Random(seed)
    U = uq.make_uq(mu)
    P = pol.make_pol(pol.variant_of_label(Fraction(mu)))
    x, y = random_element(U, rng, 3), random_element(P, rng, 3)
    assert pairing.pair(mu, x, y) == pairing.pair_by_derivations(mu, x, y)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(MUS))
def test_pairing_multiplicative_in_pol(seed, mu):
    # <x, y z> = <x_(1), y><x_(2), z>
    rng = random.Random(seed)
    U = uq.make_uq(mu)
    P = pol.make_pol(pol.variant_of_label(Fraction(mu)))
    x, y, z = random_element(U, rng, 2), random_element(P, rng, 2), random_element(P, rng, 2)
    pr = pairing.standard_pairing(Fraction(mu))
    d = uq.delta_uq(mu, mu, mu, x)
    total = ZERO
    for (w1, w2), c in d.terms.items():
        total = total + c * pr(U.monomial(w1), y) * pr(U.monomial(w2), z)
    assert pr(x, y * z) == total


def test_label_mismatch():
    with pytest.raises(PresentationError):
        pairing.pair(1, uq.make_uq(-1).gen("E"), pol.make_pol("+").gen("a"))


def test_pair_parses():
    U, P = uq.make_uq(1), pol.make_pol("+")
    v = pairing.pair(1, parse_expression(U, "E"), parse_expression(P, "b*a"))
    assert v == S.inverse()


# Gram ranks: values obtained by exact elimination over Q(s), frozen here ----------

@pytest.mark.parametrize("mu, degree, rank", [(1, 0, 1), (1, 1, 12), (1, 2, 45), (-1, 1, 12), (-1, 2, 45),
                                              (0, 0, 1), (0, 1, 12), (0, 2, 45)])
def test_gram_full_rank(mu, degree, rank):
    cert = pairing.pairing_gram_certificate(mu, degree)
    assert cert.exact and cert.rank == rank == len(pairing.uq_window(uq.make_uq(mu), degree))


@pytest.mark.parametrize("degree, rank", [(1, 10), (2, 37)])
def test_gram_variant_zero_short_window_is_deficient(degree, rank):
    assert pairing.pairing_gram_rank(0, degree, pol_length=2 * degree) == rank


def test_gram_rank_exact_agrees_with_certificate():
    rows = pairing.gram_rows(1, 1)
    assert rank_exact(rows) == 12
    rows0 = pairing.gram_rows(0, 1, pol_length=2)
    assert rank_exact(rows0) == 10 == rank_mod_p(rows0)


def test_gram_control():
    assert pairing.pairing_gram_rank(1, 1, data=pairing.perturbed(1, e_b=0)) == 6


def test_gram_degree_cap():
    with pytest.raises(ValueError):
        pairing.pairing_gram_certificate(1, 5)


def test_certified_rank_falls_back():
    # (s - 1009) vanishes at the first sample point only
    rows = [{0: S - 1009, 1: ONE}, {0: ONE, 1: ZERO}]
    c = certified_rank(rows)
    assert c.rank == 2 and c.exact
    rows = [{0: S * S - 1, 1: S - 1}, {0: S + 1, 1: ONE}]
    c = certified_rank(rows)
    assert c.rank == 1 and c.exact and "elimination" in c.method
    assert not certified_rank(rows, exact_fallback=False).exact
