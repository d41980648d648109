import random

import pytest
from hypothesis import given, settings, strategies as st

from uqgalois.freealg import (
    Hom, Presentation, PresentationError, TensorPoly, check_rule_confluence, qbinomial_identity_check,
    random_element, tensor,
)
from uqgalois.scalar import ONE, Q, lambda_constant
from uqgalois import pol, uq


def test_uq_rewriting_examples():
    U = uq.make_uq(1, -1)
    E, F, K, Ki = (U.gen(g) for g in ("E", "F", "K", "Ki"))
    lam = lambda_constant()
    assert E * F == F * E + (K * K + Ki * Ki).scale(lam)
    assert K * Ki == U.one() and Ki * K == U.one()
    assert E * K == (K * E).scale(Q.inverse())
    assert U.one() * E == E
    assert (K + Ki) ** 2 == K * K + U.scalar(2) + Ki * Ki


@pytest.mark.parametrize("mu, nu", [(m, n) for m in (-1, 0, 1) for n in (-1, 0, 1)])
def test_commutator_normal_form(mu, nu):
    U = uq.make_uq(mu, nu)
    E, F, K, Ki = (U.gen(g) for g in ("E", "F", "K", "Ki"))
    lam = lambda_constant()
    assert E * F - F * E == (K * K).scale(lam * mu) - (Ki * Ki).scale(lam * nu)


def test_star_examples():
    U = uq.make_uq(1)
    E, F, K = U.gen("E"), U.gen("F"), U.gen("K")
    assert E.star() == F and F.star() == E and K.star() == K
    assert (E * K).star() == K * F
    P = pol.make_pol("+")
    assert P.gen("b").star() == P.gen("c").scale(-Q.inverse())


def test_commuting_generators_are_confluent():
    pres = Presentation("comm", ["x", "y", "z"], {("y", "x"): {("x", "y"): 1}, ("z", "x"): {("x", "z"): 1},
                                                  ("z", "y"): {("y", "z"): 1}})
    assert check_rule_confluence(pres).passed


def test_broken_commutator_is_reported():
    # replacing [E, F] by E clashes with the K-commutation rules on the word E*K^-1*F
    rules = uq.uq_rules(1, 1)
    rules[("E", "F")] = {("F", "E"): ONE, ("E",): ONE}
    pres = Presentation("broken", uq.UQ_GENS, rules, weights=uq.UQ_WEIGHTS, inverses=[("K", "Ki")])
    rep = check_rule_confluence(pres)
    assert not rep.passed
    (fail,) = rep.failures
    assert fail.witness.startswith("overlap E*K^-1*F")


def test_order_violation_is_reported():
    pres = Presentation("bad-order", ["x", "y"], {("x",): {("x", "y"): 1}})
    rep = check_rule_confluence(pres)
    assert any(e.id.startswith("confluence.order") and e.status == "fail" for e in rep.entries)


@pytest.mark.parametrize("mu, nu", [(m, n) for m in (-1, 0, 1) for n in (-1, 0, 1)])
def test_uq_confluent(mu, nu):
    assert check_rule_confluence(uq.make_uq(mu, nu)).passed


@pytest.mark.parametrize("v", pol.VARIANTS)
def test_pol_confluent(v):
    assert check_rule_confluence(pol.make_pol(v)).passed


def test_tensor_products():
    U = uq.make_uq(1)
    E, K = U.gen("E"), U.gen("K")
    assert tensor(E, K) * tensor(U.one(), K) == tensor(E, K * K)
    one = TensorPoly.one((U, U))
    u = tensor(E, K) + tensor(K, E)
    assert one * u == u and u * one == u
    assert u.permute((1, 0)) == u


def test_hom_rejects_foreign_images():
    U = uq.make_uq(1)
    P = pol.make_pol("+")
    with pytest.raises(PresentationError):
        Hom(U, {g: P.one() for g in U.gens}, target=U)
    with pytest.raises(PresentationError):
        Hom(U, {"E": U.one()}, target=U)


def test_mismatched_presentations():
    with pytest.raises(PresentationError):
        uq.make_uq(1).gen("E") + uq.make_uq(-1).gen("E")


def test_qbinomial_expansion():
    rep = qbinomial_identity_check(6)
    assert rep.passed and len(rep) == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(1, 1), (1, -1), (0, 0), (-1, 0)]))
def test_multiplication_associative(seed, labels):
    U = uq.make_uq(*labels)
    rng = random.Random(seed)
    a, b, c = (random_element(U, rng, 3) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert (a + b) * c == a * c + b * c


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["+", "-", "0"]))
def test_star_is_antimultiplicative_involution(seed, v):
    P = pol.make_pol(v)
    rng = random.Random(seed)
    a, b = random_element(P, rng, 3), random_element(P, rng, 3)
    assert (a * b).star() == b.star() * a.star()
    assert a.star().star() == a
