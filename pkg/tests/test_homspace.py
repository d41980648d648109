import itertools

import pytest

from uqgalois import homspace, uq
from uqgalois.casimir import (
    casimir_element, check_antipode_casimir, check_casimir, check_central, make_quotient, project,
    quotient_action,
)
from uqgalois.scalar import ONE, Q, S, Scalar, lambda_constant

PAIRS = list(itertools.product((-1, 0, 1), repeat=2))
GRID = [(m, n, t) for m in (-1, 0, 1) for n in (-1, 0, 1) for t in (-2, -1, 0, 1, 2)]


@pytest.mark.parametrize("mu, nu", PAIRS)
def test_casimir(mu, nu):
    assert check_casimir(mu, nu).passed
    assert check_central(mu, nu).passed
    assert check_antipode_casimir(mu, nu).passed
    c = casimir_element(mu, nu)
    assert casimir_element(mu, nu, "FE") == c
    assert c.star() == c


def test_casimir_at_zero_labels():
    U = uq.make_uq(0, 0)
    assert casimir_element(0, 0) == U.gen("E") * U.gen("F")


@pytest.mark.parametrize("mu, nu, tau", [(1, 1, 1), (-1, 0, 2), (0, -1, -2)])
def test_quotient_ef(mu, nu, tau):
    A = make_quotient((mu, nu, tau))
    E, F, K, Ki = (A.gen(g) for g in ("E", "F", "K", "Ki"))
    lam2 = lambda_constant() ** 2
    qi = Q.inverse()
    expected = A.scalar(Scalar(tau) * qi * lam2) - ((K * K).scale(qi * mu) + (Ki * Ki).scale(Q * nu)).scale(lam2)
    assert E * F == expected
    assert project(casimir_element(mu, nu), A) == A.scalar(Scalar(tau) * qi * lam2)


def test_quotient_action_examples():
    params = (1, -1, 2)
    A = make_quotient(params)
    U = uq.make_uq(1)
    E, F, K = A.gen("E"), A.gen("F"), A.gen("K")
    assert quotient_action(params, U.gen("K"), F * K) == (F * K).scale(Q.inverse())
    assert quotient_action(params, U.gen("E"), K * K) == (K * E).scale(Q.inverse() - Q)
    assert quotient_action(params, U.one(), F * K) == F * K
    assert quotient_action(params, U.gen("E"), A.one()) == A.zero()
    assert quotient_action(params, U.gen("K"), A.one()) == A.one()


def test_b_relations():
    B = homspace.make_B(1, -1, 2)
    x, xs, z = B.gen("x"), B.gen("xs"), B.gen("z")
    t, m, n = Scalar(2), Scalar(1), Scalar(-1)
    assert xs * x == B.scalar(-Q * Q * n) + z.scale(t) - (z * z).scale(m)
    assert x * xs - xs * x == z.scale((Q * Q - 1) * t) - (z * z).scale((Q**4 - 1) * m)
    assert x * z == (z * x).scale(Q * Q)


@pytest.mark.parametrize("mu, nu, tau", GRID)
def test_embedding(mu, nu, tau):
    assert homspace.check_embedding(mu, nu, tau).passed


def test_embedding_images():
    mu, nu, tau = 1, 1, 1
    A = make_quotient((mu, nu, tau))
    B = homspace.make_B(mu, nu, tau)
    emb = homspace.embedding_hom(*B.params)
    F, K = A.gen("F"), A.gen("K")
    assert emb(B.gen("x")) == (F * K).scale(S * (Q.inverse() - Q))
    assert emb(B.gen("z")) == K * K
    assert emb(B.gen("xs") * B.gen("x")) == A.scalar(-Q * Q * nu) + (K * K).scale(tau) - (K**4).scale(mu)
    assert emb(B.one()) == A.one()


def test_v_rep_examples():
    r = homspace.build_v_rep(1, -1, 2, 4)
    e00 = {(0, 0): ONE}
    assert r.x(e00) == {(1, 0): ONE}
    yx = r.y(r.x(e00))
    assert yx == {(0, 0): Q * Q, (0, 2): Scalar(2), (0, 4): -ONE}
    xy = r.x(r.y(e00))
    assert xy == {(0, 0): Q * Q, (0, 2): Q * Q * 2, (0, 4): -(Q**4)}
    # x z - q^2 z x on e00
    assert r.apply_word(("x", "z"), e00) == {(1, 2): ONE}
    zx = r.apply_word(("z", "x"), e00)
    assert {k: v * Q * Q for k, v in zx.items()} == {(1, 2): ONE}


@pytest.mark.parametrize("mu, nu, tau", [(1, 1, 1), (0, 0, 0), (-1, 1, -2), (1, -1, 2)])
def test_v_rep(mu, nu, tau):
    assert homspace.check_v_rep(mu, nu, tau).passed


def test_action_table_examples():
    mu, nu, tau = 1, -1, 2
    B = homspace.make_B(mu, nu, tau)
    x, xs, z = B.gen("x"), B.gen("xs"), B.gen("z")
    act = lambda g, b: homspace.action_on_B(mu, nu, tau, g, b)
    assert act("E", x) == B.scalar(S * tau) - z.scale(S * (1 + Q * Q) * mu)
    assert act("E", z) == xs.scale(S.inverse())
    assert act("F", x) == B.zero()
    assert act("K^-1", x) == x.scale(Q)
    assert act("K", x**2 * z**3) == (x**2 * z**3).scale(Q**-2)
    assert act(uq.make_uq(mu).one(), x * z) == x * z


@pytest.mark.parametrize("mu, nu, tau", GRID[::4])
def test_action_consistency(mu, nu, tau):
    assert homspace.check_action_consistency(mu, nu, tau, samples=5).passed
    assert homspace.check_k_grading(mu, nu, tau).passed


@pytest.mark.parametrize("mu, nu, tau", GRID[::5])
def test_theta(mu, nu, tau):
    assert homspace.check_theta(mu, nu, tau).passed


def test_theta_examples():
    A, th = homspace.make_D_and_theta(1, -1, 1)
    B = th.source
    assert th(B.gen("z")) == A.gen("Ki") ** 2
    assert th(B.one()) == A.one()
    assert th.in_D(A.gen("Ki") ** 2) and not th.in_D(A.gen("K"))
