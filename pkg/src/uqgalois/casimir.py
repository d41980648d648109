"""Casimir elements of U_q(mu,nu) and the quotients A^tau_{mu nu}.

In A^tau_{mu nu} both EF and FE are rewritten to polynomials in K.  Powers
of K are moved to the right of E as well as F, so normal monomials are
F^a K^b and E^c K^b.  (Keeping K left of E would need a separate rule for
every word F K^b E, which no finite rewriting system provides.)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .freealg import NcPoly, Presentation, PresentationError
from .report import Report
from .scalar import ONE, Q, Scalar, lambda_constant
from .uq import (
    UQ_STAR,
    UQ_WEIGHTS,
    _make_uq,
    _params,
    antipode_hom,
    fmt,
    label,
    mu_action_left,
    mu_action_right,
    uq_rules,
)


@dataclass(frozen=True)
class CasimirParams:
    mu: Fraction
    nu: Fraction
    tau: Fraction

    @classmethod
    def of(cls, mu, nu, tau, *, expert: bool = False) -> "CasimirParams":
        return cls(label(mu, expert=expert), label(nu, expert=expert), Fraction(tau))


def _casimir_terms(mu, nu, form: str) -> dict:
    lam2 = lambda_constant() ** 2
    qi = Q.inverse()
    if form == "EF":
        return {("E", "F"): ONE, ("K", "K"): lam2 * qi * Scalar(mu), ("Ki", "Ki"): lam2 * Q * Scalar(nu)}
    if form == "FE":
        return {("F", "E"): ONE, ("K", "K"): lam2 * Q * Scalar(mu), ("Ki", "Ki"): lam2 * qi * Scalar(nu)}
    raise ValueError(f"unknown Casimir form {form!r}; use 'EF' or 'FE'")


def casimir_element(mu, nu, form: str = "EF") -> NcPoly:
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    U = _make_uq(mu, nu)
    return NcPoly(U, {U.word(w): c for w, c in _casimir_terms(mu, nu, form).items()})


def check_casimir(mu, nu) -> Report:
    """Both forms agree, C is self-adjoint and central."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    rep = Report("casimir")
    params = _params(mu=mu, nu=nu)
    c1, c2 = casimir_element(mu, nu, "EF"), casimir_element(mu, nu, "FE")
    rep.expect_equal("casimir.forms_agree", params, c1, c2)
    rep.expect_equal("casimir.self_adjoint", params, c1.star(), c1)
    rep.extend(check_central(mu, nu))
    return rep


def check_central(mu, nu) -> Report:
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    rep = Report("central")
    U = _make_uq(mu, nu)
    C = casimir_element(mu, nu)
    for g in U.gens:
        x = U.gen(g)
        rep.expect_equal(f"casimir.central[{g}]", _params(mu=mu, nu=nu), C * x - x * C, U.zero())
    return rep


A_GENS = ("F", "E", "Ki", "K")


def quotient_rules(mu, nu, tau) -> dict:
    rules = uq_rules(mu, nu)
    del rules[("E", "F")], rules[("E", "K")], rules[("E", "Ki")]
    rules[("K", "E")] = {("E", "K"): Q}
    rules[("Ki", "E")] = {("E", "Ki"): Q.inverse()}
    lam2 = lambda_constant() ** 2
    qi = Q.inverse()
    c = Scalar(tau) * qi * lam2
    rules[("E", "F")] = {(): c, ("K", "K"): -lam2 * qi * Scalar(mu), ("Ki", "Ki"): -lam2 * Q * Scalar(nu)}
    rules[("F", "E")] = {(): c, ("K", "K"): -lam2 * Q * Scalar(mu), ("Ki", "Ki"): -lam2 * qi * Scalar(nu)}
    return rules


@lru_cache(maxsize=None)
def _make_quotient(mu: Fraction, nu: Fraction, tau: Fraction) -> Presentation:
    return Presentation(
        f"A({fmt(mu)},{fmt(nu)};{fmt(tau)})",
        A_GENS,
        quotient_rules(mu, nu, tau),
        family="A",
        params=(mu, nu, tau),
        weights=UQ_WEIGHTS,
        inverses=[("K", "Ki")],
        star=UQ_STAR,
    )


def make_quotient(params: CasimirParams | tuple, *, expert: bool = False) -> Presentation:
    if not isinstance(params, CasimirParams):
        params = CasimirParams.of(*params, expert=expert)
    return _make_quotient(params.mu, params.nu, params.tau)


def casimir_value(tau) -> Scalar:
    """The scalar tau q^-1 lambda^2 at which C is evaluated."""
    return Scalar(Fraction(tau)) * Q.inverse() * lambda_constant() ** 2


def project(p: NcPoly, A: Presentation) -> NcPoly:
    """pi_tau: reduce an element of U_q(mu,nu) in the quotient A."""
    if p.pres.family != "Uq" or p.pres.params[:2] != A.params[:2]:
        raise PresentationError(f"cannot project {p.pres.name} to {A.name}")
    return p.retag(A)


def lift(y: NcPoly) -> NcPoly:
    """The canonical lift: read the A-normal words in U_q(mu,nu)."""
    A = y.pres
    if A.family != "A":
        raise PresentationError(f"{A.name} is not a Casimir quotient")
    return y.retag(_make_uq(A.params[0], A.params[1]))


def quotient_action(params, x: NcPoly, y: NcPoly, *, lift_of=None) -> NcPoly:
    """Left MU action of U_q(mu) on A^tau_{mu nu}, computed on a lift.

    ``lift_of`` overrides the lift (any preimage of y in U_q(mu,nu)).
    """
    A = make_quotient(params, expert=True)
    if y.pres is not A:
        raise PresentationError(f"label mismatch: expected an element of {A.name}, got {y.pres.name}")
    mu, nu = A.params[0], A.params[1]
    ly = lift(y) if lift_of is None else lift_of
    return project(mu_action_left(mu, nu, x, ly), A)


def quotient_action_right(params, y: NcPoly, x: NcPoly) -> NcPoly:
    """Right MU action y <| x of U_q(nu) on A^tau_{mu nu}."""
    A = make_quotient(params, expert=True)
    if y.pres is not A:
        raise PresentationError(f"label mismatch: expected an element of {A.name}, got {y.pres.name}")
    mu, nu = A.params[0], A.params[1]
    return project(mu_action_right(mu, nu, lift(y), x), A)


def check_antipode_casimir(mu, nu) -> Report:
    """S_{nu mu}(C_{nu mu}) = C_{mu nu}."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    rep = Report("antipode-casimir")
    lhs = antipode_hom(nu, mu)(casimir_element(nu, mu))
    rep.expect_equal("final.antipode_casimir", _params(mu=mu, nu=nu), lhs, casimir_element(mu, nu))
    return rep
