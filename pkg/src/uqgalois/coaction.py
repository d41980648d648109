"""The right coaction of Pol_q(mu) on B^tau_{mu nu} and what is built on it:
comodule checks, compatibility with the U_q(mu)-action through the pairing,
bounded-degree ergodicity, the spin-1 corepresentation, coideal embeddings
and equivariant isomorphisms between the B's.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .freealg import Hom, NcPoly, Presentation, TensorPoly, random_element, tensor
from .homspace import action_on_B, make_B
from .linalg import RankCertificate, certified_rank
from .pairing import standard_pairing
from .pol import counit_pol_hom, delta_pol_hom, make_pol, pol_letters, variant, variant_of_label
from .report import Report
from .scalar import ONE, ZERO, Q, ExtScalar, Scalar
from .uq import fmt, label

GRID_LABELS = (-1, 0, 1)
GRID_TAUS = (-2, -1, 0, 1, 2)


class CoactionError(RuntimeError):
    pass


def default_grid():
    return [(mu, nu, tau) for mu in GRID_LABELS for nu in GRID_LABELS for tau in GRID_TAUS]


def _params(mu, nu, tau, **kw) -> dict:
    out = {"mu": fmt(Fraction(mu)), "nu": fmt(Fraction(nu)), "tau": fmt(Fraction(tau))}
    out.update(kw)
    return out


# the coaction -------------------------------------------------------------------

@dataclass
class Coaction:
    params: tuple
    B: Presentation
    P: Presentation
    hom: Hom
    relations: Report = field(repr=False)

    def __call__(self, b: NcPoly) -> TensorPoly:
        return self.hom(b)

    def image(self, g: str) -> TensorPoly:
        return self.hom.image(g)


@lru_cache(maxsize=None)
def _make_gamma(mu: Fraction, nu: Fraction, tau: Fraction) -> Coaction:
    B = make_B(mu, nu, tau, expert=True)
    P = make_pol(variant_of_label(mu))
    L = pol_letters(P)
    a, b, a_, b_ = L["a"], L["b"], L["a*"], L["b*"]
    x, xs, z, one = B.gen("x"), B.gen("xs"), B.gen("z"), B.one()
    m, t = Scalar(mu), Scalar(tau)
    q1 = ONE + Q * Q
    imgs = {
        "x": tensor(xs, b * b).scale(-Q * m) + tensor(z, b * a).scale(-Q * q1 * m)
        + tensor(x, a * a) + tensor(one, b * a).scale(Q * t),
        "z": tensor(xs, a_ * b) + tensor(z, P.one() - (b_ * b).scale(q1 * m))
        + tensor(x, b_ * a) + tensor(one, b_ * b).scale(t),
        "xs": tensor(xs, a_ * a_) + tensor(z, a_ * b_).scale(-Q * q1 * m)
        + tensor(x, b_ * b_).scale(-Q * m) + tensor(one, a_ * b_).scale(Q * t),
    }
    hom = Hom(B, imgs, target=(B, P), name=f"gamma[{B.name}]")
    rep = Report(f"gamma:{B.name}")
    params = _params(mu, nu, tau)
    hom.preserves_relations(rep, "coaction.relations", params)
    for g in B.gens:
        lhs = hom(B.gen(g).star())
        rhs = hom.image(g).map_legs([lambda w: B.monomial(w).star(), lambda w: P.monomial(w).star()])
        rep.expect_equal(f"coaction.star[{g}]", params, lhs, rhs)
    if not rep.passed:
        raise CoactionError(f"gamma on {B.name} does not respect the relations: {rep.failures[0].witness}")
    return Coaction((mu, nu, tau), B, P, hom, rep)


def make_gamma(mu, nu, tau) -> Coaction:
    return _make_gamma(label(mu, expert=True), label(nu, expert=True), Fraction(tau))


def gamma(mu, nu, tau, b: NcPoly) -> TensorPoly:
    return make_gamma(mu, nu, tau)(b)


def check_gamma_relations(mu, nu, tau) -> Report:
    rep = Report("gamma-relations")
    try:
        rep.extend(make_gamma(mu, nu, tau).relations)
    except CoactionError as e:
        rep.add("coaction.relations", _params(mu, nu, tau), False, witness=str(e))
    return rep


def check_comodule(mu, nu, tau, samples: int = 20, degree: int = 3, seed: int = 0) -> Report:
    G = make_gamma(mu, nu, tau)
    B, P = G.B, G.P
    v = P.params[0]
    D, eps = delta_pol_hom(v), counit_pol_hom(v)
    rep = Report("comodule")
    params = _params(*G.params)
    rng = random.Random(f"comodule:{fmt(G.params[0])}:{fmt(G.params[1])}:{fmt(G.params[2])}:{seed}")
    items = [B.one()] + [B.gen(g) for g in B.gens] + [random_element(B, rng, degree) for _ in range(samples)]
    for y in items:
        p = dict(params, element=str(y))
        gy = G(y)
        rep.expect_equal("coaction.coassociative", p, gy.map_leg(0, G.hom), gy.map_leg(1, D))
        rep.expect_equal("coaction.counit", p, gy.map_leg(1, eps).to_ncpoly(), y)
    return rep


def check_infinitesimal_compat(mu, nu, tau) -> Report:
    """g |> y = (id (x) <g, .>) gamma(y) for g in {E, F, K, K^-1}, y in {x, z, xs}."""
    G = make_gamma(mu, nu, tau)
    mu, nu, tau = G.params
    pr = standard_pairing(mu)
    rep = Report("infinitesimal")
    for g in ("E", "F", "K", "Ki"):
        u = (pr.U.index(g),)
        for y in ("x", "z", "xs"):
            lhs = action_on_B(mu, nu, tau, g, G.B.gen(y))
            rhs = G.image(y).map_leg(1, lambda w: pr.words(u, w)).to_ncpoly()
            rep.expect_equal(f"coaction.infinitesimal[{g},{y}]", _params(mu, nu, tau), lhs, rhs)
    return rep


# ergodicity ---------------------------------------------------------------------

def b_monomials(B: Presentation, d: int) -> list[tuple]:
    """x^k z^m and xs^k z^m (k >= 1) with k + m <= d, as normal words."""
    x, xs, z = (B.index(g) for g in ("x", "xs", "z"))
    out = []
    for k in range(d + 1):
        for m in range(d + 1 - k):
            out.append((x,) * k + (z,) * m)
            if k:
                out.append((xs,) * k + (z,) * m)
    return out


@dataclass(frozen=True)
class ErgodicResult:
    unknowns: int
    certificate: RankCertificate

    @property
    def fixed_dimension(self) -> int:
        return self.unknowns - self.certificate.rank


def ergodic_system(mu, nu, tau, d: int) -> tuple[list[tuple], list[dict]]:
    """Rows gamma(m) - m (x) 1 over the monomials m of degree <= d."""
    G = make_gamma(mu, nu, tau)
    mons = b_monomials(G.B, d)
    rows = []
    for w in mons:
        row = dict(G.hom.word(w).terms)
        key = (w, ())
        c = row.get(key, ZERO) - ONE
        if c:
            row[key] = c
        else:
            row.pop(key, None)
        rows.append(row)
    return mons, rows


def fixed_space(mu, nu, tau, d: int) -> ErgodicResult:
    mons, rows = ergodic_system(mu, nu, tau, d)
    # the row of the empty word vanishes, so the rank is at most n - 1
    cert = certified_rank(rows, upper=len(rows) - 1)
    return ErgodicResult(len(mons), cert)


def check_ergodic(mu, nu, tau, d: int = 6) -> Report:
    if d < 2:
        raise ValueError("ergodicity needs d >= 2")
    G = make_gamma(mu, nu, tau)
    rep = Report("ergodic")
    params = _params(*G.params, degree=d)
    rep.expect_equal("coaction.ergodic.unit", params, G(G.B.one()), TensorPoly.one((G.B, G.P)))
    res = fixed_space(*G.params, d)
    ok = res.fixed_dimension == 1 and res.certificate.exact
    rep.add("coaction.ergodic", params, ok,
            witness=None if ok else f"fixed-point space has dimension {res.fixed_dimension} ({res.certificate.method})",
            detail={"unknowns": res.unknowns, "rank": res.certificate.rank, "method": res.certificate.method})
    return rep


# quadratic extension --------------------------------------------------------------

_Q1 = ONE + Q * Q


class ExtPoly:
    """base + t*ext with t^2 = 1 + q^2; base and ext are NcPoly or TensorPoly."""

    __slots__ = ("base", "ext")

    def __init__(self, base, ext=None):
        self.base = base
        self.ext = base.scale(ZERO) if ext is None else ext

    @classmethod
    def t_times(cls, p) -> "ExtPoly":
        return cls(p.scale(ZERO), p)

    def __add__(self, other: "ExtPoly") -> "ExtPoly":
        return ExtPoly(self.base + other.base, self.ext + other.ext)

    def __sub__(self, other: "ExtPoly") -> "ExtPoly":
        return ExtPoly(self.base - other.base, self.ext - other.ext)

    def scale(self, c) -> "ExtPoly":
        c = ExtScalar.coerce(c)
        return ExtPoly(
            self.base.scale(c.base) + self.ext.scale(c.ext * _Q1),
            self.ext.scale(c.base) + self.base.scale(c.ext),
        )

    def combine(self, other: "ExtPoly", op) -> "ExtPoly":
        """Bilinear op (product or tensor) extended over the extension."""
        b = op(self.base, other.base) + op(self.ext, other.ext).scale(_Q1)
        e = op(self.base, other.ext) + op(self.ext, other.base)
        return ExtPoly(b, e)

    def map(self, f) -> "ExtPoly":
        return ExtPoly(f(self.base), f(self.ext))

    def is_rational(self) -> bool:
        return not self.ext

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtPoly) and self.base == other.base and self.ext == other.ext

    def __str__(self) -> str:
        if not self.ext:
            return str(self.base)
        return f"{self.base} + sqrt(1 + q^2)*({self.ext})"


def spin1_matrix(v) -> list[list[ExtPoly]]:
    """Rows and columns ordered (-1, 0, 1); c = -q mu b^*, d = a^*."""
    v = variant(v)
    P = make_pol(v)
    L = pol_letters(P)
    a, b = L["a"], L["b"]
    if v == "sl2c":
        c, d = P.gen("c"), P.gen("d")
    else:
        mu = {"+": 1, "-": -1, "0": 0}[v]
        c = L["b*"].scale(-Q * Scalar(mu))
        d = L["a*"]
    r, t = ExtPoly, ExtPoly.t_times
    qq = Q + Q.inverse()
    return [
        [r(d * d), t(d * b), r(b * b)],
        [t(d * c), r(P.one() + (b * c).scale(qq)), t(b * a)],
        [r(c * c), t(c * a), r(a * a)],
    ]


def spin1_check(v) -> Report:
    v = variant(v)
    P = make_pol(v)
    M = spin1_matrix(v)
    D, eps = delta_pol_hom(v), counit_pol_hom(v)
    rep = Report("spin1")
    params = {"variant": v}
    for i in range(3):
        for j in range(3):
            lhs = M[i][j].map(D)
            rhs = M[i][0].combine(M[0][j], tensor)
            for k in (1, 2):
                rhs = rhs + M[i][k].combine(M[k][j], tensor)
            rep.expect_equal(f"spin1.delta[{i - 1},{j - 1}]", params, lhs, rhs)
            e = ExtScalar(eps(M[i][j].base), eps(M[i][j].ext))
            rep.expect_equal(f"spin1.counit[{i - 1},{j - 1}]", params, e, ExtScalar(ONE if i == j else ZERO))
    return rep


def check_spin1_omega(mu, nu, tau) -> Report:
    """gamma(omega_j) = sum_i omega_i (x) M_ij for the omega row built from x, z, xs."""
    G = make_gamma(mu, nu, tau)
    mu, nu, tau = G.params
    B = G.B
    m = Scalar(mu)
    t = Scalar(tau)
    omega = [
        ExtPoly(B.gen("xs").scale(m)),
        ExtPoly.t_times(B.gen("z").scale(m) - B.one().scale(t * _Q1.inverse())),
        ExtPoly(B.gen("x").scale(-Q.inverse())),
    ]
    M = spin1_matrix(variant_of_label(mu))
    rep = Report("spin1-omega")
    for j in range(3):
        lhs = omega[j].map(G.hom)
        rhs = None
        for i in range(3):
            term = omega[i].combine(M[i][j], tensor)
            rhs = term if rhs is None else rhs + term
        rep.expect_equal(f"spin1.omega[{j - 1}]", _params(mu, nu, tau), lhs, rhs)
    return rep


# coideals -------------------------------------------------------------------------

def coideal_decision(mu, nu, tau) -> tuple[bool, str | None]:
    """Whether B^tau_{mu nu} is a right *-coideal of Pol_q(mu), with the violated constraint if not."""
    nu, tau = Fraction(nu), Fraction(tau)
    if nu > 0:
        return False, "q^2|t|^2 = -q^2 nu has no solution for nu = 1"
    if tau == 0 and nu == 0:
        return False, "tau = 0 and nu = 0 force r = s = t = 0"
    return True, None


@dataclass
class CoidealResult:
    params: tuple
    embeddable: bool
    reason: str | None
    images: dict | None
    report: Report


def _coideal_images_nonzero_mu(mu: Fraction, nu: Fraction, tau: Fraction, P: Presentation) -> dict:
    M = spin1_matrix(variant_of_label(mu))
    T_inv = ExtScalar(ZERO, _Q1.inverse())
    t = ONE if nu == -1 else ZERO
    coeffs = [ExtScalar(-Q * Scalar(mu) * t), ExtScalar(ZERO, -Scalar(tau) * _Q1.inverse()), ExtScalar(t)]
    s = coeffs[1]
    omega = []
    for j in range(3):
        acc = M[0][j].scale(coeffs[0])
        for i in (1, 2):
            acc = acc + M[i][j].scale(coeffs[i])
        omega.append(acc)
    m = Scalar(mu)
    X = omega[2].scale(-Q)
    Y = omega[0].scale(m)
    Z = (omega[1] - ExtPoly(P.one()).scale(s)).scale(T_inv * ExtScalar(m))
    # the constant shift mu T^-1 (s + T^-1 tau) vanishes for this s
    shift = (s + T_inv * ExtScalar(Scalar(tau))) * T_inv * ExtScalar(m)
    Z = Z + ExtPoly(P.one()).scale(shift)
    out = {}
    for name, e in (("x", X), ("xs", Y), ("z", Z)):
        if not e.is_rational():
            raise CoactionError(f"image of {name} leaves Q(s): {e}")
        out[name] = e.base
    return out


def _coideal_images_zero_mu(nu: Fraction, tau: Fraction, P: Presentation) -> dict:
    a, b, as_, bs = (P.gen(g) for g in ("a0", "b0", "a0s", "b0s"))
    n, t = Scalar(nu), Scalar(tau)
    X = (a * a).scale(-Q * n) + (a * b).scale(t)
    Z = (as_ * b).scale(-Q * n) + (bs * b).scale(t) + (bs * a).scale(-Q * n)
    return {"x": X, "xs": X.star(), "z": Z}


def coideal_embed(mu, nu, tau, *, injectivity_degree: int = 4) -> CoidealResult:
    G = make_gamma(mu, nu, tau)
    mu, nu, tau = G.params
    B, P = G.B, G.P
    params = _params(mu, nu, tau)
    rep = Report("coideal")
    ok, reason = coideal_decision(mu, nu, tau)
    if not ok:
        rep.add("coideal.decision", params, True, detail={"embeddable": False, "constraint": reason})
        return CoidealResult(G.params, False, reason, None, rep)
    rep.add("coideal.decision", params, True, detail={"embeddable": True})
    if mu == 0:
        images = _coideal_images_zero_mu(nu, tau, P)
    else:
        images = _coideal_images_nonzero_mu(mu, nu, tau, P)
    pi = Hom(B, images, target=P, name=f"coideal[{B.name}]")
    pi.preserves_relations(rep, "coideal.relations", params)
    rep.expect_equal("coideal.star[x]", params, images["x"].star(), images["xs"])
    rep.expect_equal("coideal.star[z]", params, images["z"].star(), images["z"])
    D = delta_pol_hom(P.params[0])
    for g in B.gens:
        rep.expect_equal(f"coideal.equivariant[{g}]", params, D(images[g]), G.image(g).map_leg(0, pi))
    mons = b_monomials(B, injectivity_degree)
    rows = [dict(pi.word(w).terms) for w in mons]
    cert = certified_rank(rows, upper=len(rows))
    rep.add("coideal.injective", dict(params, degree=injectivity_degree), cert.rank == len(rows) and cert.exact,
            witness=None if cert.rank == len(rows) else f"rank {cert.rank} < {len(rows)}",
            detail={"monomials": len(rows), "rank": cert.rank, "method": cert.method})
    return CoidealResult(G.params, True, None, images, rep)


# equivariant isomorphisms ------------------------------------------------------

def iso_decision(nu, tau, nu2, tau2) -> tuple[bool, Fraction | None, str | None]:
    """Is B^tau_{mu nu} equivariantly isomorphic to B^tau2_{mu nu2}; returns (answer, theta, reason)."""
    nu, tau, nu2, tau2 = (Fraction(v) for v in (nu, tau, nu2, tau2))
    if nu != nu2:
        return False, None, "nu != nu'"
    if tau2 == 0:
        if tau == 0:
            return True, Fraction(1), None
        return False, None, "tau' = 0 but tau != 0"
    theta = tau / tau2
    if nu != 0:
        if theta in (1, -1):
            return True, theta, None
        return False, None, f"tau/tau' = {theta} is not in {{-1, 1}}"
    if theta == 0:
        return False, None, "tau = 0 but tau' != 0"
    return True, theta, None


@dataclass
class IsoResult:
    isomorphic: bool
    theta: Fraction | None
    reason: str | None
    report: Report


def _scaling_hom(src: Presentation, dst: Presentation, theta: Fraction) -> Hom:
    th = Scalar(theta)
    return Hom(src, {g: dst.gen(g).scale(th) for g in src.gens}, target=dst, name=f"theta[{src.name}->{dst.name}]")


def classify_iso(mu, nu, tau, nu2, tau2) -> IsoResult:
    mu = label(mu, expert=True)
    nu, nu2 = label(nu, expert=True), label(nu2, expert=True)
    tau, tau2 = Fraction(tau), Fraction(tau2)
    params = {"mu": fmt(mu), "nu": fmt(nu), "tau": fmt(tau), "nu'": fmt(nu2), "tau'": fmt(tau2)}
    rep = Report("classify")
    ok, theta, reason = iso_decision(nu, tau, nu2, tau2)
    if not ok:
        rep.add("classify.decision", params, True,
                detail={"isomorphic": False, "reason": reason, "basis": "decision per the classification conditions"})
        return IsoResult(False, None, reason, rep)
    rep.add("classify.decision", dict(params), True, detail={"isomorphic": True, "theta": str(theta)})
    G1, G2 = make_gamma(mu, nu, tau), make_gamma(mu, nu2, tau2)
    B1, B2 = G1.B, G2.B
    phi = _scaling_hom(B1, B2, theta)
    psi = _scaling_hom(B2, B1, 1 / theta)
    p = dict(params, theta=str(theta))
    phi.preserves_relations(rep, "classify.relations", p)
    psi.preserves_relations(rep, "classify.inverse_relations", p)
    for g in B1.gens:
        rep.expect_equal(f"classify.star[{g}]", p, phi(B1.gen(g).star()), phi(B1.gen(g)).star())
        rep.expect_equal(f"classify.equivariant[{g}]", p, G2(phi(B1.gen(g))), G1.image(g).map_leg(0, phi))
        rep.expect_equal(f"classify.inverse[{g}]", p, psi(phi(B1.gen(g))), B1.gen(g))
        rep.expect_equal(f"classify.inverse2[{g}]", p, phi(psi(B2.gen(g))), B2.gen(g))
    return IsoResult(True, theta, None, rep)
