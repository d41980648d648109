"""The family U_q(mu, nu), its comultiplications, counit, antipodes, the
co-linking weak Hopf algebra assembled from it, and the Miyashita-Ulbrich
actions.

Generators are E, F, K and Ki (the formal inverse of K, printed K^-1).
Words are ordered by weighted degree with E, F of weight 2 and K, Ki of
weight 1, then lexicographically with F < Ki < K < E, so normal monomials
read F^a K^b E^c.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .freealg import Hom, NcPoly, Presentation, PresentationError, TensorPoly, random_element, tensor
from .report import Report
from .scalar import ONE, ZERO, Q, Scalar, lambda_constant

STANDARD_LABELS = (Fraction(-1), Fraction(0), Fraction(1))

UQ_GENS = ("F", "Ki", "K", "E")
UQ_WEIGHTS = {"E": 2, "F": 2, "K": 1, "Ki": 1}
UQ_STAR = {"E": {("F",): 1}, "F": {("E",): 1}, "K": {("K",): 1}, "Ki": {("Ki",): 1}}


class LabelError(ValueError):
    pass


def label(x, *, expert: bool = False) -> Fraction:
    """Parse a parameter value; outside expert mode only -1, 0, 1 are allowed."""
    if isinstance(x, str):
        x = {"+": "1", "-": "-1"}.get(x.strip(), x.strip())
    try:
        v = Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise LabelError(f"not a parameter value: {x!r}") from None
    if not expert and v not in STANDARD_LABELS:
        raise LabelError(f"parameter {x!r} outside {{-1, 0, 1}} (use expert mode for rescaled values)")
    return v


def fmt(v: Fraction) -> str:
    return str(v)


def _sc(v: Fraction) -> Scalar:
    return Scalar(v)


def commutator_rhs(mu, nu) -> dict:
    lam = lambda_constant()
    return {("K", "K"): lam * _sc(mu), ("Ki", "Ki"): -lam * _sc(nu)}


def uq_rules(mu, nu) -> dict:
    qi = Q.inverse()
    rules = {
        ("K", "F"): {("F", "K"): qi},
        ("Ki", "F"): {("F", "Ki"): Q},
        ("E", "K"): {("K", "E"): qi},
        ("E", "Ki"): {("Ki", "E"): Q},
    }
    ef = {("F", "E"): ONE}
    ef.update(commutator_rhs(mu, nu))
    rules[("E", "F")] = ef
    return rules


@lru_cache(maxsize=None)
def _make_uq(mu: Fraction, nu: Fraction) -> Presentation:
    return Presentation(
        f"Uq({fmt(mu)},{fmt(nu)})",
        UQ_GENS,
        uq_rules(mu, nu),
        family="Uq",
        params=(mu, nu),
        weights=UQ_WEIGHTS,
        inverses=[("K", "Ki")],
        star=UQ_STAR,
    )


def make_uq(mu, nu=None, *, expert: bool = False) -> Presentation:
    """U_q(mu, nu); ``make_uq(mu)`` is the Hopf algebra U_q(mu) = U_q(mu, mu)."""
    if nu is None:
        nu = mu
    return _make_uq(label(mu, expert=expert), label(nu, expert=expert))


def labels_of(p) -> tuple[Fraction, Fraction]:
    pres = p.pres if isinstance(p, NcPoly) else p
    if pres.family not in ("Uq", "A"):
        raise PresentationError(f"{pres.name} is not a U_q(mu,nu) component")
    return pres.params[0], pres.params[1]


# comultiplication -------------------------------------------------------------

@lru_cache(maxsize=None)
def delta_hom(mu: Fraction, nu: Fraction, ups: Fraction) -> Hom:
    """Delta^ups_{mu nu}: U_q(mu,nu) -> U_q(mu,ups) (x) U_q(ups,nu).

    The image of F is not listed among the defining data; it is forced by
    requiring a *-homomorphism: Delta(F) = Delta(E)^* = F(x)K + K^-1(x)F.
    """
    src = _make_uq(mu, nu)
    L, R = _make_uq(mu, ups), _make_uq(ups, nu)
    g = lambda P, n: P.gen(n)
    imgs = {
        "E": tensor(g(L, "E"), g(R, "K")) + tensor(g(L, "Ki"), g(R, "E")),
        "F": tensor(g(L, "F"), g(R, "K")) + tensor(g(L, "Ki"), g(R, "F")),
        "K": tensor(g(L, "K"), g(R, "K")),
        "Ki": tensor(g(L, "Ki"), g(R, "Ki")),
    }
    return Hom(src, imgs, target=(L, R), name=f"Delta^{fmt(ups)}_{{{fmt(mu)},{fmt(nu)}}}")


def delta_uq(mu, nu, ups, p: NcPoly) -> TensorPoly:
    mu, nu, ups = label(mu, expert=True), label(nu, expert=True), label(ups, expert=True)
    if p.pres is not _make_uq(mu, nu):
        raise PresentationError(f"delta_uq expects an element of Uq({fmt(mu)},{fmt(nu)}), got {p.pres.name}")
    return delta_hom(mu, nu, ups)(p)


@lru_cache(maxsize=None)
def counit_hom(mu: Fraction) -> Hom:
    return Hom(_make_uq(mu, mu), {"E": ZERO, "F": ZERO, "K": ONE, "Ki": ONE}, target=None, name=f"eps_{fmt(mu)}")


def counit_uq(mu, p: NcPoly) -> Scalar:
    a, b = labels_of(p)
    if a != b:
        raise PresentationError(f"counit is only defined on diagonal components, got {p.pres.name}")
    if label(mu, expert=True) != a:
        raise PresentationError(f"label mismatch: mu={mu} for {p.pres.name}")
    return counit_hom(a)(p)


@lru_cache(maxsize=None)
def antipode_hom(mu: Fraction, nu: Fraction) -> Hom:
    """S_{mu nu}: U_q(mu,nu) -> U_q(nu,mu), an anti-homomorphism."""
    src, tgt = _make_uq(mu, nu), _make_uq(nu, mu)
    imgs = {
        "E": tgt.gen("E").scale(-Q),
        "F": tgt.gen("F").scale(-Q.inverse()),
        "K": tgt.gen("Ki"),
        "Ki": tgt.gen("K"),
    }
    return Hom(src, imgs, target=tgt, anti=True, name=f"S_{{{fmt(mu)},{fmt(nu)}}}")


@lru_cache(maxsize=None)
def antipode_inverse_hom(mu: Fraction, nu: Fraction) -> Hom:
    """Inverse of S_{nu mu}, as a map U_q(mu,nu) -> U_q(nu,mu)."""
    src, tgt = _make_uq(mu, nu), _make_uq(nu, mu)
    imgs = {
        "E": tgt.gen("E").scale(-Q.inverse()),
        "F": tgt.gen("F").scale(-Q),
        "K": tgt.gen("Ki"),
        "Ki": tgt.gen("K"),
    }
    return Hom(src, imgs, target=tgt, anti=True, name=f"S^-1_{{{fmt(nu)},{fmt(mu)}}}")


def antipode_uq(mu, nu, p: NcPoly) -> NcPoly:
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    if p.pres is not _make_uq(mu, nu):
        raise PresentationError(f"antipode_uq expects an element of Uq({fmt(mu)},{fmt(nu)}), got {p.pres.name}")
    return antipode_hom(mu, nu)(p)


def _params(**kw) -> dict:
    return {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in kw.items()}


def check_delta_relations(mu, nu, ups) -> Report:
    """Delta^ups_{mu nu} respects every defining relation of U_q(mu,nu)."""
    mu, nu, ups = (label(v, expert=True) for v in (mu, nu, ups))
    rep = Report("delta-relations")
    delta_hom(mu, nu, ups).preserves_relations(rep, "hopf.delta_relations", _params(mu=mu, nu=nu, ups=ups))
    return rep


def commutator_cancellation(mu, nu, ups) -> tuple[TensorPoly, TensorPoly]:
    """Both sides of Delta([E,F]) = lambda(mu Delta(K^2) - nu Delta(K^-2))."""
    mu, nu, ups = (label(v, expert=True) for v in (mu, nu, ups))
    U = _make_uq(mu, nu)
    d = delta_hom(mu, nu, ups)
    E, F, K, Ki = (d.image(g) for g in ("E", "F", "K", "Ki"))
    lhs = E * F - F * E
    lam = lambda_constant()
    rhs = (K * K).scale(lam * _sc(mu)) - (Ki * Ki).scale(lam * _sc(nu))
    return lhs, rhs


def check_commutator_steps(mu, nu, ups) -> Report:
    """The expansion of [Delta(E), Delta(F)] pairwise, step by step.

    With Delta(E) = e1 + e2 and Delta(F) = f1 + f2 the four brackets
    [e_i, f_j] are: [E,F] (x) K^2, two pieces that vanish, and
    K^-2 (x) [E,F]; the ups-terms of the outer two then cancel.
    """
    mu, nu, ups = (label(v, expert=True) for v in (mu, nu, ups))
    L, R = _make_uq(mu, ups), _make_uq(ups, nu)
    g = lambda P, n: P.gen(n)
    e1, e2 = tensor(g(L, "E"), g(R, "K")), tensor(g(L, "Ki"), g(R, "E"))
    f1, f2 = tensor(g(L, "F"), g(R, "K")), tensor(g(L, "Ki"), g(R, "F"))
    br = lambda a, b: a * b - b * a
    lam = lambda_constant()
    K2, Ki2 = g(L, "K") ** 2, g(L, "Ki") ** 2
    RK2, RKi2 = g(R, "K") ** 2, g(R, "Ki") ** 2
    params = _params(mu=mu, nu=nu, ups=ups)
    rep = Report("commutator-steps")
    zero = TensorPoly.zero((L, R))
    outer = tensor((K2.scale(_sc(mu)) - Ki2.scale(_sc(ups))).scale(lam), RK2)
    inner = tensor(Ki2, (RK2.scale(_sc(ups)) - RKi2.scale(_sc(nu))).scale(lam))
    rep.expect_equal("hopf.commutator.first", params, br(e1, f1), outer)
    rep.expect_equal("hopf.commutator.mixed_Ki_F", params, br(e2, f1), zero)
    rep.expect_equal("hopf.commutator.mixed_E_Ki", params, br(e1, f2), zero)
    rep.expect_equal("hopf.commutator.last", params, br(e2, f2), inner)
    collapsed = tensor(K2, RK2).scale(lam * _sc(mu)) - tensor(Ki2, RKi2).scale(lam * _sc(nu))
    rep.expect_equal("hopf.commutator.ups_cancels", params, outer + inner, collapsed)
    lhs, rhs = commutator_cancellation(mu, nu, ups)
    rep.expect_equal("hopf.commutator.total", params, lhs, collapsed)
    rep.expect_equal("hopf.commutator.delta", params, rhs, collapsed)
    return rep


def check_coassociativity(mu, nu, ups, om) -> Report:
    """(Delta^om_{mu ups} (x) id) Delta^ups_{mu nu} = (id (x) Delta^ups_{om nu}) Delta^om_{mu nu} on generators."""
    mu, nu, ups, om = (label(v, expert=True) for v in (mu, nu, ups, om))
    rep = Report("coassociativity")
    U = _make_uq(mu, nu)
    for g in U.gens:
        x = U.gen(g)
        lhs = delta_hom(mu, nu, ups)(x).map_leg(0, delta_hom(mu, ups, om))
        rhs = delta_hom(mu, nu, om)(x).map_leg(1, delta_hom(om, nu, ups))
        rep.expect_equal(f"hopf.coassociativity[{g}]", _params(mu=mu, nu=nu, ups=ups, om=om), lhs, rhs)
    return rep


def check_antipode_relations(mu, nu) -> Report:
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    rep = Report("antipode-relations")
    antipode_hom(mu, nu).preserves_relations(rep, "hopf.antipode_relations", _params(mu=mu, nu=nu))
    return rep


def check_antipode_identities(mu, nu, p: NcPoly) -> Report:
    """S_{mu nu}(p_(1)) p_(2) = eps(p) 1_{nu mu} and p_(1) S_{nu mu}(p_(2)) = eps(p) 1_{mu nu}."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    if p.pres is not _make_uq(mu, mu):
        raise PresentationError(f"expected an element of Uq({fmt(mu)},{fmt(mu)}), got {p.pres.name}")
    rep = Report("antipode-identities")
    eps = counit_hom(mu)(p)
    d = delta_hom(mu, mu, nu)(p)
    left = d.map_leg(0, antipode_hom(mu, nu)).multiply_legs()
    right = d.map_leg(1, antipode_hom(nu, mu)).multiply_legs()
    params = _params(mu=mu, nu=nu, element=str(p))
    rep.expect_equal("hopf.antipode_identity.left", params, left, _make_uq(nu, mu).scalar(eps))
    rep.expect_equal("hopf.antipode_identity.right", params, right, _make_uq(mu, nu).scalar(eps))
    return rep


def check_flip_law(mu, nu, ups) -> Report:
    """(S_{mu ups} (x) S_{ups nu}) Delta^ups_{mu nu} = (Delta^ups_{nu mu})^op S_{mu nu} on generators."""
    mu, nu, ups = (label(v, expert=True) for v in (mu, nu, ups))
    rep = Report("flip-law")
    U = _make_uq(mu, nu)
    for g in U.gens:
        x = U.gen(g)
        lhs = delta_hom(mu, nu, ups)(x).map_legs([antipode_hom(mu, ups), antipode_hom(ups, nu)])
        rhs = delta_hom(nu, mu, ups)(antipode_hom(mu, nu)(x)).permute((1, 0))
        rep.expect_equal(f"hopf.flip_law[{g}]", _params(mu=mu, nu=nu, ups=ups), lhs, rhs)
    return rep


def check_star_antipode(mu, nu) -> Report:
    """S_{nu mu}(S_{mu nu}(p)^*)^* = p on generators."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    rep = Report("star-antipode")
    U = _make_uq(mu, nu)
    for g in U.gens:
        x = U.gen(g)
        y = antipode_hom(nu, mu)(antipode_hom(mu, nu)(x).star()).star()
        rep.expect_equal(f"hopf.star_antipode[{g}]", _params(mu=mu, nu=nu), y, x)
    return rep


def random_uq(mu, nu, rng: random.Random, degree: int, **kw) -> NcPoly:
    return random_element(make_uq(mu, nu, expert=True), rng, degree, **kw)


# co-linking weak Hopf algebra ------------------------------------------------

class HElement:
    """An element of H^{(x)n}: a sparse map from component tuples to tensors.

    Components are identified by their presentations, so a key is a tuple of
    U_q(mu,nu) presentations and the value a TensorPoly over exactly those.
    ``n = 0`` encodes a scalar under the key ``()``.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: dict | None = None):
        self.parts = {k: v for k, v in (parts or {}).items() if v}

    @classmethod
    def single(cls, x) -> "HElement":
        t = x.as_tensor() if isinstance(x, NcPoly) else x
        return cls({t.pres: t})

    def _combine(self, other: "HElement", op) -> "HElement":
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = op(out[k], v) if k in out else op(TensorPoly.zero(k), v)
        return HElement(out)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other: "HElement") -> "HElement":
        out: dict = {}
        for k, v in self.parts.items():
            w = other.parts.get(k)
            if w is not None:
                out[k] = v * w
        return HElement(out)

    def scale(self, c) -> "HElement":
        return HElement({k: v.scale(c) for k, v in self.parts.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, HElement) and self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __bool__(self):
        return bool(self.parts)

    def nterms(self) -> int:
        return sum(len(v.terms) for v in self.parts.values())

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for k in sorted(self.parts, key=lambda k: tuple(p.name for p in k)):
            chunks.append(f"{{{', '.join(p.name for p in k)}}}: {self.parts[k]}")
        return " | ".join(chunks)

    __repr__ = __str__


@dataclass
class CoLinkingSystem:
    labels: tuple
    components: dict = field(default_factory=dict)

    def unit(self) -> HElement:
        return HElement({(U,): U.one().as_tensor() for U in self.components.values()})

    def elem(self, x: NcPoly) -> HElement:
        return HElement.single(x)

    # leg maps: each returns a list of maps from words of a component
    def _delta_maps(self, U):
        mu, nu = labels_of(U)
        return [delta_hom(mu, nu, u) for u in self.labels]

    def _counit_maps(self, U):
        mu, nu = labels_of(U)
        if mu != nu:
            return []
        return [counit_hom(mu)]

    def _antipode_maps(self, U):
        mu, nu = labels_of(U)
        return [antipode_hom(mu, nu)]

    def _apply(self, h: HElement, i: int, maps_for) -> HElement:
        out: dict = {}
        for k, v in h.parts.items():
            for m in maps_for(k[i]):
                t = v.map_leg(i, m)
                if not t:
                    continue
                key = t.pres
                out[key] = out[key] + t if key in out else t
        return HElement(out)

    def delta(self, h: HElement, i: int = 0) -> HElement:
        return self._apply(h, i, self._delta_maps)

    def counit(self, h: HElement, i: int = 0) -> HElement:
        return self._apply(h, i, self._counit_maps)

    def antipode(self, h: HElement, i: int = 0) -> HElement:
        return self._apply(h, i, self._antipode_maps)

    def counit_scalar(self, h: HElement):
        if any(len(k) != 1 for k in h.parts):
            raise PresentationError("counit_scalar expects a one-leg element")
        r = self.counit(h)
        return r.parts[()].to_scalar() if () in r.parts else ZERO

    def multiply(self, h: HElement, i: int) -> HElement:
        """Multiply legs i and i+1 (zero when the components differ)."""
        out: dict = {}
        for k, v in h.parts.items():
            if k[i] is not k[i + 1]:
                continue
            U = k[i]
            terms: dict = {}
            for key, c in v.terms.items():
                prod = U.mul_words(key[i], key[i + 1])
                for w, a in prod.items():
                    nk = key[:i] + (w,) + key[i + 2:]
                    terms[nk] = terms.get(nk, ZERO) + a * c
            nkey = k[:i + 1] + k[i + 2:]
            t = TensorPoly(nkey, terms, normal=True)
            out[nkey] = out[nkey] + t if nkey in out else t
        return HElement(out)

    def tensor(self, *hs: HElement) -> HElement:
        out: dict = {(): TensorPoly((), {(): ONE}, normal=True)}
        for h in hs:
            nxt: dict = {}
            for k1, v1 in out.items():
                for k2, v2 in h.parts.items():
                    t = tensor(v1, v2)
                    key = k1 + k2
                    nxt[key] = nxt[key] + t if key in nxt else t
            out = nxt
        return HElement(out)


def build_colinking(labels) -> CoLinkingSystem:
    labs = tuple(sorted({label(v) for v in labels}))
    if len(labs) < 2:
        raise LabelError("a co-linking system needs at least two labels")
    if len(labs) > 3:
        raise LabelError("at most three labels")
    comps = {(a, b): _make_uq(a, b) for a in labs for b in labs}
    return CoLinkingSystem(labs, comps)


def _random_h(sys: CoLinkingSystem, rng: random.Random, degree: int) -> NcPoly:
    a, b = rng.choice(sys.labels), rng.choice(sys.labels)
    return random_element(sys.components[(a, b)], rng, degree)


def check_weak_hopf_axioms(sys: CoLinkingSystem, samples: int = 100, degree: int = 3, seed: int = 0) -> Report:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    rep = Report("weakhopf")
    labs = ",".join(fmt(v) for v in sys.labels)
    base = {"labels": labs}
    one = sys.unit()
    d1 = sys.delta(one)
    one_one = sys.tensor(one, one)
    rep.expect("weakhopf.delta_unit_is_weak", dict(base, terms=d1.nterms()), d1 != one_one,
               f"Delta_H(1) = 1 (x) 1 = {d1}")
    rep.expect_equal("weakhopf.counit_unit", base, sys.counit_scalar(one), Scalar(len(sys.labels)))
    # A.7: (Delta(1) (x) 1)(1 (x) Delta(1)) = Delta^2(1) = (1 (x) Delta(1))(Delta(1) (x) 1)
    d2 = sys.delta(d1, 0)
    left = sys.tensor(d1, one) * sys.tensor(one, d1)
    right = sys.tensor(one, d1) * sys.tensor(d1, one)
    rep.expect_equal("weakhopf.A7.first", base, left, d2)
    rep.expect_equal("weakhopf.A7.swapped", base, right, d2)

    rng = random.Random(f"weakhopf:{labs}:{seed}")
    items = []
    for (a, b), U in sorted(sys.components.items()):
        for g in U.gens:
            items.append(("gen", U.gen(g)))
        items.append(("unit", U.one()))
    for i in range(samples):
        items.append((f"sample{i}", _random_h(sys, rng, degree)))
    for idx, (tag, x) in enumerate(items):
        params = dict(base, element=str(x), component=x.pres.name, kind=tag)
        _weak_hopf_single(sys, rep, x, params, d1)
        y = items[(idx + 1) % len(items)][1]
        z = items[(idx + 2) % len(items)][1]
        _weak_hopf_a6(sys, rep, x, y, z, dict(params, y=str(y), z=str(z)))
    return rep


def _weak_hopf_single(sys, rep, x, params, d1):
    hx = sys.elem(x)
    dx = sys.delta(hx)
    rep.expect_equal("weakhopf.coassociativity", params, sys.delta(dx, 0), sys.delta(dx, 1))
    rep.expect_equal("weakhopf.counit.left", params, sys.counit(dx, 0), hx)
    rep.expect_equal("weakhopf.counit.right", params, sys.counit(dx, 1), hx)
    one = sys.unit()
    # A.8: x_(1) S(x_(2)) = (eps (x) id)(Delta(1)(x (x) 1))
    lhs = sys.multiply(sys.antipode(dx, 1), 0)
    rhs = sys.counit(d1 * sys.tensor(hx, one), 0)
    rep.expect_equal("weakhopf.A8.first", params, lhs, rhs)
    # S(x_(1)) x_(2) = (id (x) eps)((1 (x) x) Delta(1))
    lhs = sys.multiply(sys.antipode(dx, 0), 0)
    rhs = sys.counit(sys.tensor(one, hx) * d1, 1)
    rep.expect_equal("weakhopf.A8.second", params, lhs, rhs)
    # A.9: S(x_(1)) x_(2) S(x_(3)) = S(x)
    d2 = sys.delta(dx, 0)
    t = sys.antipode(sys.antipode(d2, 0), 2)
    lhs = sys.multiply(sys.multiply(t, 0), 0)
    rep.expect_equal("weakhopf.A9", params, lhs, sys.antipode(hx, 0))


def _weak_hopf_a6(sys, rep, x, y, z, params):
    hx, hy, hz = sys.elem(x), sys.elem(y), sys.elem(z)
    target = sys.counit_scalar(hx * hy * hz)
    dy = sys.delta(hy)
    v1 = _eps_eps(sys, hx, dy, hz, swap=False)
    v2 = _eps_eps(sys, hx, dy, hz, swap=True)
    rep.expect_equal("weakhopf.A6.first", params, v1, target)
    rep.expect_equal("weakhopf.A6.second", params, v2, target)


def _eps_eps(sys, hx, dy, hz, *, swap: bool):
    """sum eps(x y_(1)) eps(y_(2) z), or with y_(1), y_(2) exchanged."""
    total = ZERO
    x = next(iter(hx.parts.values()))
    z = next(iter(hz.parts.values()))
    xU, zU = x.pres[0], z.pres[0]
    for k, t in dy.parts.items():
        first, second = (k[1], k[0]) if swap else (k[0], k[1])
        i1, i2 = (1, 0) if swap else (0, 1)
        if first is not xU or second is not zU:
            continue
        mu, nu = labels_of(xU)
        mu2, nu2 = labels_of(zU)
        if mu != nu or mu2 != nu2:
            continue
        e1, e2 = counit_hom(mu), counit_hom(mu2)
        for key, c in t.terms.items():
            a = sum_eps(e1, xU, x, key[i1], left=True)
            if not a:
                continue
            b = sum_eps(e2, zU, z, key[i2], left=False)
            total = total + c * a * b
    return total


def sum_eps(eps: Hom, U: Presentation, other: TensorPoly, w, *, left: bool):
    acc = ZERO
    for (u,), c in other.terms.items():
        prod = U.mul_words(u, w) if left else U.mul_words(w, u)
        for v, a in prod.items():
            acc = acc + c * a * eps.word(v)
    return acc


# Miyashita-Ulbrich actions ------------------------------------------------------

def mu_action_left(mu, nu, x: NcPoly, y: NcPoly) -> NcPoly:
    """x |> y = x_(1) y S_{nu mu}(x_(2)) for x in U_q(mu), y in U_q(mu,nu)."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    if x.pres is not _make_uq(mu, mu) or y.pres is not _make_uq(mu, nu):
        raise PresentationError(f"label mismatch: {x.pres.name} acting on {y.pres.name} for ({fmt(mu)},{fmt(nu)})")
    d = delta_hom(mu, mu, nu)(x).map_leg(1, antipode_hom(nu, mu))
    return _sandwich(d, y)


def mu_action_right(mu, nu, y: NcPoly, x: NcPoly) -> NcPoly:
    """y <| x = S_{nu mu}(x_(1)) y x_(2) for x in U_q(nu), y in U_q(mu,nu)."""
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    if x.pres is not _make_uq(nu, nu) or y.pres is not _make_uq(mu, nu):
        raise PresentationError(f"label mismatch: {y.pres.name} acted on by {x.pres.name} for ({fmt(mu)},{fmt(nu)})")
    d = delta_hom(nu, nu, mu)(x).map_leg(0, antipode_hom(nu, mu))
    return _sandwich(d, y)


def _sandwich(d: TensorPoly, y: NcPoly) -> NcPoly:
    U = y.pres
    out = U.zero()
    for (u, v), c in d.terms.items():
        out = out + (NcPoly(U, {u: c}, normal=True) * y * NcPoly(U, {v: ONE}, normal=True))
    return out


def check_module_star(mu, nu, samples: int = 50, degree: int = 3, seed: int = 0, *, act=None, algebra=None) -> Report:
    """Module-algebra and star laws for the MU action (or any supplied action).

    ``act(x, y)`` defaults to the left MU action on U_q(mu,nu); ``algebra`` is
    the presentation the action lives on.
    """
    mu, nu = label(mu, expert=True), label(nu, expert=True)
    A = algebra or _make_uq(mu, nu)
    if act is None:
        act = lambda x, y: mu_action_left(mu, nu, x, y)
    U = _make_uq(mu, mu)
    rep = Report("module-star")
    rng = random.Random(f"module-star:{A.name}:{seed}")
    cases = [(U.gen(g), A.gen(h), A.gen(k)) for g in U.gens for h in A.gens for k in A.gens]
    for _ in range(samples):
        cases.append((random_element(U, rng, degree), random_element(A, rng, degree), random_element(A, rng, degree)))
    dmap = delta_hom(mu, mu, mu)
    S = antipode_hom(mu, mu)
    for x, y, z in cases:
        params = {"algebra": A.name, "x": str(x), "y": str(y), "z": str(z)}
        lhs = act(x, y * z)
        rhs = A.zero()
        for (u, v), c in dmap(x).terms.items():
            rhs = rhs + (act(NcPoly(U, {u: c}, normal=True), y) * act(NcPoly(U, {v: ONE}, normal=True), z))
        rep.expect_equal("module.multiplicative", params, lhs, rhs)
        rep.expect_equal("module.star", params, act(x, y.star()), act(S(x).star(), y).star())
    return rep
