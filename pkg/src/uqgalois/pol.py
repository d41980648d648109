"""Function algebras Pol(SL_q(2,C)) and its real forms Pol_q(+), Pol_q(-), Pol_q(0).

The comultiplication is Delta(a) = a(x)a + c(x)b, i.e. the matrix of
generators is [[a, c], [b, d]].  Counit and antipode are not part of the
defining data; the values used here are the ones forced by the Hopf axioms
and are re-checked by :func:`check_pol_hopf`.
"""
from __future__ import annotations

import random
from functools import lru_cache

from .freealg import Hom, NcPoly, Presentation, PresentationError, TensorPoly, random_element, tensor
from .report import Report
from .scalar import ONE, ZERO, Q, Scalar

VARIANTS = ("+", "-", "0", "sl2c")
_ALIASES = {"+": "+", "plus": "+", "1": "+", "+1": "+", "-": "-", "minus": "-", "-1": "-", "0": "0", "zero": "0",
            "sl2c": "sl2c", "SL2C": "sl2c"}


def variant(v) -> str:
    key = str(v).strip()
    if key not in _ALIASES:
        raise PresentationError(f"unknown Pol variant {v!r}; use one of +, -, 0, sl2c")
    return _ALIASES[key]


def variant_of_label(mu) -> str:
    from fractions import Fraction

    m = Fraction(mu)
    return {Fraction(1): "+", Fraction(-1): "-", Fraction(0): "0"}[m]


def _sl2_rules():
    # b and c are moved to the left of a and d, so that a and d always meet;
    # normal monomials are b^j c^k a^i and b^j c^k d^l
    qi = Q.inverse()
    return {
        ("a", "b"): {("b", "a"): Q},
        ("a", "c"): {("c", "a"): Q},
        ("d", "b"): {("b", "d"): qi},
        ("d", "c"): {("c", "d"): qi},
        ("c", "b"): {("b", "c"): ONE},
        ("d", "a"): {(): ONE, ("b", "c"): qi},
        ("a", "d"): {(): ONE, ("b", "c"): Q},
    }


def _zero_rules():
    qi = Q.inverse()
    return {
        ("b0", "a0"): {("a0", "b0"): qi},
        ("b0", "a0s"): {("a0s", "b0"): Q},
        ("b0s", "a0"): {("a0", "b0s"): qi},
        ("b0s", "a0s"): {("a0s", "b0s"): Q},
        ("b0s", "b0"): {("b0", "b0s"): ONE},
    }


@lru_cache(maxsize=None)
def make_pol(v) -> Presentation:
    v = variant(v)
    if v == "0":
        return Presentation(
            "Pol(0)",
            ["a0", "a0s", "b0", "b0s"],
            _zero_rules(),
            family="Pol",
            params=("0",),
            inverses=[("a0", "a0s")],
            star={"a0": {("a0s",): 1}, "a0s": {("a0",): 1}, "b0": {("b0s",): 1}, "b0s": {("b0",): 1}},
        )
    star = None
    if v == "+":
        star = {"a": {("d",): 1}, "d": {("a",): 1}, "b": {("c",): -Q.inverse()}, "c": {("b",): -Q}}
    elif v == "-":
        star = {"a": {("d",): 1}, "d": {("a",): 1}, "b": {("c",): Q.inverse()}, "c": {("b",): Q}}
    return Presentation(
        f"Pol({v})",
        ["b", "c", "a", "d"],
        _sl2_rules(),
        family="Pol",
        params=(v,),
        weights={"a": 2, "b": 1, "c": 1, "d": 2},
        star=star,
    )


def pol_letters(P: Presentation) -> dict[str, NcPoly]:
    """The symbols a, b, a^*, b^* (and c, d where present) as elements."""
    if P.params[0] == "0":
        return {"a": P.gen("a0"), "b": P.gen("b0"), "a*": P.gen("a0s"), "b*": P.gen("b0s")}
    out = {g: P.gen(g) for g in P.gens}
    if P.star_table is not None:
        out["a*"] = P.gen("a").star()
        out["b*"] = P.gen("b").star()
    return out


@lru_cache(maxsize=None)
def delta_pol_hom(v) -> Hom:
    P = make_pol(v)
    t = lambda x, y: tensor(P.gen(x), P.gen(y))
    if P.params[0] == "0":
        imgs = {
            "a0": t("a0", "a0"),
            "a0s": t("a0s", "a0s"),
            "b0": t("b0", "a0") + t("a0s", "b0"),
            "b0s": t("b0s", "a0s") + t("a0", "b0s"),
        }
    else:
        imgs = {
            "a": t("a", "a") + t("c", "b"),
            "b": t("b", "a") + t("d", "b"),
            "c": t("a", "c") + t("c", "d"),
            "d": t("b", "c") + t("d", "d"),
        }
    return Hom(P, imgs, target=(P, P), name=f"Delta[{P.name}]")


def delta_pol(v, p: NcPoly) -> TensorPoly:
    return delta_pol_hom(v)(_own(v, p))


@lru_cache(maxsize=None)
def counit_pol_hom(v) -> Hom:
    P = make_pol(v)
    if P.params[0] == "0":
        imgs = {"a0": ONE, "a0s": ONE, "b0": ZERO, "b0s": ZERO}
    else:
        imgs = {"a": ONE, "d": ONE, "b": ZERO, "c": ZERO}
    return Hom(P, imgs, target=None, name=f"eps[{P.name}]")


@lru_cache(maxsize=None)
def antipode_pol_hom(v) -> Hom:
    P = make_pol(v)
    g = P.gen
    if P.params[0] == "0":
        imgs = {"a0": g("a0s"), "a0s": g("a0"), "b0": g("b0").scale(-Q), "b0s": g("b0s").scale(-Q.inverse())}
    else:
        imgs = {"a": g("d"), "d": g("a"), "b": g("b").scale(-Q), "c": g("c").scale(-Q.inverse())}
    return Hom(P, imgs, target=P, anti=True, name=f"S[{P.name}]")


def _own(v, p: NcPoly) -> NcPoly:
    P = make_pol(v)
    if p.pres is not P:
        raise PresentationError(f"expected an element of {P.name}, got {p.pres.name}")
    return p


def counit_pol(v, p: NcPoly) -> Scalar:
    return counit_pol_hom(v)(_own(v, p))


def antipode_pol(v, p: NcPoly) -> NcPoly:
    return antipode_pol_hom(v)(_own(v, p))


def check_pol_hopf(v, samples: int = 100, degree: int = 3, seed: int = 0) -> Report:
    P = make_pol(v)
    vv = P.params[0]
    rep = Report(f"pol-hopf:{P.name}")
    D, eps, S = delta_pol_hom(vv), counit_pol_hom(vv), antipode_pol_hom(vv)
    params = {"variant": vv}
    D.preserves_relations(rep, "pol.delta_relations", params)
    eps.preserves_relations(rep, "pol.counit_relations", params)
    S.preserves_relations(rep, "pol.antipode_relations", params)
    rng = random.Random(f"pol:{vv}:{seed}")
    items = [P.gen(g) for g in P.gens] + [random_element(P, rng, degree) for _ in range(samples)]
    for i, x in enumerate(items):
        p = dict(params, element=str(x))
        dx = D(x)
        rep.expect_equal("pol.coassociativity", p, dx.map_leg(0, D), dx.map_leg(1, D))
        rep.expect_equal("pol.counit.left", p, dx.map_leg(0, eps).to_ncpoly(), x)
        rep.expect_equal("pol.counit.right", p, dx.map_leg(1, eps).to_ncpoly(), x)
        e = P.scalar(eps(x))
        rep.expect_equal("pol.antipode.left", p, dx.map_leg(0, S).multiply_legs(), e)
        rep.expect_equal("pol.antipode.right", p, dx.map_leg(1, S).multiply_legs(), e)
    if P.star_table is not None:
        for g in P.gens:
            x = P.gen(g)
            lhs = D(x.star())
            rhs = D(x).map_legs([lambda w: NcPoly(P, {w: ONE}).star()] * 2)
            rep.expect_equal(f"pol.star_delta[{g}]", params, lhs, rhs)
        for g in P.gens:
            x = P.gen(g)
            rep.expect_equal(f"pol.star_antipode[{g}]", params, S(S(x).star()).star(), x)
    return rep


def check_zero_coproduct_grid(mmax: int = 2, kmax: int = 3) -> Report:
    """Delta(a0^m b0^k b0s^l) has nonzero coefficients exactly on the expected index grid.

    Expected terms: a0^(m-r+l-s) b0^(k-r) b0s^s (x) a0^(m+k-r-s) b0^r b0s^(l-s),
    0 <= r <= k, 0 <= s <= l.
    """
    P = make_pol("0")
    D = delta_pol_hom("0")
    rep = Report("pol0-grid")
    a, ai, b, bs = (P.index(g) for g in ("a0", "a0s", "b0", "b0s"))

    def apow(n):
        return (a,) * n if n >= 0 else (ai,) * (-n)

    bad = None
    for m in range(-mmax, mmax + 1):
        for k in range(kmax + 1):
            for l in range(kmax + 1):
                mono = NcPoly(P, {apow(m) + (b,) * k + (bs,) * l: ONE})
                got = D(mono)
                expected = set()
                for r in range(k + 1):
                    for s in range(l + 1):
                        left = apow(m - r + l - s) + (b,) * (k - r) + (bs,) * s
                        right = apow(m + k - r - s) + (b,) * r + (bs,) * (l - s)
                        expected.add((left, right))
                if set(got.terms) != expected:
                    bad = bad or f"m={m}, k={k}, l={l}: support {sorted(got.terms)} != {sorted(expected)}"
    rep.expect("pol.zero_coproduct_grid", {"m": f"-{mmax}..{mmax}", "k,l": f"0..{kmax}"}, bad is None, bad)
    return rep
