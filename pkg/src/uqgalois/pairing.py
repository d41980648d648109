"""The Hopf *-algebra pairing between U_q(mu) and Pol_q(mu).

Every Pol letter is a matrix coefficient of a two-dimensional corepresentation
(for Pol(+/-) the matrix [[a, c], [b, d]]; for Pol(0) the two triangular
matrices [[a0, 0], [b0, a0s]] and [[a0, b0s], [0, a0s]]).  Pairing a U_q word
with a product of letters is then a matrix entry of the corresponding tensor
product representation, which is what :class:`Pairing` evaluates.

``pair_by_derivations`` is a second, independent route: it peels the U_q word
from the left against coproducts in Pol and uses the primitive functionals
(a character for K and K^-1, twisted derivations for E and F).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .freealg import NcPoly, Presentation, PresentationError, random_element
from .linalg import RankCertificate, certified_rank
from .pol import counit_pol_hom, delta_pol_hom, make_pol, pol_letters, antipode_pol_hom, variant_of_label
from .report import Report
from .scalar import ONE, ZERO, Q, S, Scalar
from .uq import _make_uq, antipode_hom, delta_hom, fmt, label, random_uq

GROUPLIKE = ("K", "Ki")


@dataclass(frozen=True)
class PairingData:
    """Values of the generators of U_q on the letters of Pol_q.

    ``k_a`` is <K, a>; ``e_b`` is <E, b>; ``f_c`` is <F, c> for the
    variants +/-, and <F, b0s> for variant 0.  Everything else is forced.
    """

    variant: str
    k_a: Scalar
    e_b: Scalar
    f_c: Scalar

    @classmethod
    def standard(cls, mu) -> "PairingData":
        v = variant_of_label(label(mu, expert=True))
        # <F, -q b^*> = 1, with b^* = -q^-1 c (+), q^-1 c (-), b0s (0)
        f = {"+": ONE, "-": -ONE, "0": -Q.inverse()}[v]
        return cls(v, S.inverse(), ONE, f)


def _diag(x: Scalar, y: Scalar):
    return ((x, ZERO), (ZERO, y))


def _unit(i: int, j: int, c: Scalar):
    m = [[ZERO, ZERO], [ZERO, ZERO]]
    m[i][j] = c
    return tuple(tuple(r) for r in m)


def representation_tables(data: PairingData) -> tuple[dict, dict]:
    """(letters, reps): letter -> (corep, i, j), corep -> generator -> 2x2 matrix."""
    k = data.k_a
    ki = k.inverse()
    zero = _diag(ZERO, ZERO)
    if data.variant == "0":
        letters = {"a0": ("T", 0, 0), "b0": ("T", 1, 0), "a0s": ("T", 1, 1), "b0s": ("Tbar", 0, 1)}
        reps = {
            "T": {"K": _diag(k, ki), "Ki": _diag(ki, k), "E": _unit(1, 0, data.e_b), "F": zero},
            "Tbar": {"K": _diag(k, ki), "Ki": _diag(ki, k), "E": zero, "F": _unit(0, 1, data.f_c)},
        }
    else:
        letters = {"a": ("T", 0, 0), "c": ("T", 0, 1), "b": ("T", 1, 0), "d": ("T", 1, 1)}
        reps = {"T": {"K": _diag(k, ki), "Ki": _diag(ki, k), "E": _unit(1, 0, data.e_b), "F": _unit(0, 1, data.f_c)}}
    return letters, reps


class Pairing:
    """<x, y> for x in U_q(mu) and y in Pol_q(mu), memoised per word pair."""

    def __init__(self, mu, data: PairingData | None = None):
        self.mu = label(mu, expert=True)
        self.U = _make_uq(self.mu, self.mu)
        self.P = make_pol(variant_of_label(self.mu))
        self.data = data or PairingData.standard(self.mu)
        letters, self.reps = representation_tables(self.data)
        self.slot = {self.P.index(g): v for g, v in letters.items()}
        self._memo: dict = {}

    def _check(self, x: NcPoly, y: NcPoly) -> None:
        if x.pres is not self.U:
            raise PresentationError(f"label mismatch: expected an element of {self.U.name}, got {x.pres.name}")
        if y.pres is not self.P:
            raise PresentationError(f"label mismatch: expected an element of {self.P.name}, got {y.pres.name}")

    def __call__(self, x: NcPoly, y: NcPoly) -> Scalar:
        self._check(x, y)
        total = ZERO
        for u, a in x.terms.items():
            for w, b in y.terms.items():
                v = self.words(u, w)
                if v:
                    total = total + a * b * v
        return total

    def words(self, u: tuple, w: tuple) -> Scalar:
        """Pairing of a U_q word with a Pol word (neither needs to be normal)."""
        key = (u, w)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._propagate(u, w)
            self._memo[key] = hit
        return hit

    def _propagate(self, u: tuple, w: tuple) -> Scalar:
        slots = [self.slot[g] for g in w]
        start = tuple(i for _, i, _ in slots)
        target = tuple(j for _, _, j in slots)
        vec = {start: ONE}
        names = self.U.gens
        for g in u:
            vec = self._apply(vec, names[g], slots)
            if not vec:
                return ZERO
        return vec.get(target, ZERO)

    def _apply(self, vec: dict, g: str, slots) -> dict:
        # row vector times rho^{(x)m}(Delta^(m-1)(g)); Delta(E) = E(x)K + K^-1(x)E, same for F
        reps = [self.reps[r] for r, _, _ in slots]
        out: dict = {}
        if g in GROUPLIKE:
            for idx, c in vec.items():
                for p, i in enumerate(idx):
                    c = c * reps[p][g][i][i]
                    if not c:
                        break
                if c:
                    out[idx] = out.get(idx, ZERO) + c
            return {k: v for k, v in out.items() if v}
        for idx, c in vec.items():
            m = len(idx)
            for p in range(m):
                row = reps[p][g][idx[p]]
                for j in (0, 1):
                    e = row[j]
                    if not e:
                        continue
                    coeff = c * e
                    for r in range(p):
                        coeff = coeff * reps[r]["Ki"][idx[r]][idx[r]]
                    for r in range(p + 1, m):
                        coeff = coeff * reps[r]["K"][idx[r]][idx[r]]
                    if coeff:
                        new = idx[:p] + (j,) + idx[p + 1:]
                        out[new] = out.get(new, ZERO) + coeff
        return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def standard_pairing(mu: Fraction) -> Pairing:
    return Pairing(mu)


def pair(mu, x: NcPoly, y: NcPoly) -> Scalar:
    return standard_pairing(label(mu, expert=True))(x, y)


# independent route ------------------------------------------------------------

class DerivationPairing:
    """<g w, y> = sum <g, y_(1)> <w, y_(2)> with primitive functionals for g."""

    def __init__(self, mu, data: PairingData | None = None):
        self.mu = label(mu, expert=True)
        self.U = _make_uq(self.mu, self.mu)
        self.P = make_pol(variant_of_label(self.mu))
        d = data or PairingData.standard(self.mu)
        v = d.variant
        ki = d.k_a.inverse()
        if v == "0":
            self.chi = {"a0": d.k_a, "a0s": ki, "b0": ZERO, "b0s": ZERO}
            self.d_e = {"b0": d.e_b}
            self.d_f = {"b0s": d.f_c}
        else:
            self.chi = {"a": d.k_a, "d": ki, "b": ZERO, "c": ZERO}
            self.d_e = {"b": d.e_b}
            self.d_f = {"c": d.f_c}
        self.delta = delta_pol_hom(v)
        self.eps = counit_pol_hom(v)
        self._memo: dict = {}

    def _char(self, w, inverse: bool) -> Scalar:
        c = ONE
        for g in w:
            x = self.chi[self.P.gens[g]]
            if not x:
                return ZERO
            c = c * (x.inverse() if inverse else x)
        return c

    def _twisted(self, w, table: dict) -> Scalar:
        # delta(y1...ym) = sum_p chi^-(y1..y_{p-1}) delta(y_p) chi(y_{p+1}..y_m)
        total = ZERO
        for p, g in enumerate(w):
            val = table.get(self.P.gens[g], ZERO)
            if not val:
                continue
            total = total + self._char(w[:p], True) * val * self._char(w[p + 1:], False)
        return total

    def generator(self, g: str, w) -> Scalar:
        if g == "K":
            return self._char(w, False)
        if g == "Ki":
            return self._char(w, True)
        return self._twisted(w, self.d_e if g == "E" else self.d_f)

    def words(self, u: tuple, w: tuple) -> Scalar:
        key = (u, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not u:
            val = self.eps.word(w)
        else:
            g = self.U.gens[u[0]]
            val = ZERO
            for (w1, w2), c in self.delta.word(w).terms.items():
                a = self.generator(g, w1)
                if a:
                    b = self.words(u[1:], w2)
                    if b:
                        val = val + c * a * b
        self._memo[key] = val
        return val

    def __call__(self, x: NcPoly, y: NcPoly) -> Scalar:
        if x.pres is not self.U or y.pres is not self.P:
            raise PresentationError("label mismatch")
        total = ZERO
        for u, a in x.terms.items():
            for w, b in y.terms.items():
                total = total + a * b * self.words(u, w)
        return total


def pair_by_derivations(mu, x: NcPoly, y: NcPoly) -> Scalar:
    return DerivationPairing(mu)(x, y)


# checks -----------------------------------------------------------------------

def _tensor_pair(pr: Pairing, t, y: NcPoly, z: NcPoly) -> Scalar:
    """<u (x) v, y (x) z> for a two-leg tensor over U_q(mu)."""
    total = ZERO
    for (u, v), c in t.terms.items():
        a = ZERO
        for w, b in y.terms.items():
            a = a + b * pr.words(u, w)
        if not a:
            continue
        for w, b in z.terms.items():
            total = total + c * a * b * pr.words(v, w)
    return total


def _pair_with_tensor(pr: Pairing, x: NcPoly, x2: NcPoly, t) -> Scalar:
    """<x (x) x2, t> for a two-leg tensor over Pol_q(mu)."""
    total = ZERO
    for (w1, w2), c in t.terms.items():
        a = ZERO
        for u, b in x.terms.items():
            a = a + b * pr.words(u, w1)
        if not a:
            continue
        for u, b in x2.terms.items():
            total = total + c * a * b * pr.words(u, w2)
    return total


def generator_table(mu) -> dict[tuple[str, str], Scalar]:
    """<g, l> for g in {K, K^-1, E, F} and l in {a, a*, b, b*}."""
    pr = standard_pairing(label(mu, expert=True))
    U, P = pr.U, pr.P
    lets = pol_letters(P)
    return {(g, name): pr(U.gen(g), lets[name]) for g in ("K", "Ki", "E", "F") for name in ("a", "a*", "b", "b*")}


def check_pairing_axioms(mu, samples: int = 30, degree: int = 3, seed: int = 0) -> Report:
    mu = label(mu, expert=True)
    pr = standard_pairing(mu)
    U, P = pr.U, pr.P
    v = P.params[0]
    rep = Report(f"pairing:{v}")
    params = {"mu": fmt(mu)}
    lets = pol_letters(P)

    # defining values; everything not listed must vanish
    table = generator_table(mu)
    expected = {("K", "a"): S.inverse(), ("K", "a*"): S, ("Ki", "a"): S, ("Ki", "a*"): S.inverse(), ("E", "b"): ONE}
    for key, val in table.items():
        want = expected.get(key, ZERO)
        if key == ("F", "b*"):
            want = -Q.inverse()
        rep.expect_equal(f"pairing.generator[{key[0]},{key[1]}]", params, val, want)
    rep.expect_equal("pairing.defining[F,-q b*]", params, pr(U.gen("F"), lets["b*"].scale(-Q)), ONE)
    rep.add("pairing.kinv_derived", params, True,
            detail={"note": "<K^-1, .> is the inverse character of <K, .>; its letter values are forced, not given"})

    # values quoted for the coaction
    a, b, as_, bs = lets["a"], lets["b"], lets["a*"], lets["b*"]
    quoted = [
        ("E", b * a, S.inverse()), ("E", as_ * b, S.inverse()),
        ("F", bs * a, -S ** -3), ("F", as_ * bs, -S ** -3),
        ("K", a * a, Q.inverse()), ("K", P.one(), ONE), ("K", as_ * as_, Q),
    ]
    for g, y, want in quoted:
        rep.expect_equal(f"pairing.value[{g};{y}]", params, pr(U.gen(g), y), want)

    # well-definedness: relations of both algebras pair to zero
    short_u = [w for n in range(4) for w in itertools.product(range(len(U.gens)), repeat=n)]
    for lhs, rhs in P.rules.items():
        bad = None
        for u in short_u:
            r = NcPoly._raw(P, rhs)
            val = pr.words(u, lhs) - sum((c * pr.words(u, w) for w, c in r.terms.items()), ZERO)
            if val:
                bad = {"u": U.render_word(u), "value": str(val)}
                break
        rep.expect(f"pairing.pol_relation[{P.render_word(lhs)}]", params, bad is None, bad)
    short_p = [w for n in range(4) for w in itertools.product(range(len(P.gens)), repeat=n)]
    for lhs, rhs in U.rules.items():
        bad = None
        for w in short_p:
            val = pr.words(lhs, w) - sum((c * pr.words(u, w) for u, c in rhs.items()), ZERO)
            if val:
                bad = {"y": P.render_word(w), "value": str(val)}
                break
        rep.expect(f"pairing.uq_relation[{U.render_word(lhs)}]", params, bad is None, bad)

    D_U = delta_hom(mu, mu, mu)
    D_P = delta_pol_hom(v)
    S_U = antipode_hom(mu, mu)
    S_P = antipode_pol_hom(v)
    oracle = DerivationPairing(mu)
    Kx, Kix = U.gen("K"), U.gen("Ki")
    eps = counit_pol_hom(v)
    rng = random.Random(f"pairing:{v}:{seed}")
    for i in range(samples):
        x = random_uq(mu, mu, rng, degree)
        x2 = random_uq(mu, mu, rng, degree)
        y = random_element(P, rng, degree)
        z = random_element(P, rng, degree)
        p = dict(params, sample=i)
        rep.expect_equal("pairing.delta_u", dict(p, x=str(x), y=str(y), z=str(z)), _tensor_pair(pr, D_U(x), y, z), pr(x, y * z))
        rep.expect_equal("pairing.delta_pol", dict(p, x=str(x), x2=str(x2), z=str(z)), _pair_with_tensor(pr, x, x2, D_P(z)), pr(x * x2, z))
        rep.expect_equal("pairing.star_u", dict(p, x=str(x), y=str(y)), pr(x.star(), y), pr(x, S_P(y).star()))
        rep.expect_equal("pairing.star_pol", dict(p, x=str(x), y=str(y)), pr(x, y.star()), pr(S_U(x).star(), y))
        rep.expect_equal("pairing.oracle", dict(p, x=str(x), y=str(y)), pr(x, y), oracle(x, y))
        rep.expect_equal("pairing.k_character", dict(p, y=str(y), z=str(z)), pr(Kx, y * z), pr(Kx, y) * pr(Kx, z))
        rep.expect_equal("pairing.k_inverse", dict(p, y=str(y)), _pair_with_tensor(pr, Kx, Kix, D_P(y)), eps(y))
    return rep


# bounded-degree non-degeneracy ----------------------------------------------

def uq_window(U: Presentation, degree: int) -> list[tuple]:
    """Words F^a K^b E^c with a, c <= degree and |b| <= degree."""
    F, E, K, Ki = (U.index(g) for g in ("F", "E", "K", "Ki"))
    out = []
    for a in range(degree + 1):
        for b in range(-degree, degree + 1):
            for c in range(degree + 1):
                out.append((F,) * a + ((K,) * b if b >= 0 else (Ki,) * (-b)) + (E,) * c)
    return out


def pol_window(P: Presentation, length: int) -> list[tuple]:
    """Normal words of length <= ``length`` (normality is inherited by subwords)."""
    layer = [()]
    out = [()]
    for _ in range(length):
        nxt = []
        for w in layer:
            for g in range(len(P.gens)):
                u = w + (g,)
                if P.is_normal(u):
                    nxt.append(u)
        out.extend(nxt)
        layer = nxt
    return out


def default_pol_length(degree: int, variant: str = "+") -> int:
    # in Pol(0) the K-weight of a word is carried by a0 and a0s separately,
    # so separating 2*degree+1 powers of K needs a longer window
    return 3 * degree if variant == "0" else 2 * degree


def gram_rows(mu, degree: int, pol_length: int | None = None, data: PairingData | None = None) -> list[dict]:
    mu = label(mu, expert=True)
    pr = Pairing(mu, data) if data is not None else standard_pairing(mu)
    L = default_pol_length(degree, pr.P.params[0]) if pol_length is None else pol_length
    cols = pol_window(pr.P, L)
    rows = []
    for u in uq_window(pr.U, degree):
        row = {}
        for w in cols:
            val = pr.words(u, w)
            if val:
                row[w] = val
        rows.append(row)
    return rows


def pairing_gram_certificate(mu, degree: int, pol_length: int | None = None, *,
                             data: PairingData | None = None) -> RankCertificate:
    if degree > 4:
        raise ValueError("degree is capped at 4")
    rows = gram_rows(mu, degree, pol_length, data)
    return certified_rank(rows, upper=len(rows))


def pairing_gram_rank(mu, degree: int, pol_length: int | None = None, *, data: PairingData | None = None) -> int:
    """Rank over Q(s) of <F^a K^b E^c, y> against Pol normal words y.

    The Pol window is words of length <= ``pol_length``; the default is
    2*degree for the variants +/- and 3*degree for variant 0.
    """
    return pairing_gram_certificate(mu, degree, pol_length, data=data).rank


def perturbed(mu, **changes) -> PairingData:
    """Standard data with some primitive values replaced (control experiments)."""
    return replace(PairingData.standard(mu), **{k: Scalar.coerce(v) for k, v in changes.items()})
