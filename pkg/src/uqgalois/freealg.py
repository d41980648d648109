"""Noncommutative polynomials over finitely presented *-algebras.

Words are tuples of generator indices.  A :class:`Presentation` carries an
oriented rewriting system whose left sides are words; normal forms are
computed by appending one letter at a time to an already reduced word, so
any redex must be a suffix.  Results are memoised per presentation.  The
rewriting systems shipped with the package are confluent (which
:func:`check_rule_confluence` certifies), so the normal form does not
depend on this strategy.

Internally coefficients live in plain ``dict[word, coeff]`` maps; those
maps are shared between caches and must never be mutated by callers.
"""
from __future__ import annotations

import itertools
import random
import sys
from typing import Callable, Iterable, Mapping

from .report import Report
from .scalar import ONE, ZERO, Q, Scalar, qbinomial

Word = tuple[int, ...]
Terms = dict

__all__ = [
    "Presentation",
    "NcPoly",
    "TensorPoly",
    "Hom",
    "PresentationError",
    "RewriteBudgetExceeded",
    "tensor",
    "check_rule_confluence",
    "qbinomial_identity_check",
    "make_qplane",
    "random_element",
    "DEFAULT_STEP_BUDGET",
]

DEFAULT_STEP_BUDGET = 10**6

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class PresentationError(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    def __init__(self, pres: "Presentation", word: Word):
        self.word = word
        super().__init__(f"rewrite step budget exceeded in {pres.name} while reducing {pres.render_word(word)}")


def _accumulate(out: dict, part: Mapping, c) -> None:
    if c is ONE:
        for w, v in part.items():
            old = out.get(w)
            out[w] = v if old is None else old + v
    else:
        for w, v in part.items():
            old = out.get(w)
            nv = v * c
            out[w] = nv if old is None else old + nv


def _prune(d: dict) -> dict:
    return {w: c for w, c in d.items() if c}


class Presentation:
    """Generators, oriented rewrite rules and a star table.

    ``gens`` is listed in increasing precedence; words are compared by
    weighted degree and then lexicographically on generator indices.
    ``rules`` maps a left-side word (given with generator names) to its right
    side as a mapping ``word -> coefficient``.
    """

    def __init__(
        self,
        name: str,
        gens: Iterable[str],
        rules: Mapping[tuple, Mapping[tuple, object]],
        *,
        family: str = "free",
        params: tuple = (),
        weights: Mapping[str, int] | None = None,
        inverses: Iterable[tuple[str, str]] = (),
        star: Mapping[str, Mapping[tuple, object]] | None = None,
        step_budget: int = DEFAULT_STEP_BUDGET,
    ):
        self.name = name
        self.family = family
        self.params = tuple(params)
        self.gens = tuple(gens)
        self._index = {g: i for i, g in enumerate(self.gens)}
        if len(self._index) != len(self.gens):
            raise PresentationError("duplicate generator names")
        weights = dict(weights or {})
        self.weights = tuple(int(weights.get(g, 1)) for g in self.gens)
        if any(w <= 0 for w in self.weights):
            raise PresentationError("generator weights must be positive")
        self.inverse: dict[int, int] = {}
        self.inverted_base: dict[int, int] = {}
        for base, inv in inverses:
            b, i = self.index(base), self.index(inv)
            self.inverse[b] = i
            self.inverse[i] = b
            self.inverted_base[i] = b
        self.rules: dict[Word, dict[Word, object]] = {}
        for lhs, rhs in rules.items():
            lw = self.word(lhs)
            if not lw:
                raise PresentationError("empty left side")
            self.rules[lw] = _prune({self.word(w): Scalar.coerce(c) if isinstance(c, int) else c for w, c in rhs.items()})
        for b, i in self.inverted_base.items():
            self.rules.setdefault((b, i), {})
            self.rules.setdefault((i, b), {})
            self.rules[(b, i)] = {(): ONE}
            self.rules[(i, b)] = {(): ONE}
        self.star_table: dict[int, dict[Word, object]] | None = None
        if star is not None:
            self.star_table = {}
            for g, img in star.items():
                self.star_table[self.index(g)] = _prune({self.word(w): Scalar.coerce(c) if isinstance(c, int) else c for w, c in img.items()})
            missing = [g for g in self.gens if self.index(g) not in self.star_table]
            if missing:
                raise PresentationError(f"star table misses {missing}")
        self.step_budget = step_budget
        self._by_last: dict[int, list[tuple[Word, dict]]] = {}
        for lhs, rhs in self.rules.items():
            self._by_last.setdefault(lhs[-1], []).append((lhs, rhs))
        for lst in self._by_last.values():
            lst.sort(key=lambda lr: -len(lr[0]))
        self._append_cache: dict[tuple[Word, int], dict] = {}
        self._concat_cache: dict[tuple[Word, Word], dict] = {}
        self._steps = 0
        self._limit = 0
        self._depth = 0

    # naming ------------------------------------------------------------------
    def index(self, g) -> int:
        if isinstance(g, int):
            return g
        try:
            return self._index[g]
        except KeyError:
            raise PresentationError(f"unknown generator {g!r} for {self.name}") from None

    def word(self, w) -> Word:
        if isinstance(w, str):
            return (self.index(w),)
        return tuple(self.index(g) for g in w)

    def order_key(self, w: Word) -> tuple:
        return (sum(self.weights[g] for g in w), w)

    def __repr__(self) -> str:
        return f"Presentation({self.name})"

    # reduction ---------------------------------------------------------------
    def _tick(self, w: Word) -> None:
        self._steps += 1
        if self._steps > self._limit:
            raise RewriteBudgetExceeded(self, w)

    def _append(self, u: Word, g: int) -> dict:
        key = (u, g)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        v = u + (g,)
        out = None
        for lhs, rhs in self._by_last.get(g, ()):
            n = len(lhs)
            if len(v) >= n and v[-n:] == lhs:
                self._tick(v)
                prefix = v[:-n]
                out = {}
                for w, c in rhs.items():
                    _accumulate(out, self._concat(prefix, w), c)
                out = _prune(out)
                break
        if out is None:
            out = {v: ONE}
        self._append_cache[key] = out
        return out

    def _concat(self, u: Word, w: Word) -> dict:
        """Normal form of u*w where u is already a normal word."""
        if not w:
            return {u: ONE}
        key = (u, w)
        hit = self._concat_cache.get(key)
        if hit is not None:
            return hit
        cur = self._append(u, w[0])
        for g in w[1:]:
            nxt: dict = {}
            for x, c in cur.items():
                _accumulate(nxt, self._append(x, g), c)
            cur = _prune(nxt)
        self._concat_cache[key] = cur
        return cur

    def _enter(self, budget):
        if self._depth == 0:
            self._limit = self._steps + (self.step_budget if budget is None else budget)
        self._depth += 1

    def _leave(self):
        self._depth -= 1

    def nf_word(self, w: Word, budget: int | None = None) -> dict:
        self._enter(budget)
        try:
            return self._concat((), tuple(w))
        finally:
            self._leave()

    def mul_words(self, u: Word, v: Word) -> dict:
        """Normal form of u*v for a normal word u."""
        self._enter(None)
        try:
            return self._concat(u, v)
        finally:
            self._leave()

    def nf_terms(self, terms: Mapping, budget: int | None = None) -> dict:
        self._enter(budget)
        try:
            out: dict = {}
            for w, c in terms.items():
                if c:
                    _accumulate(out, self._concat((), w), c)
            return _prune(out)
        finally:
            self._leave()

    def is_normal(self, w: Word) -> bool:
        return not any(w[i:i + len(l)] == l for l in self.rules for i in range(len(w) - len(l) + 1))

    # elements ----------------------------------------------------------------
    def one(self) -> "NcPoly":
        return NcPoly(self, {(): ONE}, normal=True)

    def zero(self) -> "NcPoly":
        return NcPoly(self, {}, normal=True)

    def gen(self, g) -> "NcPoly":
        return NcPoly(self, {(self.index(g),): ONE})

    def scalar(self, c) -> "NcPoly":
        return NcPoly(self, {(): Scalar.coerce(c) if isinstance(c, int) else c})

    def monomial(self, w, c=ONE) -> "NcPoly":
        return NcPoly(self, {self.word(w): c})

    def gens_dict(self) -> dict[str, "NcPoly"]:
        return {g: self.gen(g) for g in self.gens}

    # rendering ---------------------------------------------------------------
    def render_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for g, run in itertools.groupby(w):
            n = len(list(run))
            if g in self.inverted_base:
                parts.append(f"{self.gens[self.inverted_base[g]]}^-{n}")
            else:
                parts.append(self.gens[g] if n == 1 else f"{self.gens[g]}^{n}")
        return "*".join(parts)


class NcPoly:
    """An element of a presented algebra, kept in normal form."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: Mapping, *, normal: bool = False):
        self.pres = pres
        self.terms = _prune(dict(terms)) if normal else pres.nf_terms(terms)

    @classmethod
    def _raw(cls, pres, terms) -> "NcPoly":
        obj = cls.__new__(cls)
        obj.pres = pres
        obj.terms = terms
        return obj

    def _check(self, other: "NcPoly") -> None:
        if other.pres is not self.pres:
            raise PresentationError(f"mismatched presentations {self.pres.name} and {other.pres.name}")

    def _lift(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        return self.pres.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return NcPoly._raw(self.pres, _prune(out))

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.pres, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NcPoly":
        if not c:
            return self.pres.zero()
        return NcPoly._raw(self.pres, _prune({w: v * c for w, v in self.terms.items()}))

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            if isinstance(other, TensorPoly):
                return NotImplemented
            return self.scale(other)
        self._check(other)
        pres = self.pres
        out: dict = {}
        pres._enter(None)
        try:
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    _accumulate(out, pres._concat(u, v), a * b)
        finally:
            pres._leave()
        return NcPoly._raw(pres, _prune(out))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "NcPoly":
        if k < 0:
            raise PresentationError("negative powers of general elements are undefined")
        out = self.pres.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPoly):
            return self.pres is other.pres and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == self.pres.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.pres.name, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w) -> object:
        return self.terms.get(self.pres.word(w) if not (isinstance(w, tuple) and all(isinstance(g, int) for g in w)) else w, ZERO)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise PresentationError(f"{self} is not a scalar")
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def star(self) -> "NcPoly":
        return star(self)

    def map_coefficients(self, f: Callable) -> "NcPoly":
        return NcPoly._raw(self.pres, _prune({w: f(c) for w, c in self.terms.items()}))

    def as_tensor(self) -> "TensorPoly":
        return TensorPoly._raw((self.pres,), {(w,): c for w, c in self.terms.items()})

    def retag(self, pres: Presentation) -> "NcPoly":
        """Read the same words, generator by generator name, in another presentation."""
        if pres.gens == self.pres.gens:
            return NcPoly(pres, self.terms)
        try:
            m = {i: pres.index(g) for i, g in enumerate(self.pres.gens)}
        except PresentationError:
            raise PresentationError(f"{self.pres.name} and {pres.name} have different generators") from None
        return NcPoly(pres, {tuple(m[g] for g in w): c for w, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: self.pres.order_key(wc[0]), reverse=True)

    def __str__(self) -> str:
        from .parser import render

        return render(self)

    def __repr__(self) -> str:
        return f"<{self.pres.name}: {self}>"


def star(p: NcPoly) -> NcPoly:
    """Antilinear anti-automorphism; coefficients are real so only words change."""
    pres = p.pres
    if pres.star_table is None:
        raise PresentationError(f"{pres.name} carries no *-structure")
    hom = _star_hom(pres)
    return hom(p)


def _star_hom(pres: Presentation) -> "Hom":
    h = getattr(pres, "_star_hom", None)
    if h is None:
        h = Hom(pres, {g: NcPoly(pres, img) for g, img in pres.star_table.items()}, target=pres, anti=True)
        pres._star_hom = h
    return h


class TensorPoly:
    """A finite sum of word tuples over a tuple of presentations.

    Zero legs is allowed and stands for a scalar (terms ``{(): c}``).
    """

    __slots__ = ("pres", "terms")

    def __init__(self, pres: tuple, terms: Mapping, *, normal: bool = False):
        self.pres = tuple(pres)
        if normal:
            self.terms = _prune(dict(terms))
        else:
            self.terms = _tensor_nf(self.pres, terms)

    @classmethod
    def _raw(cls, pres, terms) -> "TensorPoly":
        obj = cls.__new__(cls)
        obj.pres = pres
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, pres: tuple) -> "TensorPoly":
        return cls._raw(tuple(pres), {tuple(() for _ in pres): ONE})

    @classmethod
    def zero(cls, pres: tuple) -> "TensorPoly":
        return cls._raw(tuple(pres), {})

    @property
    def legs(self) -> int:
        return len(self.pres)

    def _check(self, other: "TensorPoly"):
        if len(other.pres) != len(self.pres) or any(a is not b for a, b in zip(self.pres, other.pres)):
            raise PresentationError(
                "mismatched tensor components "
                f"{[p.name for p in self.pres]} and {[p.name for p in other.pres]}"
            )

    def __add__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return TensorPoly._raw(self.pres, _prune(out))

    def __neg__(self):
        return TensorPoly._raw(self.pres, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorPoly":
        if not c:
            return TensorPoly.zero(self.pres)
        return TensorPoly._raw(self.pres, _prune({w: v * c for w, v in self.terms.items()}))

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, TensorPoly):
            if isinstance(other, NcPoly):
                return NotImplemented
            return self.scale(other)
        self._check(other)
        pres = self.pres
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                legs = [p.mul_words(x, y) for p, x, y in zip(pres, u, v)]
                ab = a * b
                for combo in itertools.product(*(leg.items() for leg in legs)):
                    c = ab
                    for _, lc in combo:
                        if lc is not ONE:
                            c = c * lc
                    key = tuple(w for w, _ in combo)
                    old = out.get(key)
                    out[key] = c if old is None else old + c
        return TensorPoly._raw(pres, _prune(out))

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorPoly):
            return len(self.pres) == len(other.pres) and all(a is b for a, b in zip(self.pres, other.pres)) and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((tuple(p.name for p in self.pres), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def map_coefficients(self, f: Callable) -> "TensorPoly":
        return TensorPoly._raw(self.pres, _prune({w: f(c) for w, c in self.terms.items()}))

    def to_scalar(self):
        if self.pres:
            raise PresentationError("tensor still has legs")
        return self.terms.get((), ZERO)

    def to_ncpoly(self) -> NcPoly:
        if len(self.pres) != 1:
            raise PresentationError("only one-leg tensors convert to NcPoly")
        return NcPoly._raw(self.pres[0], {w[0]: c for w, c in self.terms.items()})

    def map_legs(self, fns: list) -> "TensorPoly":
        """Apply a linear map to each leg; ``None`` means identity.

        Each map sends a word to an NcPoly, a TensorPoly or a scalar (a
        scalar contributes no leg).  Maps may be :class:`Hom` instances or
        plain callables on words.
        """
        if len(fns) != len(self.pres):
            raise PresentationError("one map per leg required")
        out_pres = None
        out: dict = {}
        for key, c in self.terms.items():
            pieces = []
            for p, f, w in zip(self.pres, fns, key):
                if f is None:
                    pieces.append(((p,), {(w,): ONE}))
                else:
                    pieces.append(_as_tensor_terms(f.word(w) if isinstance(f, Hom) else f(w)))
            pres_acc, terms_acc = (), {(): c}
            for pp, tt in pieces:
                pres_acc = pres_acc + pp
                terms_acc = _outer(terms_acc, tt)
            if out_pres is None:
                out_pres = pres_acc
            elif len(out_pres) != len(pres_acc) or any(a is not b for a, b in zip(out_pres, pres_acc)):
                raise PresentationError("leg maps produced inconsistent components")
            _accumulate(out, terms_acc, ONE)
        if out_pres is None:
            out_pres = _infer_out_pres(self.pres, fns)
        return TensorPoly._raw(out_pres, _prune(out))

    def map_leg(self, i: int, f) -> "TensorPoly":
        fns = [None] * len(self.pres)
        fns[i] = f
        return self.map_legs(fns)

    def permute(self, order: tuple[int, ...]) -> "TensorPoly":
        return TensorPoly._raw(tuple(self.pres[i] for i in order), {tuple(w[i] for i in order): c for w, c in self.terms.items()})

    def multiply_legs(self) -> NcPoly:
        """m(x1 (x) x2 (x) ...) = x1 x2 ... in the common component."""
        p0 = self.pres[0]
        if any(p is not p0 for p in self.pres):
            raise PresentationError("legs live in different algebras")
        out: dict = {}
        for key, c in self.terms.items():
            cur = {key[0]: ONE}
            for w in key[1:]:
                nxt: dict = {}
                for u, a in cur.items():
                    _accumulate(nxt, p0.mul_words(u, w), a)
                cur = nxt
            _accumulate(out, cur, c)
        return NcPoly._raw(p0, _prune(out))

    def __str__(self) -> str:
        from .parser import render_tensor

        return render_tensor(self)

    def __repr__(self) -> str:
        return f"<{' (x) '.join(p.name for p in self.pres)}: {self}>"


def _infer_out_pres(pres, fns):
    # all terms vanished; derive the codomain from the maps where possible
    out = ()
    for p, f in zip(pres, fns):
        if f is None:
            out += (p,)
        elif isinstance(f, Hom):
            t = f.target
            out += () if t is None else ((t,) if isinstance(t, Presentation) else tuple(t))
        else:
            cod = getattr(f, "codomain", ())
            out += tuple(cod)
    return out


def _tensor_nf(pres: tuple, terms: Mapping) -> dict:
    out: dict = {}
    for key, c in terms.items():
        if not c:
            continue
        legs = [p.nf_word(w) for p, w in zip(pres, key)]
        for combo in itertools.product(*(leg.items() for leg in legs)):
            cc = c
            for _, lc in combo:
                cc = cc * lc
            k = tuple(w for w, _ in combo)
            old = out.get(k)
            out[k] = cc if old is None else old + cc
    return _prune(out)


def _as_tensor_terms(x) -> tuple[tuple, dict]:
    if isinstance(x, NcPoly):
        return (x.pres,), {(w,): c for w, c in x.terms.items()}
    if isinstance(x, TensorPoly):
        return x.pres, x.terms
    return (), ({(): x} if x else {})


def _outer(a: Mapping, b: Mapping) -> dict:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[ka + kb] = ca * cb
    return out


def tensor(*factors) -> TensorPoly:
    """Outer product of NcPoly / TensorPoly / scalar factors."""
    pres, terms = (), {(): ONE}
    for f in factors:
        pp, tt = _as_tensor_terms(f)
        pres = pres + pp
        terms = _outer(terms, tt)
    return TensorPoly._raw(pres, _prune(terms))


class Hom:
    """Unital (anti-)multiplicative linear extension of generator images.

    ``target`` is a Presentation (NcPoly images), a tuple of presentations
    (TensorPoly images) or ``None`` (scalar images: a character).  Images of
    words are memoised, so repeated application is cheap.
    """

    def __init__(self, source: Presentation, images: Mapping, *, target=None, anti: bool = False, name: str = ""):
        self.source = source
        self.anti = anti
        self.target = target
        self.name = name or "hom"
        self._images = {}
        for g, img in images.items():
            self._images[source.index(g)] = self._coerce(img)
        missing = [source.gens[i] for i in range(len(source.gens)) if i not in self._images]
        if missing:
            raise PresentationError(f"missing generator image(s) {missing} for {self.name} on {source.name}")
        self._cache: dict[Word, object] = {(): self._unit()}

    def _unit(self):
        t = self.target
        if t is None:
            return ONE
        if isinstance(t, Presentation):
            return t.one()
        return TensorPoly.one(tuple(t))

    def _coerce(self, img):
        t = self.target
        if t is None:
            return Scalar.coerce(img) if isinstance(img, int) else img
        if isinstance(t, Presentation):
            if not isinstance(img, NcPoly) or img.pres is not t:
                raise PresentationError(f"image {img!r} does not live in {t.name}")
            return img
        if not isinstance(img, TensorPoly):
            raise PresentationError("tensor-valued hom needs TensorPoly images")
        return img

    def image(self, g):
        return self._images[self.source.index(g)]

    def word(self, w: Word):
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        head = self.word(w[:-1])
        last = self._images[w[-1]]
        val = last * head if self.anti else head * last
        self._cache[w] = val
        return val

    def __call__(self, p: NcPoly):
        if p.pres is not self.source:
            raise PresentationError(f"{self.name} expects an element of {self.source.name}, got {p.pres.name}")
        t = self.target
        if t is None:
            acc = ZERO
            for w, c in p.terms.items():
                acc = acc + c * self.word(w)
            return acc
        out: dict = {}
        for w, c in p.terms.items():
            _accumulate(out, self.word(w).terms, c)
        if isinstance(t, Presentation):
            return NcPoly._raw(t, _prune(out))
        return TensorPoly._raw(tuple(t), _prune(out))

    def preserves_relations(self, report: Report, check_id: str, params: dict) -> bool:
        """Check that every rewrite rule holds after applying the map."""
        ok = True
        for lhs, rhs in self.source.rules.items():
            left = self.word(lhs)
            right = self(NcPoly._raw(self.source, rhs))
            label = f"{self.source.render_word(lhs)} -> {NcPoly._raw(self.source, rhs)}"
            ok &= report.expect_equal(f"{check_id}[{label}]", params, left, right)
        return ok


def random_element(pres: Presentation, rng: random.Random, degree: int, *, nterms: int = 3, coeff_range: int = 3,
                   letters: Iterable[str] | None = None) -> NcPoly:
    """Random element: uniform words of length <= degree with small integer coefficients."""
    letters = [pres.index(g) for g in (letters or pres.gens)]
    terms: dict = {}
    for _ in range(nterms):
        n = rng.randint(0, degree)
        w = tuple(rng.choice(letters) for _ in range(n))
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        terms[w] = terms.get(w, ZERO) + Scalar(c)
    return NcPoly(pres, terms)


def _ambiguities(rules: Iterable[Word], max_len: int):
    """Overlap and inclusion ambiguities among left sides, up to max_len letters."""
    lhss = sorted(rules)
    for l1 in lhss:
        for l2 in lhss:
            # overlaps: proper suffix of l1 == proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= max_len:
                        yield "overlap", w, (l1, 0), (l2, len(l1) - k)
            # inclusions: l2 a proper subword of l1
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        yield "inclusion", l1, (l1, 0), (l2, i)


def _one_step(pres: Presentation, w: Word, lhs: Word, pos: int) -> dict:
    rhs = pres.rules[lhs]
    out = {}
    for r, c in rhs.items():
        key = w[:pos] + r + w[pos + len(lhs):]
        out[key] = out.get(key, ZERO) + c
    return out


def check_rule_confluence(pres: Presentation, max_len: int | None = None) -> Report:
    """Diamond-lemma check: order compatibility plus resolution of every ambiguity."""
    report = Report(f"confluence:{pres.name}")
    longest = max((len(l) for l in pres.rules), default=0)
    if max_len is None:
        max_len = 2 * longest - 1 if longest else 0
    if max_len < longest:
        raise PresentationError("max_len must be at least the longest left side")
    params = {"presentation": pres.name, "max_len": max_len}
    bad_order = []
    for lhs, rhs in pres.rules.items():
        for r in rhs:
            if pres.order_key(r) >= pres.order_key(lhs):
                bad_order.append(f"{pres.render_word(lhs)} -> {pres.render_word(r)}")
    report.add(
        f"confluence.order[{pres.name}]",
        params,
        not bad_order,
        witness="; ".join(bad_order) if bad_order else None,
    )
    n = 0
    failures = []
    for kind, w, (l1, p1), (l2, p2) in _ambiguities(pres.rules, max_len):
        n += 1
        a = pres.nf_terms(_one_step(pres, w, l1, p1))
        b = pres.nf_terms(_one_step(pres, w, l2, p2))
        if a != b:
            failures.append(
                f"{kind} {pres.render_word(w)}: {NcPoly._raw(pres, a)} != {NcPoly._raw(pres, b)}"
            )
    report.add(
        f"confluence.ambiguities[{pres.name}]",
        dict(params, ambiguities=n),
        not failures,
        witness=failures[0] if failures else None,
        detail={"ambiguities": n, "failures": len(failures)},
    )
    return report


def make_qplane() -> Presentation:
    """Two generators with v*w = q^2 w*v, oriented so that words read w^k v^l."""
    return Presentation(
        "qplane",
        ["w", "v"],
        {("v", "w"): {("w", "v"): Q * Q}},
        family="qplane",
    )


def qbinomial_identity_check(rmax: int) -> Report:
    """(v + w)^r = sum_k [r, k]_{q^2} w^k v^(r-k) for v w = q^2 w v."""
    if rmax < 1:
        raise ValueError("rmax must be >= 1")
    pres = make_qplane()
    report = Report("qbinomial")
    v, w = pres.gen("v"), pres.gen("w")
    power = pres.one()
    for r in range(1, rmax + 1):
        power = power * (v + w)
        expected = pres.zero()
        for k in range(r + 1):
            expected = expected + (w ** k * v ** (r - k)).scale(qbinomial(r, k))
        report.expect_equal(
            f"qbinomial[r={r}]",
            {"r": r, "orientation": "v*w = q^2*w*v"},
            power,
            expected,
        )
    return report
