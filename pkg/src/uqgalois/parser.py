"""Text grammar for algebra elements and the matching renderer.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | NAME '(' expr ')' | '(' expr ')'

Names are the context's generators plus the scalars ``q`` and ``s``
(q = s^2).  ``K^-1`` and any generator with a formal inverse accept negative
powers; ``star(...)`` applies the involution.  Division is only by scalars.

>>> from uqgalois.uq import make_uq
>>> U = make_uq(1, -1)
>>> render(parse_expression(U, "E*F - F*E"))
'(q/(q^2 - 1))*K^2 + (q/(q^2 - 1))*K^-2'
"""
from __future__ import annotations

import re

from .freealg import NcPoly, Presentation, TensorPoly, star
from .scalar import ONE, Q, S, ExtScalar, Scalar, render_scalar

__all__ = ["ParseError", "parse_expression", "parse_scalar", "render", "render_tensor", "render_coeff"]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text[:pos]}>>>{text[pos:]}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|/|\(|\)))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


_ALIASES = {"Ki": ("K", -1), "Kinv": ("K", -1)}


class _Parser:
    def __init__(self, pres: Presentation | None, text: str):
        self.pres = pres
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", self.text, t[2])

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return val

    def expr(self):
        val = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                val = _add(val, rhs) if t[1] == "+" else _add(val, _neg(rhs))
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.unary()
                if t[1] == "*":
                    val = _mul(val, rhs)
                else:
                    if isinstance(rhs, NcPoly):
                        if not rhs.is_scalar():
                            self.fail("division by a non-scalar element", t)
                        rhs = rhs.scalar_value()
                    if not rhs:
                        self.fail("division by zero", t)
                    val = _mul(val, rhs.inverse())
            else:
                return val

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return _neg(self.unary())
        if t[0] == "op" and t[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        start = self.peek()
        base, gen = self.atom()
        t = self.peek()
        if not (t[0] == "op" and t[1] == "^"):
            return base
        self.take()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        paren = False
        if self.peek()[0] == "op" and self.peek()[1] == "(":
            self.take()
            paren = True
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -sign
        e = self.take()
        if e[0] != "int":
            self.fail("expected an integer exponent", e)
        if paren:
            self.expect(")")
        k = sign * e[1]
        if k >= 0:
            return _pow(base, k)
        if isinstance(base, Scalar):
            return base ** k
        if isinstance(base, NcPoly) and base.is_scalar():
            return self.pres.scalar(base.scalar_value() ** k)
        if gen is not None:
            pres = self.pres
            gi = pres.index(gen)
            if gi not in pres.inverse:
                self.fail(f"negative power of non-invertible generator {gen!r}", start)
            return _pow(pres.gen(pres.inverse[gi]), -k)
        self.fail("negative power of a non-scalar expression", start)

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return Scalar(t[1]), None
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect(")")
            return v, None
        if t[0] == "name":
            name = t[1]
            nxt = self.peek()
            if name == "star" and nxt[0] == "op" and nxt[1] == "(":
                self.take()
                v = self.expr()
                self.expect(")")
                if isinstance(v, Scalar):
                    return v, None
                return star(v), None
            if name == "q":
                return Q, None
            if name == "s":
                return S, None
            pres = self.pres
            if pres is not None:
                if name in pres._index:
                    return pres.gen(name), name
                if name in _ALIASES:
                    base, e = _ALIASES[name]
                    if base in pres._index and pres.index(base) in pres.inverse:
                        return pres.gen(pres.inverse[pres.index(base)]), None
            where = f" in {pres.name}" if pres is not None else ""
            raise ParseError(f"unknown generator {name!r}{where}", self.text, t[2])
        raise ParseError("unexpected token", self.text, t[2])


def _neg(x):
    return -x


def _add(a, b):
    if isinstance(a, NcPoly) or isinstance(b, NcPoly):
        if not isinstance(a, NcPoly):
            return b + a
        return a + b
    return a + b


def _mul(a, b):
    if isinstance(a, NcPoly) and isinstance(b, NcPoly):
        return a * b
    if isinstance(a, NcPoly):
        return a.scale(b)
    if isinstance(b, NcPoly):
        return b.scale(a)
    return a * b


def _pow(a, k):
    if isinstance(a, NcPoly):
        return a ** k
    return a ** k


def parse_expression(pres: Presentation, text: str) -> NcPoly:
    """Parse ``text`` into a normal-form element of ``pres``."""
    val = _Parser(pres, text).parse()
    if not isinstance(val, NcPoly):
        val = pres.scalar(val)
    return val


def parse_scalar(text: str) -> Scalar:
    val = _Parser(None, text).parse()
    return val


def render_coeff(c) -> str:
    if isinstance(c, ExtScalar):
        return str(c)
    return render_scalar(c)


def _is_atomic(txt: str) -> bool:
    return re.fullmatch(r"-?[A-Za-z0-9_^]+", txt) is not None and not re.fullmatch(r"-?\d+/\d+", txt)


def _term(coeff, body: str | None) -> tuple[str, str]:
    """Return (sign, text) for coefficient times body (None for the unit word)."""
    if isinstance(coeff, Scalar) and coeff.is_constant():
        f = coeff.to_fraction()
        sign = "-" if f < 0 else "+"
        f = abs(f)
        if body is None:
            return sign, str(f)
        if f == 1:
            return sign, body
        return sign, f"{f}*{body}" if f.denominator == 1 else f"({f})*{body}"
    txt = render_coeff(coeff)
    sign = "+"
    neg = -coeff
    ntxt = render_coeff(neg)
    if txt.startswith("-") and not ntxt.startswith("-") and len(ntxt) < len(txt):
        sign, txt = "-", ntxt
    if body is None:
        return sign, txt if _is_atomic(txt) else f"({txt})"
    return sign, (f"{txt}*{body}" if _is_atomic(txt) and not txt.startswith("-") else f"({txt})*{body}")


def _join(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    out = ""
    for i, (sign, txt) in enumerate(parts):
        if i == 0:
            out = txt if sign == "+" else f"-{txt}"
        else:
            out += f" {sign} {txt}"
    return out


def render(p: NcPoly) -> str:
    """Canonical text of an element; ``parse_expression(p.pres, render(p)) == p``."""
    pres = p.pres
    parts = []
    for w, c in p.sorted_terms():
        parts.append(_term(c, pres.render_word(w) if w else None))
    return _join(parts)


def render_tensor(t: TensorPoly) -> str:
    if not t.pres:
        return render_coeff(t.to_scalar())
    items = sorted(t.terms.items(), key=lambda kv: tuple(p.order_key(w) for p, w in zip(t.pres, kv[0])), reverse=True)
    parts = []
    for key, c in items:
        body = " (x) ".join(p.render_word(w) for p, w in zip(t.pres, key))
        sign, txt = _term(c, f"[{body}]")
        parts.append((sign, txt))
    return _join(parts)
