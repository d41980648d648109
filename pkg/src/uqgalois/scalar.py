"""Exact coefficients: the rational function field Q(s) with q = s**2.

Every structure constant in the package lives in Q(s); the half-integer
powers of q that show up in the formulas are integer powers of s.  A
single quadratic extension by t = sqrt(1 + q**2) is provided by
:class:`ExtScalar` for the spin-1 matrix and the coideal embeddings.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from flint import fmpz_poly

__all__ = [
    "Scalar",
    "ExtScalar",
    "ScalarError",
    "S",
    "Q",
    "ONE",
    "ZERO",
    "T",
    "lambda_constant",
    "eval_numeric",
    "qbinomial",
    "scalar",
]


class ScalarError(ArithmeticError):
    """Raised for division by zero and refused numeric evaluations."""


_P_ONE = fmpz_poly([1])
_P_ZERO = fmpz_poly([])


def _normalize(num: fmpz_poly, den: fmpz_poly) -> tuple[fmpz_poly, fmpz_poly]:
    if den.is_zero():
        raise ScalarError("division by zero")
    if num.is_zero():
        return _P_ZERO, _P_ONE
    if den.degree() > 0 or abs(int(den[0])) != 1:
        g = num.gcd(den)
        if g.degree() > 0 or int(g[0]) != 1:
            num = num // g
            den = den // g
    if int(den[den.degree()]) < 0:
        num, den = -num, -den
    return num, den


class Scalar:
    """Reduced fraction num/den of integer polynomials in s.

    The denominator has a positive leading coefficient and is coprime to the
    numerator (content included), so ``==`` is structural.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num=0, den=None, *, _reduced: bool = False):
        if isinstance(num, Scalar) and den is None:
            self.num, self.den, self._key = num.num, num.den, num._key
            return
        if isinstance(num, Rational) and not isinstance(num, int):
            n = fmpz_poly([int(num.numerator)])
            d = fmpz_poly([int(num.denominator)])
        else:
            n = num if isinstance(num, fmpz_poly) else fmpz_poly(num if isinstance(num, list) else [int(num)])
            d = _P_ONE if den is None else (den if isinstance(den, fmpz_poly) else fmpz_poly(den if isinstance(den, list) else [int(den)]))
        if not _reduced:
            n, d = _normalize(n, d)
        self.num = n
        self.den = d
        self._key = None

    # construction helpers -------------------------------------------------
    @classmethod
    def s_power(cls, k: int) -> "Scalar":
        """s**k for any integer k (q**(k/2))."""
        if k >= 0:
            return cls(fmpz_poly([0] * k + [1]), _P_ONE, _reduced=True)
        return cls(_P_ONE, fmpz_poly([0] * (-k) + [1]), _reduced=True)

    @classmethod
    def q_power(cls, k: int) -> "Scalar":
        return cls.s_power(2 * k)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # predicates -----------------------------------------------------------
    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def only_even_powers(self) -> bool:
        return all(not c for c in self.num.coeffs()[1::2]) and all(not c for c in self.den.coeffs()[1::2])

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a rational constant")
        return Fraction(int(self.num[0]) if not self.num.is_zero() else 0, int(self.den[0]))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                other = Scalar(other)
            else:
                return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den == _P_ONE:
                return Scalar(self.num + other.num, _P_ONE, _reduced=True)
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                other = Scalar(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return Scalar(self.num * other.num, _P_ONE, _reduced=True)
        # cross-cancel before multiplying
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if g1 != _P_ONE:
            a, d = a // g1, d // g1
        if g2 != _P_ONE:
            c, b = c // g2, b // g2
        num, den = a * c, b * d
        if int(den[den.degree()]) < 0:
            num, den = -num, -den
        return Scalar(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ScalarError("division by zero")
        num, den = self.den, self.num
        if int(den[den.degree()]) < 0:
            num, den = -num, -den
        return Scalar(num, den, _reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num ** k, self.den ** k, _reduced=True)

    # comparison / hashing ---------------------------------------------------
    def key(self) -> tuple:
        if self._key is None:
            self._key = (tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs()))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == Scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key())

    # evaluation -------------------------------------------------------------
    def eval_s(self, s0) -> Fraction:
        s0 = Fraction(s0)
        d = _poly_eval(self.den, s0)
        if d == 0:
            raise ScalarError(f"denominator vanishes at s = {s0}")
        return _poly_eval(self.num, s0) / d

    def eval_q(self, q0) -> Fraction:
        """Exact substitution s**2 = q0."""
        q0 = Fraction(q0)
        if not 0 < q0 < 1:
            raise ScalarError("evaluation point must satisfy 0 < q0 < 1")
        if self.only_even_powers():
            n = _poly_eval(_even_part(self.num), q0)
            d = _poly_eval(_even_part(self.den), q0)
            if d == 0:
                raise ScalarError(f"denominator vanishes at q = {q0}")
            return n / d
        root = _rational_sqrt(q0)
        if root is None:
            raise ScalarError(f"{self} has odd powers of s and q0 = {q0} is not a rational square")
        return self.eval_s(root)

    # rendering --------------------------------------------------------------
    def __str__(self) -> str:
        return render_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({render_scalar(self)})"


def _poly_eval(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _even_part(p: fmpz_poly) -> fmpz_poly:
    return fmpz_poly(p.coeffs()[0::2])


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _rational_sqrt(x: Fraction) -> Fraction | None:
    a = _isqrt_exact(x.numerator)
    b = _isqrt_exact(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _render_poly(p: fmpz_poly, var: str, step: int) -> tuple[str, int]:
    """Render p in ``var`` where var**1 stands for s**step; returns (text, nterms)."""
    coeffs = [int(c) for c in p.coeffs()]
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        e = k // step
        if e == 0:
            mono = str(abs(c))
        else:
            v = var if e == 1 else f"{var}^{e}"
            mono = v if abs(c) == 1 else f"{abs(c)}*{v}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    if not parts:
        return "0", 0
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text, len(parts)


def render_scalar(a: "Scalar") -> str:
    """Canonical text: reduced fraction in q when possible, else in s."""
    if a.only_even_powers():
        var, step = "q", 2
    else:
        var, step = "s", 1
    num, nn = _render_poly(a.num, var, step)
    if a.den == _P_ONE:
        return num
    den, nd = _render_poly(a.den, var, step)
    if nn > 1:
        num = f"({num})"
    if nd > 1 or (nd == 1 and ("*" in den or "^" in den) and den not in (var,)):
        den = f"({den})"
    return f"{num}/{den}"


ZERO = Scalar(0)
ONE = Scalar(1)
S = Scalar.s_power(1)
Q = Scalar.s_power(2)


def scalar(x) -> Scalar:
    return Scalar.coerce(x)


def lambda_constant() -> Scalar:
    """lambda = 1/(q - 1/q) = s**2/(s**4 - 1)."""
    return (Q - Q.inverse()).inverse()


def eval_numeric(a: Scalar, q0) -> Fraction:
    return a.eval_q(q0)


def qbinomial(r: int, k: int, base: Scalar = None) -> Scalar:
    """Gaussian binomial [r choose k] in the variable ``base`` (default q**2)."""
    if base is None:
        base = Q * Q
    if k < 0 or k > r:
        return ZERO
    num = ONE
    den = ONE
    for i in range(k):
        num = num * (ONE - base ** (r - i))
        den = den * (ONE - base ** (i + 1))
    return num / den


class ExtScalar:
    """base + ext*t with t**2 = 1 + q**2 = 1 + s**4."""

    __slots__ = ("base", "ext")

    T_SQUARED = ONE + Q * Q

    def __init__(self, base=0, ext=0):
        self.base = Scalar.coerce(base) if not isinstance(base, Scalar) else base
        self.ext = Scalar.coerce(ext) if not isinstance(ext, Scalar) else ext

    @classmethod
    def coerce(cls, x) -> "ExtScalar":
        if isinstance(x, ExtScalar):
            return x
        return cls(Scalar.coerce(x), ZERO)

    def __bool__(self) -> bool:
        return bool(self.base) or bool(self.ext)

    def is_zero(self) -> bool:
        return not self

    def is_rational(self) -> bool:
        return self.ext.is_zero()

    def __add__(self, other):
        try:
            o = ExtScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExtScalar(self.base + o.base, self.ext + o.ext)

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(-self.base, -self.ext)

    def __sub__(self, other):
        try:
            o = ExtScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExtScalar(self.base - o.base, self.ext - o.ext)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ExtScalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.base, self.ext, o.base, o.ext
        return ExtScalar(a * c + b * d * self.T_SQUARED, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Scalar:
        return self.base * self.base - self.ext * self.ext * self.T_SQUARED

    def inverse(self) -> "ExtScalar":
        n = self.norm()
        if n.is_zero():
            raise ScalarError("non-invertible element of the quadratic extension")
        ninv = n.inverse()
        return ExtScalar(self.base * ninv, -self.ext * ninv)

    def __truediv__(self, other):
        try:
            o = ExtScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExtScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExtScalar(ONE)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = ExtScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.base == o.base and self.ext == o.ext

    def __hash__(self):
        if self.ext.is_zero():
            return hash(self.base)
        return hash((self.base, self.ext))

    def to_scalar(self) -> Scalar:
        if not self.ext.is_zero():
            raise ScalarError(f"{self} does not lie in Q(s)")
        return self.base

    def __str__(self):
        if self.ext.is_zero():
            return str(self.base)
        t = "sqrt(1 + q^2)"
        if self.base.is_zero():
            return f"({self.ext})*{t}"
        return f"({self.base}) + ({self.ext})*{t}"

    __repr__ = __str__


T = ExtScalar(ZERO, ONE)
