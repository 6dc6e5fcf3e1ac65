"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A :class:`Surd` stores ``(p + q*sqrt(d)) / m`` with integers ``p, q``, a
positive integer ``m`` and ``gcd(p, q, m) = 1``.  Rationals are surds with
``q = 0`` and are canonically stored with ``d = 0`` so that they mix freely
with any field.  Every comparison reduces to integer arithmetic.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

from .errors import DivByZero, FieldMismatch, SurdSyntaxError

__all__ = [
    "Surd",
    "as_surd",
    "sqrt",
    "squarefree_split",
    "sign",
    "floor",
    "floor_quot",
    "parse_surd",
    "format_surd",
    "surd_to_json",
    "surd_from_json",
    "to_decimal",
]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n = k*k*d`` and ``d`` squarefree."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return (1 if n else 0), n
    k, d, f = 1, 1, 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            k *= f
        if n % f == 0:
            n //= f
            d *= f
        f += 1 if f == 2 else 2
    return k, d * n


class Surd:
    __slots__ = ("d", "p", "q", "m")

    def __init__(self, d: int = 0, r=0, s=0):
        r = Fraction(r)
        s = Fraction(s)
        if d < 0:
            raise ValueError("field kernel must be nonnegative")
        if s and d > 1:
            k, d0 = squarefree_split(d)
            if k != 1:
                s *= k
                d = d0
        if d in (0, 1):
            r += s * d
            s = Fraction(0)
        m = r.denominator * s.denominator // gcd(r.denominator, s.denominator)
        self._set(d, r.numerator * (m // r.denominator), s.numerator * (m // s.denominator), m)

    def _set(self, d, p, q, m):
        g = gcd(p, q, m)
        if g != 1:
            p //= g
            q //= g
            m //= g
        object.__setattr__(self, "d", d if q else 0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "m", m)

    @classmethod
    def _raw(cls, d, p, q, m):
        x = object.__new__(cls)
        x._set(d, p, q, m)
        return x

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    # -- views ------------------------------------------------------------
    @property
    def r(self) -> Fraction:
        return Fraction(self.p, self.m)

    @property
    def s(self) -> Fraction:
        return Fraction(self.q, self.m)

    def is_rational(self) -> bool:
        return self.q == 0

    def conjugate(self) -> Surd:
        return Surd._raw(self.d, self.p, -self.q, self.m)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.m * self.m)

    # -- arithmetic -------------------------------------------------------
    def _common(self, other: Surd) -> int:
        if self.q and other.q and self.d != other.d:
            raise FieldMismatch(f"sqrt({self.d}) and sqrt({other.d}) in one expression")
        return self.d if self.q else other.d

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._common(other)
        return Surd._raw(
            d,
            self.p * other.m + other.p * self.m,
            self.q * other.m + other.q * self.m,
            self.m * other.m,
        )

    __radd__ = __add__

    def __neg__(self):
        return Surd._raw(self.d, -self.p, -self.q, self.m)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._common(other)
        return Surd._raw(
            d,
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            self.m * other.m,
        )

    __rmul__ = __mul__

    def inverse(self) -> Surd:
        # 1/(p + q√d) * m = m (p - q√d) / (p² - q²d)
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            raise DivByZero("division by zero surd")
        if n < 0:
            return Surd._raw(self.d, -self.m * self.p, self.m * self.q, -n)
        return Surd._raw(self.d, self.m * self.p, -self.m * self.q, n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        self._common(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0 or p == 0:
            v = p or q
            return (v > 0) - (v < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        diff = p * p - q * q * self.d
        s = (diff > 0) - (diff < 0)
        return s if p > 0 else -s

    def _cmp(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return (self.p, self.q, self.m, self.d) == (other.p, other.q, other.m, other.d)

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.m))
        return hash((self.d, self.p, self.q, self.m))

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __floor__(self):
        return floor(self)

    def __float__(self):
        return float(to_decimal(self, 30))

    def __repr__(self):
        return f"Surd({format_surd(self)!r})"

    def __str__(self):
        return format_surd(self)


def _coerce(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, int):
        return Surd._raw(0, x, 0, 1)
    if isinstance(x, Rational):
        return Surd._raw(0, x.numerator, 0, x.denominator)
    return NotImplemented


def as_surd(x) -> Surd:
    """Convert an int, Fraction, surd literal or Surd to a Surd."""
    if isinstance(x, str):
        return parse_surd(x)
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")
    return y


def sqrt(n: int) -> Surd:
    """Exact square root of a nonnegative integer."""
    k, d = squarefree_split(n)
    return Surd(d, 0, k) if d > 1 else Surd(0, k * d)


def sign(x) -> int:
    return as_surd(x).sign()


def floor(x) -> int:
    x = as_surd(x)
    if x.q == 0:
        return x.p // x.m
    root = isqrt(x.q * x.q * x.d)  # floor(|q|·√d); never exact for d squarefree > 1
    whole = x.p + root if x.q > 0 else x.p - root - 1
    return whole // x.m


def floor_quot(x, y) -> int:
    y = as_surd(y)
    if not y:
        raise DivByZero("floor_quot by zero")
    return floor(as_surd(x) / y)


def to_decimal(x, digits: int = 50) -> decimal.Decimal:
    """Decimal value of ``x`` correct to ``digits`` significant digits."""
    x = as_surd(x)
    ctx = decimal.Context(prec=digits + 10)
    v = ctx.divide(
        ctx.add(decimal.Decimal(x.p), ctx.multiply(decimal.Decimal(x.q), ctx.sqrt(decimal.Decimal(x.d)))),
        decimal.Decimal(x.m),
    )
    return decimal.Context(prec=digits).plus(v)


# -- text form ---------------------------------------------------------------


def _fmt_rat(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_surd(x) -> str:
    x = as_surd(x)
    r, s = x.r, x.s
    if s == 0:
        return _fmt_rat(r)
    root = f"sqrt({x.d})"
    mag = abs(s)
    tail = root if mag == 1 else f"{_fmt_rat(mag)}*{root}"
    if r == 0:
        return ("-" if s < 0 else "") + tail
    return f"{_fmt_rat(r)}{'-' if s < 0 else '+'}{tail}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg):
        raise SurdSyntaxError(msg, self.text, self.i)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.i)

    def take(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.i += len(s)

    def uint(self):
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected digits")
        v = int(self.text[self.i:j])
        self.i = j
        return v

    def term(self):
        coef = None
        if self.peek("sqrt"):
            coef = Fraction(1)
        else:
            num = self.uint()
            den = 1
            if self.peek("/"):
                self.i += 1
                den = self.uint()
                if den == 0:
                    self.error("zero denominator")
            coef = Fraction(num, den)
            if self.peek("*"):
                self.i += 1
                if not self.peek("sqrt"):
                    self.error("expected 'sqrt'")
            elif not self.peek("sqrt"):
                return coef, None
        self.take("sqrt")
        self.take("(")
        if self.peek("-"):
            self.error("negative radicand")
        n = self.uint()
        self.take(")")
        return coef, n

    def parse(self):
        kernel = None
        total_r = Fraction(0)
        total_s = Fraction(0)
        negative = False
        if self.peek("-"):
            self.i += 1
            negative = True
        while True:
            start = self.i
            coef, radicand = self.term()
            if negative:
                coef = -coef
            if radicand is None:
                total_r += coef
            else:
                k, d = squarefree_split(radicand)
                if d in (0, 1):
                    total_r += coef * k * d
                else:
                    if kernel is not None and kernel != d:
                        self.i = start
                        raise FieldMismatch(
                            f"mixed fields sqrt({kernel}) and sqrt({d}) at position {start}"
                        )
                    kernel = d
                    total_s += coef * k
            self.skip()
            if self.i == len(self.text):
                break
            ch = self.text[self.i]
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            negative = ch == "-"
            self.i += 1
        return Surd(kernel or 0, total_r, total_s)


def parse_surd(text: str) -> Surd:
    """Parse a literal such as ``"-3/4-1/4*sqrt(5)"`` or ``"1+sqrt(3)"``."""
    if not text.strip():
        raise SurdSyntaxError("empty literal", text, 0)
    return _Parser(text).parse()


def surd_to_json(x) -> dict:
    x = as_surd(x)
    return {"d": x.d, "r": _fmt_rat(x.r), "s": _fmt_rat(x.s)}


def surd_from_json(obj) -> Surd:
    if isinstance(obj, str):
        return parse_surd(obj)
    return Surd(int(obj["d"]), Fraction(obj["r"]), Fraction(obj["s"]))
