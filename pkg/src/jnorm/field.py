"""Exact scalar fields: the rationals and the ordered field Q(e).

Rationals are plain :class:`fractions.Fraction` values.  Elements of Q(e),
where ``e`` is a positive infinitesimal, are :class:`RatFunc` instances:
reduced quotients of polynomials in ``e`` with rational coefficients.

The order on Q(e) is read off the lowest-degree coefficients: a nonzero
polynomial is positive iff its lowest nonzero coefficient is, because ``e``
is smaller than every positive rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

__all__ = [
    "FieldError",
    "RatFunc",
    "FieldDesc",
    "QQ",
    "QQ_EPS",
    "EPS",
    "field_arith",
    "field_compare",
    "standard_part",
    "is_infinitesimal",
    "parse_scalar",
    "format_scalar",
]

Poly = Tuple[Fraction, ...]

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


class FieldError(ValueError):
    """Raised on ill-typed field operations (e.g. mixing Q and Q(e))."""


# -- polynomial helpers (coefficients low degree first, no trailing zeros) --


def _trim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return _trim([x + y for x, y in zip(a, b)] + list(a[len(b):]))


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: Poly, c: Fraction) -> Poly:
    return _trim([x * c for x in a])


def _pdivmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        r = list(_trim(r))
    return _trim(q), tuple(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return _ONE
    return _pscale(a, 1 / a[-1])


def _order(a: Poly) -> int:
    """Index of the lowest nonzero coefficient (e-adic valuation)."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("order of zero polynomial")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class RatFunc:
    """An element of Q(e), stored as a reduced numerator/denominator pair.

    Canonical form: ``gcd(num, den) = 1`` and the lowest-degree nonzero
    coefficient of ``den`` equals 1 (in particular it is positive).  Two
    equal elements therefore have identical coefficient tuples.

    Ints and Fractions are accepted as operands and embedded as constants.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence = (0,), den: Sequence = (1,), *, _canonical=False):
        if _canonical:
            self.num, self.den = tuple(num), tuple(den)
        else:
            n = _trim([_as_fraction(c) for c in num])
            d = _trim([_as_fraction(c) for c in den])
            if not d:
                raise ZeroDivisionError("zero denominator in RatFunc")
            self.num, self.den = self._normalize(n, d)
        self._hash = None

    @staticmethod
    def _normalize(n: Poly, d: Poly) -> Tuple[Poly, Poly]:
        if not n:
            return _ZERO, _ONE
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        low = d[_order(d)]
        if low != 1:
            n = _pscale(n, 1 / low)
            d = _pscale(d, 1 / low)
        return n, d

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = _as_fraction(c)
        return cls((c,) if c else (), _ONE, _canonical=True)

    @classmethod
    def eps(cls, power: int = 1) -> "RatFunc":
        return cls((Fraction(0),) * power + (Fraction(1),), _ONE, _canonical=True)

    @classmethod
    def _coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num or not self.num:
            return RatFunc.const(0)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(e)")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFunc.const(1) / (self ** -n)
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # order

    def sign(self) -> int:
        if not self.num:
            return 0
        # den's lowest coefficient is 1, so only the numerator matters
        return 1 if self.num[_order(self.num)] > 0 else -1

    def _cmp(self, other) -> int:
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare RatFunc with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        o = RatFunc._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            c = self.constant()
            self._hash = hash(c) if c is not None else hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # inspection

    def constant(self) -> Optional[Fraction]:
        """The rational value if this element lies in Q, else None."""
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else Fraction(0)
        return None

    def standard_part(self) -> Optional[Fraction]:
        if not self.num:
            return Fraction(0)
        on, od = _order(self.num), _order(self.den)
        if on > od:
            return Fraction(0)
        if on < od:
            return None
        return self.num[on] / self.den[od]

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


EPS = RatFunc.eps()

Scalar = Union[Fraction, RatFunc]


@dataclass(frozen=True)
class FieldDesc:
    """Which ordered field a computation runs over."""

    kind: str  # "rat" or "rat-eps"

    @property
    def archimedean(self) -> bool:
        return self.kind == "rat"

    def __post_init__(self):
        if self.kind not in ("rat", "rat-eps"):
            raise FieldError(f"unknown field kind {self.kind!r}")

    def coerce(self, x) -> Scalar:
        if self.kind == "rat":
            if isinstance(x, RatFunc):
                c = x.constant()
                if c is None:
                    raise FieldError(f"{x} is not rational")
                return c
            return _as_fraction(x)
        return RatFunc._coerce(x) if not isinstance(x, RatFunc) else x

    def contains(self, x) -> bool:
        if self.kind == "rat":
            return isinstance(x, (int, Fraction))
        return isinstance(x, RatFunc)

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)

    def format(self, x: Scalar) -> str:
        return format_scalar(x)

    @property
    def eps(self) -> RatFunc:
        if self.archimedean:
            raise FieldError("Q has no infinitesimals")
        return EPS


QQ = FieldDesc("rat")
QQ_EPS = FieldDesc("rat-eps")


def _field_of(x) -> FieldDesc:
    if isinstance(x, RatFunc):
        return QQ_EPS
    if isinstance(x, (int, Fraction)):
        return QQ
    raise FieldError(f"not a field element: {x!r}")


def field_arith(op: str, a, b=None):
    """Apply ``op`` in {add, sub, mul, div, neg, abs} to field elements."""
    if op == "neg":
        return -a
    if op == "abs":
        return abs(a)
    if b is None:
        raise FieldError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a / b
    raise FieldError(f"unknown operation {op!r}")


def field_compare(a, b) -> str:
    """Return "LT", "EQ" or "GT".  Both arguments must come from one field."""
    if _field_of(a) != _field_of(b):
        raise FieldError("comparison across different fields")
    if a < b:
        return "LT"
    if a == b:
        return "EQ"
    return "GT"


def standard_part(a) -> Optional[Fraction]:
    """Nearest rational to a finite element of Q(e); None if ``a`` is infinite."""
    if isinstance(a, RatFunc):
        return a.standard_part()
    return _as_fraction(a)


def is_infinitesimal(a) -> bool:
    return standard_part(a) == 0


# -- textual encoding --

_TOKEN = re.compile(r"\s*(?:(\d+)|(e)|([-+*/^()]))")


class _ScalarParser:
    def __init__(self, text: str, allow_eps: bool):
        self.text = text
        self.allow_eps = allow_eps
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise FieldError(f"bad scalar syntax at {pos}: {self.text!r}")
            self.toks.append((m.group(1) or m.group(2) or m.group(3), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, expect=None):
        if self.i >= len(self.toks):
            raise FieldError(f"unexpected end of scalar {self.text!r}")
        tok, pos = self.toks[self.i]
        if expect is not None and tok != expect:
            raise FieldError(f"expected {expect!r} at {pos} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise FieldError(f"trailing input at {self.toks[self.i][1]} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                v = v + self.term()
            else:
                v = v - self.term()
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                v = v * self.unary()
            else:
                d = self.unary()
                if not d:
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                v = v / d
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise FieldError(f"exponent must be a natural number in {self.text!r}")
            v = v ** int(tok)
        return v

    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "e":
            if not self.allow_eps:
                raise FieldError(f"'e' is not a rational: {self.text!r}")
            return EPS
        if tok.isdigit():
            return Fraction(int(tok)) if not self.allow_eps else RatFunc.const(int(tok))
        raise FieldError(f"unexpected {tok!r} in {self.text!r}")


def parse_scalar(text: str, field: FieldDesc = QQ) -> Scalar:
    """Parse "n/d", "n", or an expression in ``e`` such as "(1 - e)/(3 + e)"."""
    return _ScalarParser(text, allow_eps=not field.archimedean).parse()


def _format_poly(c: Poly) -> str:
    if not c:
        return "0"
    parts = []
    for k, x in enumerate(c):
        if not x:
            continue
        neg = x < 0
        ax = -x if neg else x
        if k == 0:
            body = str(ax)
        else:
            mono = "e" if k == 1 else f"e^{k}"
            body = mono if ax == 1 else f"{ax}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`."""
    if isinstance(x, RatFunc):
        if x.den == _ONE:
            return _format_poly(x.num)
        return f"({_format_poly(x.num)})/({_format_poly(x.den)})"
    return str(_as_fraction(x))
