"""Exact numbers of the form ``a + b*sqrt(d)`` with rational ``a, b``.

Only what the support-restricted maximisation needs: field operations
within one radicand, and exact ordering across different radicands.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = k*k*m``, removing small square factors from ``m``."""
    k = 1
    p = 2
    while p * p <= n and p < 10_000:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        p += 1
    r = math.isqrt(n)
    if r * r == n:
        return k * r, 1
    return k, n


@total_ordering
class Surd:
    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = Fraction(a), Fraction(b)
        if d < 0:
            raise ValueError("negative radicand")
        if d == 0:
            b = Fraction(0)
            d = 1
        k, m = _squarefree_split(d)
        b *= k
        if m == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            m = 1
        self.a, self.b, self.d = a, b, m

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """Exact square root of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/r) = sqrt(p*r)/r
        return cls(0, Fraction(1, q.denominator), q.numerator * q.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.b and self.b and other.d != self.d:
                raise ValueError("arithmetic across different radicands is not supported")
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(other)
        return NotImplemented

    def _d(self, other):
        return self.d if self.b else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return Surd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self):
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * o.conjugate() * (1 / n)

    def __rtruediv__(self, other):
        return Surd(other) / self

    def sign(self) -> int:
        return _sign(self.a, self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Surd):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


def _sign(a: Fraction, b: Fraction, d: int) -> int:
    # sign of a + b*sqrt(d)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or d == 1:
        v = a + b if d == 1 else a
        return (v > 0) - (v < 0)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 d
    diff = a * a - b * b * d
    return sa * ((diff > 0) - (diff < 0))


def as_surd(x) -> Surd:
    return x if isinstance(x, Surd) else Surd(x)


def compare(x, y) -> int:
    """Exact three-way comparison of rationals and surds with any radicands."""
    x, y = as_surd(x), as_surd(y)
    if x.b == 0 or y.b == 0 or x.d == y.d:
        return (x - y).sign()
    # x - y = A + B sqrt(d) - E sqrt(f)
    A, B, d = x.a - y.a, x.b, x.d
    E, f = y.b, y.d
    p = Surd(A, B, d)
    sp = p.sign()
    sq = (E > 0) - (E < 0)
    if sp != sq:
        return (sp > sq) - (sp < sq)
    # same sign: compare squares, p^2 against E^2 f
    sq2 = p * p - E * E * f
    return sp * sq2.sign()


def smax(values):
    best = None
    for v in values:
        if best is None or compare(v, best) > 0:
            best = v
    return best


def to_text(x) -> str:
    """``num/den`` for rationals, ``a+b*sqrt(d)`` otherwise."""
    if isinstance(x, Surd):
        if x.is_rational:
            x = x.a
        else:
            return f"{_ftext(x.a)}+{_ftext(x.b)}*sqrt({x.d})"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _ftext(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
