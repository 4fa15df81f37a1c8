"""Closed real and complex intervals with MPFR outward rounding.

Every operation runs twice under explicit ``RoundDown``/``RoundUp`` contexts,
so the global gmpy2 context is never touched and the objects are safe to share
between threads.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from ..errors import DomainError

DEFAULT_PRECISION = 128


@functools.lru_cache(maxsize=None)
def contexts(prec: int):
    """(round-down, round-up) contexts at ``prec`` bits."""
    if prec < 2:
        raise ValueError("precision must be at least 2 bits")
    return (
        gmpy2.context(precision=prec, round=gmpy2.RoundDown),
        gmpy2.context(precision=prec, round=gmpy2.RoundUp),
    )


def _round_pair(v, prec):
    d, u = contexts(prec)
    if isinstance(v, Interval):
        return d.plus(v.lo), u.plus(v.hi)
    if isinstance(v, bool):
        v = int(v)
    if isinstance(v, int):
        z = mpz(v)
        return mpfr(z, 0, d), mpfr(z, 0, u)
    if isinstance(v, str):
        v = Fraction(v.strip())
    if isinstance(v, Rational):
        q = mpq(v.numerator, v.denominator)
        return mpfr(q, 0, d), mpfr(q, 0, u)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"non-finite value {v!r}")
        return mpfr(v, 0, d), mpfr(v, 0, u)
    if type(v) is type(mpfr(0)):
        return mpfr(v, 0, d), mpfr(v, 0, u)
    if type(v) is type(mpq(0)):
        return mpfr(v, 0, d), mpfr(v, 0, u)
    raise TypeError(f"cannot convert {type(v).__name__} to Interval")


def _neg(x):
    """Exact negation; plain ``-x`` would round to the global 53-bit context."""
    return contexts(max(x.precision, 2))[0].minus(x)


def _abs(x):
    return x if x >= 0 else _neg(x)


def _new(lo, hi, prec):
    r = object.__new__(Interval)
    r.lo = lo
    r.hi = hi
    r.prec = prec
    return r


def _mul(alo, ahi, blo, bhi, d, u):
    if alo >= 0:
        if blo >= 0:
            return d.mul(alo, blo), u.mul(ahi, bhi)
        if bhi <= 0:
            return d.mul(ahi, blo), u.mul(alo, bhi)
        return d.mul(ahi, blo), u.mul(ahi, bhi)
    if ahi <= 0:
        if blo >= 0:
            return d.mul(alo, bhi), u.mul(ahi, blo)
        if bhi <= 0:
            return d.mul(ahi, bhi), u.mul(alo, blo)
        return d.mul(alo, bhi), u.mul(alo, blo)
    if blo >= 0:
        return d.mul(alo, bhi), u.mul(ahi, bhi)
    if bhi <= 0:
        return d.mul(ahi, blo), u.mul(alo, blo)
    return (min(d.mul(alo, bhi), d.mul(ahi, blo)),
            max(u.mul(alo, blo), u.mul(ahi, bhi)))


def _div(alo, ahi, blo, bhi, d, u):
    if blo > 0:
        if alo >= 0:
            return d.div(alo, bhi), u.div(ahi, blo)
        if ahi <= 0:
            return d.div(alo, blo), u.div(ahi, bhi)
        return d.div(alo, blo), u.div(ahi, blo)
    if bhi < 0:
        if alo >= 0:
            return d.div(ahi, bhi), u.div(alo, blo)
        if ahi <= 0:
            return d.div(ahi, blo), u.div(alo, bhi)
        return d.div(ahi, bhi), u.div(alo, bhi)
    raise ZeroDivisionError("divisor interval contains zero")


class Interval:
    """Closed interval [lo, hi] with MPFR endpoints.

    Instances are treated as immutable.  Mixed arithmetic with ``int``,
    ``Fraction``, ``float``, decimal strings and other intervals is supported;
    non-interval operands are enclosed before use.

    >>> x = Interval(1) / 3
    >>> x.contains(Fraction(1, 3))
    True
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PRECISION):
        a, b = _round_pair(lo, prec)
        if hi is not None:
            b = _round_pair(hi, prec)[1]
        if a > b:
            raise ValueError(f"empty interval [{a}, {b}]")
        self.lo = a
        self.hi = b
        self.prec = prec

    # construction helpers

    @classmethod
    def point(cls, v, prec: int = DEFAULT_PRECISION) -> "Interval":
        return cls(v, None, prec)

    @classmethod
    def hull_of(cls, *vals, prec: int = DEFAULT_PRECISION) -> "Interval":
        items = [v if isinstance(v, Interval) else cls(v, None, prec) for v in vals]
        return _new(min(i.lo for i in items), max(i.hi for i in items), prec)

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        lo, hi = _round_pair(other, self.prec)
        return _new(lo, hi, self.prec)

    def with_precision(self, prec: int) -> "Interval":
        lo, hi = _round_pair(self, prec)
        return _new(lo, hi, prec)

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        d, u = contexts(p)
        return _new(d.add(self.lo, o.lo), u.add(self.hi, o.hi), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        d, u = contexts(p)
        return _new(d.sub(self.lo, o.hi), u.sub(self.hi, o.lo), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return _new(_neg(self.hi), _neg(self.lo), self.prec)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        d, u = contexts(p)
        lo, hi = _mul(self.lo, self.hi, o.lo, o.hi, d, u)
        return _new(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        d, u = contexts(p)
        lo, hi = _div(self.lo, self.hi, o.lo, o.hi, d, u)
        return _new(lo, hi, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if isinstance(n, int):
            return self._ipow(n)
        return self.rpow(n)

    def _ipow(self, n: int) -> "Interval":
        if n == 0:
            return _new(mpfr(1), mpfr(1), self.prec)
        if n < 0:
            return 1 / self._ipow(-n)
        d, u = contexts(self.prec)
        lo, hi = self.lo, self.hi
        if n % 2 == 1 or lo >= 0:
            return _new(d.pow(lo, n), u.pow(hi, n), self.prec)
        if hi <= 0:
            return _new(d.pow(hi, n), u.pow(lo, n), self.prec)
        return _new(mpfr(0), max(u.pow(lo, n), u.pow(hi, n)), self.prec)

    def sqr(self) -> "Interval":
        return self._ipow(2)

    def rpow(self, y) -> "Interval":
        """x**y for x > 0 and real interval y; extremes sit at the corners."""
        y = self._coerce(y)
        if self.lo <= 0:
            raise DomainError("rpow needs a positive base")
        p = max(self.prec, y.prec)
        d, u = contexts(p)
        corners = [(a, b) for a in (self.lo, self.hi) for b in (y.lo, y.hi)]
        return _new(min(d.pow(a, b) for a, b in corners),
                    max(u.pow(a, b) for a, b in corners), p)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return _new(mpfr(0), max(_neg(self.lo), self.hi), self.prec)

    # elementary functions

    def sqrt(self) -> "Interval":
        if self.hi < 0:
            raise DomainError("sqrt of a negative interval")
        d, u = contexts(self.prec)
        lo = d.sqrt(self.lo) if self.lo > 0 else mpfr(0)
        return _new(lo, u.sqrt(self.hi), self.prec)

    def log(self) -> "Interval":
        if self.lo <= 0:
            raise DomainError("log of an interval reaching zero or below")
        d, u = contexts(self.prec)
        return _new(d.log(self.lo), u.log(self.hi), self.prec)

    def exp(self) -> "Interval":
        d, u = contexts(self.prec)
        return _new(d.exp(self.lo), u.exp(self.hi), self.prec)

    def atan(self) -> "Interval":
        d, u = contexts(self.prec)
        return _new(d.atan(self.lo), u.atan(self.hi), self.prec)

    def sin(self) -> "Interval":
        return _trig(self, 0)

    def cos(self) -> "Interval":
        return _trig(self, 1)

    # inspection

    def mid(self):
        d, _ = contexts(self.prec + 1)
        return d.div(d.add(self.lo, self.hi), 2)

    def width(self):
        _, u = contexts(self.prec)
        return u.sub(self.hi, self.lo)

    def mag(self):
        """Upper bound on |x|."""
        return max(_abs(self.lo), _abs(self.hi))

    def mig(self):
        """Lower bound on |x|."""
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return _neg(self.hi)
        return mpfr(0)

    def __float__(self):
        return float(self.mid())

    def fractions(self) -> tuple[Fraction, Fraction]:
        return (Fraction(*self.lo.as_integer_ratio()),
                Fraction(*self.hi.as_integer_ratio()))

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Rational) and not isinstance(x, int):
            lo, hi = self.fractions()
            return lo <= x <= hi
        if isinstance(x, str):
            return self.contains(Fraction(x))
        return self.lo <= x <= self.hi

    def subset_of(self, other: "Interval") -> bool:
        return other.contains(self)

    def overlaps(self, other) -> bool:
        o = self._coerce(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def hull(self, other) -> "Interval":
        o = self._coerce(other)
        return _new(min(self.lo, o.lo), max(self.hi, o.hi), max(self.prec, o.prec))

    def intersect(self, other) -> "Interval":
        o = self._coerce(other)
        lo, hi = max(self.lo, o.lo), min(self.hi, o.hi)
        if lo > hi:
            raise ValueError("empty intersection")
        return _new(lo, hi, max(self.prec, o.prec))

    def certainly_lt(self, other) -> bool:
        return self.hi < self._coerce(other).lo

    def certainly_le(self, other) -> bool:
        return self.hi <= self._coerce(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > self._coerce(other).hi

    def certainly_ge(self, other) -> bool:
        return self.lo >= self._coerce(other).hi

    def certainly_positive(self) -> bool:
        return self.lo > 0

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({str(self.lo)!r}, {str(self.hi)!r}, prec={self.prec})"

    def __str__(self):
        return f"[{_fmt(self.lo, -1)}, {_fmt(self.hi, 1)}]"

    def format(self, digits: int = 17) -> str:
        return f"[{_fmt(self.lo, -1, digits)}, {_fmt(self.hi, 1, digits)}]"


def _fmt(x, direction: int, digits: int = 17) -> str:
    """Decimal string rounded away from the interval interior."""
    return format(x, f".{digits}" + ("D" if direction < 0 else "U") + "g")


def _trig(x: Interval, phase: int) -> Interval:
    """sin (phase 0) or cos (phase 1) with extrema detected via an enclosure of pi."""
    p = x.prec
    d, u = contexts(p)
    one = mpfr(1)
    w = u.sub(x.hi, x.lo)
    pi_lo = d.const_pi()
    if w >= 2 * pi_lo:
        return _new(-one, one, p)
    f_d = d.sin if phase == 0 else d.cos
    f_u = u.sin if phase == 0 else u.cos
    lo = min(f_d(x.lo), f_d(x.hi))
    hi = max(f_u(x.lo), f_u(x.hi))
    # Extrema of sin sit at pi/2 + k pi, of cos at k pi.  Reduce x / pi.
    half = Interval(Fraction(1, 2), prec=p)
    t = x / pi(p)
    if phase == 0:
        t = t - half
    k_lo = int(gmpy2.floor(t.lo))
    k_hi = int(gmpy2.ceil(t.hi))
    for k in range(k_lo, k_hi + 1):
        if t.lo <= k <= t.hi:
            # sin peaks where k even, cos peaks where k even too
            if k % 2 == 0:
                hi = one
            else:
                lo = -one
    return _new(max(lo, -one), min(hi, one), p)


@functools.lru_cache(maxsize=64)
def pi(prec: int = DEFAULT_PRECISION) -> Interval:
    d, u = contexts(prec)
    return _new(d.const_pi(), u.const_pi(), prec)


@functools.lru_cache(maxsize=64)
def euler_gamma(prec: int = DEFAULT_PRECISION) -> Interval:
    d, u = contexts(prec)
    return _new(d.const_euler(), u.const_euler(), prec)


@functools.lru_cache(maxsize=64)
def e(prec: int = DEFAULT_PRECISION) -> Interval:
    return Interval(1, prec=prec).exp()


@functools.lru_cache(maxsize=64)
def ln2(prec: int = DEFAULT_PRECISION) -> Interval:
    d, u = contexts(prec)
    return _new(d.const_log2(), u.const_log2(), prec)


def to_interval(v, prec: int = DEFAULT_PRECISION) -> Interval:
    if isinstance(v, Interval):
        return v if v.prec >= prec else v.with_precision(prec)
    return Interval(v, prec=prec)


class ComplexInterval:
    """Rectangle re + i*im with interval sides."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0, prec: int = DEFAULT_PRECISION):
        self.re = to_interval(re, prec)
        self.im = to_interval(im, prec)

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    @staticmethod
    def _c(other, prec):
        if isinstance(other, ComplexInterval):
            return other
        if isinstance(other, complex):
            return ComplexInterval(other.real, other.imag, prec)
        return ComplexInterval(other, 0, prec)

    def __add__(self, other):
        if not isinstance(other, ComplexInterval) and not isinstance(other, complex):
            return _cnew(self.re + other, self.im)
        o = self._c(other, self.prec)
        return _cnew(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexInterval) and not isinstance(other, complex):
            return _cnew(self.re - other, self.im)
        o = self._c(other, self.prec)
        return _cnew(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._c(other, self.prec) - self

    def __neg__(self):
        return _cnew(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, ComplexInterval) and not isinstance(other, complex):
            return _cnew(self.re * other, self.im * other)
        o = self._c(other, self.prec)
        a, b, c, d = self.re, self.im, o.re, o.im
        return _cnew(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def sqr(self) -> "ComplexInterval":
        a, b = self.re, self.im
        return _cnew(a.sqr() - b.sqr(), 2 * (a * b))

    def abs2(self) -> Interval:
        return self.re.sqr() + self.im.sqr()

    def __abs__(self) -> Interval:
        return self.abs2().sqrt()

    def reciprocal(self) -> "ComplexInterval":
        n = self.abs2()
        return _cnew(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, ComplexInterval) and not isinstance(other, complex):
            return _cnew(self.re / other, self.im / other)
        return self * self._c(other, self.prec).reciprocal()

    def __rtruediv__(self, other):
        return self._c(other, self.prec) * self.reciprocal()

    def conj(self) -> "ComplexInterval":
        return _cnew(self.re, -self.im)

    def arg(self) -> Interval:
        """Principal argument; the rectangle must avoid the cut (-inf, 0]."""
        re, im = self.re, self.im
        if re.lo > 0:
            return (im / re).atan()
        half_pi = pi(self.prec) / 2
        if im.lo > 0:
            return half_pi - (re / im).atan()
        if im.hi < 0:
            return -half_pi - (re / im).atan()
        raise DomainError("rectangle meets the branch cut of arg")

    def log(self) -> "ComplexInterval":
        return _cnew(self.abs2().log() / 2, self.arg())

    def exp(self) -> "ComplexInterval":
        r = self.re.exp()
        return _cnew(r * self.im.cos(), r * self.im.sin())

    def contains(self, z) -> bool:
        if isinstance(z, ComplexInterval):
            return self.re.contains(z.re) and self.im.contains(z.im)
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def __repr__(self):
        return f"ComplexInterval({self.re!s}, {self.im!s})"


def _cnew(re: Interval, im: Interval) -> ComplexInterval:
    r = object.__new__(ComplexInterval)
    r.re = re
    r.im = im
    return r
