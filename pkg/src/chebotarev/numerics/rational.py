"""Continued-fraction replacement of a real enclosure by a one-sided rational."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from ..errors import PrecisionError
from .interval import Interval, to_interval

Rational = Fraction


def partial_quotients(q: Fraction, limit: int | None = None) -> list[int]:
    """Regular continued-fraction expansion of a rational (finite)."""
    out = []
    num, den = q.numerator, q.denominator
    while den and (limit is None or len(out) < limit):
        a, r = divmod(num, den)
        out.append(a)
        num, den = den, r
    return out


def common_quotients(value: Interval, count: int) -> tuple[list[int], bool]:
    """Partial quotients shared by every real in ``value``.

    Returns (quotients, exhausted); ``exhausted`` is True when the enclosure is a
    single rational whose expansion ended before ``count`` terms.  The set of
    reals with a given prefix [a0; a1, ..., ak] is an interval, so agreement of
    the two endpoint expansions pins the prefix for everything in between.
    """
    lo, hi = value.fractions()
    if lo == hi:
        cf = partial_quotients(lo, count)
        return cf, len(cf) < count
    a = partial_quotients(lo)
    b = partial_quotients(hi)
    out = []
    for i in range(min(len(a), len(b), count)):
        # the final quotient of a finite expansion is ambiguous ([..., a] = [..., a-1, 1])
        last = i == len(a) - 1 or i == len(b) - 1
        if a[i] != b[i] or last:
            break
        out.append(a[i])
    return out[:count], False


def convergents(cf: list[int]) -> list[Fraction]:
    p0, q0, p1, q1 = 1, 0, cf[0], 1
    out = [Fraction(p1, q1)]
    for a in cf[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def candidates(cf: list[int], every: bool = True) -> list[tuple[int, int, Fraction]]:
    """(order, kind, fraction) with kind 0 for convergents and 1 for semiconvergents.

    A semiconvergent (p_{k-2} + j p_{k-1}) / (q_{k-2} + j q_{k-1}), 0 < j < a_k,
    is filed under the order k of the convergent it leads up to.  They move
    monotonically toward the value as j grows, so j = 1 is both the farthest
    and the smallest denominator; ``every=False`` keeps only that one.
    """
    out = []
    p0, q0, p1, q1 = 1, 0, cf[0], 1
    out.append((0, 0, Fraction(p1, q1)))
    for k, a in enumerate(cf[1:], start=1):
        for j in range(1, a if every else min(a, 2)):
            out.append((k, 1, Fraction(p0 + j * p1, q0 + j * q1)))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((k, 0, Fraction(p1, q1)))
    return out


def cf_rationalize(value, max_order: int = 3,
                   direction: Literal["upper", "lower"] = "upper") -> Fraction:
    """Rational bound for ``value`` read off its continued fraction.

    Candidates are the convergents and semiconvergents of order at most
    ``max_order`` (0-indexed) lying on the requested side of the whole
    enclosure.  The winner has the smallest order; at equal order a convergent
    beats a semiconvergent, then the smaller denominator wins.

    >>> cf_rationalize(Fraction(1, 2), 3, "upper")
    Fraction(1, 2)
    """
    if direction not in ("upper", "lower"):
        raise ValueError("direction must be 'upper' or 'lower'")
    if isinstance(value, (Fraction, int)):
        lo = hi = Fraction(value)
        cf = partial_quotients(lo, max_order + 1)
    else:
        v = to_interval(value, getattr(value, "prec", 128))
        lo, hi = v.fractions()
        if lo == hi:
            cf = partial_quotients(lo, max_order + 1)
        else:
            cf, _ = common_quotients(v, max_order + 1)
            if len(cf) < max_order + 1:
                raise PrecisionError(
                    f"only {len(cf)} partial quotients determined, need {max_order + 1}")
    ok = (lambda f: f >= hi) if direction == "upper" else (lambda f: f <= lo)
    pool = [c for c in candidates(cf, every=False) if c[0] <= max_order and ok(c[2])]
    if not pool:
        raise PrecisionError(f"no {direction} candidate of order <= {max_order}")
    pool.sort(key=lambda t: (t[0], t[1], t[2].denominator))
    return pool[0][2]
