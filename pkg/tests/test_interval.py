from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chebotarev import DomainError
from chebotarev.numerics import ComplexInterval, Interval, e, euler_gamma, ln2, pi

fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
pos = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6)
precs = st.sampled_from([53, 64, 128, 256])


def mp(x):
    return mpmath.mpf(x.numerator) / x.denominator


@given(fracs, fracs, precs)
def test_field_ops_enclose_exact(a, b, prec):
    A, B = Interval(a, prec=prec), Interval(b, prec=prec)
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    if b != 0:
        assert (A / B).contains(a / b)


@given(fracs, fracs, fracs, fracs)
def test_mul_of_wide_intervals_encloses_corners(a, b, c, d):
    A = Interval(min(a, b), max(a, b))
    B = Interval(min(c, d), max(c, d))
    P = A * B
    for u in (a, b):
        for v in (c, d):
            assert P.contains(u * v)


@given(pos, precs)
def test_elementary_functions_enclose_mpmath(x, prec):
    X = Interval(x, prec=prec)
    with mpmath.workdps(prec // 3 + 20):
        v = mp(x)
        for iv, ref in ((X.log(), mpmath.log(v)), (X.sqrt(), mpmath.sqrt(v)),
                        (X.atan(), mpmath.atan(v))):
            lo, hi = iv.fractions()
            assert mpmath.mpf(lo.numerator) / lo.denominator <= ref
            assert ref <= mpmath.mpf(hi.numerator) / hi.denominator


@given(st.fractions(min_value=-50, max_value=50, max_denominator=1000),
       st.fractions(min_value=0, max_value=8, max_denominator=100))
def test_trig_encloses_samples(a, w):
    X = Interval(a, a + w)
    S, C = X.sin(), X.cos()
    (s_lo, s_hi), (c_lo, c_hi) = S.fractions(), C.fractions()
    with mpmath.workdps(40):
        for k in range(9):
            t = mp(a + w * Fraction(k, 8))
            assert mp(s_lo) <= mpmath.sin(t) <= mp(s_hi)
            assert mp(c_lo) <= mpmath.cos(t) <= mp(c_hi)
    assert -1 <= s_lo and s_hi <= 1


def test_trig_extrema_are_caught():
    X = Interval(Fraction(1), Fraction(2))  # contains pi/2
    assert X.sin().hi == 1
    assert Interval(3, 4).cos().lo == -1


@given(st.fractions(min_value=-30, max_value=30, max_denominator=1000))
def test_exp_log_roundtrip_contains_input(x):
    X = Interval(x)
    assert X.exp().log().contains(x)


def test_constants():
    with mpmath.workdps(60):
        for iv, ref in ((pi(200), mpmath.pi), (e(200), mpmath.e),
                        (euler_gamma(200), mpmath.euler), (ln2(200), mpmath.log(2))):
            lo, hi = iv.fractions()
            assert mp(lo) <= ref <= mp(hi)
            assert iv.width() < Fraction(1, 2**190)


def test_directed_formatting_is_outward():
    x = Interval(1) / 3
    lo, hi = x.format(5)[1:-1].split(", ")
    assert Fraction(lo) < Fraction(1, 3) < Fraction(hi)


def test_decimal_string_is_exact_rational():
    x = Interval("0.1", prec=64)
    assert x.contains(Fraction(1, 10)) and not x.is_point()


def test_log_and_sqrt_domains():
    with pytest.raises(DomainError):
        Interval(-1, 1).log()
    with pytest.raises(DomainError):
        Interval(-2, -1).sqrt()
    assert Interval(-1, 4).sqrt().lo == 0


def test_negation_is_exact_at_high_precision():
    x = Interval(Fraction(1, 3), prec=256)
    assert (-x).width() == x.width()
    assert (-x / Interval(Fraction(1, 9), prec=256)).contains(-3)
    assert abs(-x) == x


def test_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Interval(1) / Interval(-1, 1)


@given(st.integers(min_value=-6, max_value=6), fracs)
def test_integer_power(n, a):
    assume(a != 0 or n >= 0)
    assert (Interval(a) ** n).contains(a ** n)


def test_set_operations():
    a, b = Interval(0, 2), Interval(1, 3)
    assert a.overlaps(b) and a.hull(b) == Interval(0, 3) and a.intersect(b) == Interval(1, 2)
    assert Interval(Fraction(1, 2), 1).subset_of(a)
    assert Interval(3, 4).certainly_gt(a) and not b.certainly_gt(a)


@given(fracs, fracs, fracs, fracs)
@settings(max_examples=60)
def test_complex_ops_enclose_exact(a, b, c, d):
    z, w = ComplexInterval(a, b), ComplexInterval(c, d)
    zw = complex(float(a), float(b)) * complex(float(c), float(d))
    prod = z * w
    assert prod.re.contains(a * c - b * d) and prod.im.contains(a * d + b * c)
    assert abs(float(prod.re.mid()) - zw.real) <= 1e-6 * (1 + abs(zw.real))
    if c or d:
        q = z / w
        den = c * c + d * d
        assert q.re.contains((a * c + b * d) / den)
        assert q.im.contains((b * c - a * d) / den)


def test_complex_log_exp_and_arg():
    z = ComplexInterval(Fraction(3, 10), Fraction(7, 10), prec=128)
    ref = mpmath.log(mpmath.mpc(0.3, 0.7))
    L = z.log()
    assert abs(float(L.re.mid()) - float(ref.real)) < 1e-15
    assert abs(float(L.im.mid()) - float(ref.imag)) < 1e-15
    back = L.exp()
    assert back.re.contains(Fraction(3, 10)) and back.im.contains(Fraction(7, 10))
    with pytest.raises(DomainError):
        ComplexInterval(Interval(-2, -1), Interval(-1, 1)).arg()
