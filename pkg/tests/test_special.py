from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebotarev import DomainError, PoleProximity
from chebotarev.numerics import (
    ComplexInterval,
    Interval,
    bernoulli,
    digamma,
    li_from_2,
    mellin_truncated,
    zeta_q,
    zeta_q_logderiv,
)


def inside(iv: Interval, ref) -> bool:
    lo, hi = iv.fractions()
    return mpmath.mpf(lo.numerator) / lo.denominator <= ref <= mpmath.mpf(hi.numerator) / hi.denominator


def test_bernoulli_numbers():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(3) == 0


def test_digamma_at_one_is_minus_gamma():
    with mpmath.workdps(50):
        d = digamma(1, 128)
        assert inside(d.re, -mpmath.euler)
        assert d.im.contains(0)
        assert d.re.width() < Fraction(1, 10**30)


coords = st.fractions(min_value=-30, max_value=30, max_denominator=64)


@given(coords, coords)
@settings(max_examples=80, deadline=None)
def test_digamma_encloses_mpmath(a, b):
    if b == 0 and a <= 0 and a.denominator == 1:
        return
    if abs(a - round(a)) < Fraction(1, 64) and b == 0 and a < 1:
        return
    z = ComplexInterval(a, b, prec=96)
    with mpmath.workdps(40):
        ref = mpmath.digamma(mpmath.mpc(mpmath.mpf(a.numerator) / a.denominator,
                                        mpmath.mpf(b.numerator) / b.denominator))
        d = digamma(z, 96)
        assert inside(d.re, ref.real) and inside(d.im, ref.imag)


def test_digamma_poles_rejected():
    with pytest.raises(PoleProximity):
        digamma(ComplexInterval(Interval(Fraction(-21, 10), Fraction(-19, 10)), 0))
    with pytest.raises(PoleProximity):
        digamma(0)


def test_digamma_of_wide_box_contains_samples():
    box = ComplexInterval(Interval(Fraction(3), Fraction(31, 10)), Interval(Fraction(5), Fraction(51, 10)))
    d = digamma(box, 64)
    for a in (3, 3.05, 3.1):
        for b in (5, 5.05, 5.1):
            ref = mpmath.digamma(mpmath.mpc(a, b))
            assert float(d.re.lo) <= float(ref.real) <= float(d.re.hi)
            assert float(d.im.lo) <= float(ref.imag) <= float(d.im.hi)


@pytest.mark.parametrize("s", [Fraction(3, 2), Fraction(2), Fraction(3), Fraction(101, 100), Fraction(10)])
def test_zeta_and_logderiv(s):
    with mpmath.workdps(60):
        v = mpmath.mpf(s.numerator) / s.denominator
        z = zeta_q(s, 128)
        ld = zeta_q_logderiv(s, 128)
        assert inside(z, mpmath.zeta(v))
        assert inside(ld, mpmath.zeta(v, derivative=1) / mpmath.zeta(v))
        assert z.width() < Fraction(1, 10**25)


def test_zeta_high_precision():
    with mpmath.workdps(90):
        z = zeta_q(2, 256)
        assert inside(z, mpmath.pi ** 2 / 6)
        assert z.width() < Fraction(1, 10**70)


def test_zeta_domain():
    with pytest.raises(DomainError):
        zeta_q(1)


@pytest.mark.parametrize("x", [3, 10, 1000, 10**6, Fraction(5, 2)])
def test_li_matches_quadrature(x):
    with mpmath.workdps(40):
        xv = mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
        ref = mpmath.quad(lambda t: 1 / mpmath.log(t), [2, xv])
        assert inside(li_from_2(x, 128), ref)


def test_li_known_values():
    assert abs(float(li_from_2(10**6).mid()) - 78626.50399568) < 1e-6
    assert li_from_2(2) == Interval(0)
    with pytest.raises(DomainError):
        li_from_2(1)


def _mellin_quad(y, sigma, T):
    y, sigma, T = (mpmath.mpf(v.numerator) / v.denominator for v in map(Fraction, (y, sigma, T)))
    f = lambda t: (y ** (sigma + 1j * t) / (sigma + 1j * t)).real  # noqa: E731
    pts = [-T] + [k * T / 64 for k in range(-63, 64)] + [T]
    return mpmath.quad(f, pts) / (2 * mpmath.pi)


@pytest.mark.parametrize("y,sigma,T", [
    (Fraction(1, 10), Fraction(1, 2), 5),
    (Fraction(3, 2), Fraction(2), 50),
    (Fraction(9, 10), Fraction(5, 6), 10),
    (Fraction(3), Fraction(1), 100),
    (Fraction(1), Fraction(1, 2), 5),
])
def test_mellin_matches_quadrature(y, sigma, T):
    v = mellin_truncated(y, sigma, T)
    with mpmath.workdps(30):
        ref = _mellin_quad(y, sigma, T)
        lo, hi = v.fractions()
        # quadrature is not rigorous; allow its own error on top of the enclosure
        slack = mpmath.mpf(10) ** -20
        assert mpmath.mpf(lo.numerator) / lo.denominator - slack <= ref
        assert ref <= mpmath.mpf(hi.numerator) / hi.denominator + slack
    assert v.width() < Fraction(1, 10**12)


def test_mellin_y_one_closed_form():
    v = mellin_truncated(1, 2, 10)
    with mpmath.workdps(40):
        assert inside(v, mpmath.atan(5) / mpmath.pi)


def test_mellin_domain():
    with pytest.raises(DomainError):
        mellin_truncated(0, 1, 5)
    with pytest.raises(DomainError):
        mellin_truncated(2, 0, 5)
