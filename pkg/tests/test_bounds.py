from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebotarev import DomainError, RegionError, ThresholdError, bounds
from chebotarev.bounds import CharacterParams, ExceptionalZero, FieldParams
from chebotarev.numerics import Interval

Q = FieldParams.rationals()
GAUSS = FieldParams(n_L=2, ln_dL=Interval(4).log(), class_ratio=Fraction(1, 2))


def inside(iv: Interval, ref, rel=mpmath.mpf(10) ** -40) -> bool:
    lo, hi = iv.fractions()
    pad = abs(ref) * rel
    return mpmath.mpf(lo.numerator) / lo.denominator - pad <= ref <= \
        mpmath.mpf(hi.numerator) / hi.denominator + pad


# independent mpmath transcriptions, 50 digits


def nchi_ref(t, lnA=0, nE=1):
    return mpmath.mpf(5) / 2 * (lnA + nE * (mpmath.log(abs(t) + 3) + mpmath.mpf(1075) / 134))


def bchi_ref(eps, lnA=0, nE=1):
    eps = mpmath.mpf(eps)
    return ((5 * mpmath.pi ** 2 + 34 + 10 / eps) / 8 * lnA
            + (mpmath.mpf(10842) / 107 + mpmath.mpf(1790) / 157 / eps) * nE)


def lprime_ref(t, lnA=0, nE=1):
    t = abs(mpmath.mpf(t))
    return (mpmath.mpf(5) / 4 * (1 + mpmath.mpf(7) / 4 * mpmath.pi ** 2) * lnA
            + nE / mpmath.mpf(2) * mpmath.log(t + 5) * (57 + 35 / (t + 4))
            + mpmath.mpf(50096) / 255 * nE + mpmath.mpf(53) / 6)


def pi_grh_ref(x, ln_d, nL, ratio):
    x = mpmath.mpf(x)
    lx, sx = mpmath.log(x), mpmath.sqrt(x)
    return ratio * sx * ((32 + 181 / lx) * ln_d + (28 * lx + 330 + 1655 / lx) * nL)


def zero_free_ref(g, ln_d=0, nL=1):
    den = 22 * ln_d + nL * (mpmath.mpf(5) / 2 * mpmath.log(g + 3) + mpmath.mpf(1078) / 67
                            + 2 * mpmath.log(3)) + mpmath.mpf(15) / 2
    return 1 - (7 - 4 * mpmath.sqrt(3)) / den


def test_frozen_values():
    c = CharacterParams()
    assert abs(float(bounds.nchi_bound(0, c).mid()) - 22.8025) < 1e-4
    assert abs(float(bounds.bchi_bound(1, c).mid()) - 112.728) < 1e-3
    assert abs(float(bounds.lprime_partial_bound(0, c).mid()) - 258.1985) < 1e-4
    assert abs(float(bounds.explicit_formula_error(100, 236, Q).total.mid()) - 611.998) < 1e-3
    assert abs(float(bounds.zero_free_beta(Fraction("14.13"), Q).mid()) - 0.997817) < 1e-6
    assert abs(float(bounds.pi_grh_bound(10**6, GAUSS).total.mid()) - 867888.97) < 1e-2


@pytest.mark.parametrize("t", [0, 1, Fraction(141, 10), 500, -37, 10**6])
def test_character_bounds_match_mpmath(t):
    with mpmath.workdps(50):
        tv = mpmath.mpf(Fraction(t).numerator) / Fraction(t).denominator
        for lnA, nE in ((0, 1), (Fraction(7, 2), 3)):
            c = CharacterParams(ln_A=lnA, n_E=nE)
            a = mpmath.mpf(lnA.numerator) / lnA.denominator if lnA else 0
            assert inside(bounds.nchi_bound(t, c, 200), nchi_ref(tv, a, nE))
            assert inside(bounds.lprime_partial_bound(t, c, 200), lprime_ref(tv, a, nE))


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1, max_denominator=1000))
def test_bchi_matches_mpmath(eps):
    with mpmath.workdps(50):
        c = CharacterParams(ln_A=2, n_E=2)
        ref = bchi_ref(mpmath.mpf(eps.numerator) / eps.denominator, 2, 2)
        assert inside(bounds.bchi_bound(eps, c, 200), ref)


def test_bchi_domain():
    with pytest.raises(DomainError):
        bounds.bchi_bound(0, CharacterParams())
    with pytest.raises(DomainError):
        bounds.bchi_bound(2, CharacterParams())


@pytest.mark.parametrize("x", [2, 1000, 10**6, 10**12])
def test_pi_grh_matches_mpmath(x):
    with mpmath.workdps(50):
        ref = pi_grh_ref(x, mpmath.log(4), 2, mpmath.mpf(1) / 2)
        assert inside(bounds.pi_grh_bound(x, GAUSS, 200).total, ref)


@given(st.fractions(min_value=15, max_value=10**6, max_denominator=100))
@settings(max_examples=50)
def test_zero_free_beta_matches_mpmath(g):
    with mpmath.workdps(50):
        p = FieldParams(n_L=4, ln_dL=Fraction(9, 2), class_ratio=Fraction(1, 4))
        ref = zero_free_ref(mpmath.mpf(g.numerator) / g.denominator, mpmath.mpf(9) / 2, 4)
        b = bounds.zero_free_beta(g, p, 200)
        assert inside(b, ref) and b.hi < 1


def test_zero_free_below_threshold():
    p = FieldParams(n_L=2, ln_dL=Interval(5).log(), class_ratio=Fraction(1, 2))
    thr = bounds.zero_free_threshold(p)
    assert abs(float(thr.mid()) - 1 / (1 + 4 * mpmath.log(5))) < 1e-15
    with pytest.raises(RegionError):
        bounds.zero_free_beta(Fraction(1, 10), p)


def test_terms_sum_to_total_and_carry_anchors():
    for rep in (bounds.explicit_formula_error(1000, 100, GAUSS),
                bounds.psi_grh_bound(10**5, GAUSS, precise=True),
                bounds.truncation_bound(1000, 50, Fraction(5, 2), CharacterParams()),
                bounds.r1_bound(1000, 50, GAUSS)):
        s = Interval(0)
        for t in rep.terms:
            assert t.anchor and t.value.lo >= 0
            s = s + t.value
        assert s.overlaps(rep.total)
        rows = rep.as_rows()
        assert rows[-1]["term"] == "total" and len(rows) == len(rep.terms) + 1


def test_class_ratio_scales_linearly():
    full = FieldParams(n_L=2, ln_dL=Interval(4).log(), class_ratio=1)
    a = bounds.pi_grh_bound(10**6, full).total
    b = bounds.pi_grh_bound(10**6, GAUSS).total
    assert (a / 2).overlaps(b)


# the 1/ln x terms make the majorants decrease for tiny x
@given(st.integers(min_value=100, max_value=10**9), st.integers(min_value=1, max_value=10**3))
@settings(max_examples=60)
def test_grh_bounds_increase_in_x(x, dx):
    lo = bounds.pi_grh_bound(x, GAUSS, 64).total
    hi = bounds.pi_grh_bound(x + dx, GAUSS, 64).total
    assert lo.hi <= hi.hi
    assert bounds.psi_grh_bound(x, GAUSS, prec=64).total.lo <= \
        bounds.psi_grh_bound(x + dx, GAUSS, prec=64).total.hi


@given(st.integers(min_value=3, max_value=10**4), st.integers(min_value=1, max_value=10**3))
@settings(max_examples=40)
def test_explicit_error_decreases_in_T(T, dT):
    a = bounds.explicit_formula_error(10**4, T, Q, 64).total
    b = bounds.explicit_formula_error(10**4, T + dT, Q, 64).total
    assert b.lo <= a.hi


def test_precise_form_beats_compact_for_large_x():
    for x in (10**8, 10**12):
        precise = bounds.psi_grh_bound(x, GAUSS, precise=True).total
        compact = bounds.psi_grh_bound(x, GAUSS).total
        assert precise.hi < compact.hi * 2


def test_abel_pi_bound_encloses_true_error():
    # |pi(x) - Li(x)| at x = 10^6 is about 128
    rep = bounds.pi_grh_abel_bound(10**6, Q, pieces=100)
    assert rep.total.lo > 128


def test_unconditional_thresholds():
    ln_th = bounds.uncond_ln_threshold(Q)
    with mpmath.workdps(40):
        assert inside(ln_th, 8 * mpmath.log(150867) ** 2)
    assert abs(float(ln_th.mid()) - 1137.48) < 0.01
    assert abs(float(bounds.uncond_ln_threshold(Q, power=4).mid()) - 568.74) < 0.01
    with pytest.raises(ThresholdError):
        bounds.pi_uncond_bound(10**6, Q)
    rep = bounds.pi_uncond_bound(10**6, Q, force=True)
    assert "out of proven range" in rep.flags
    assert bounds.psi_uncond_bound(Interval(10) ** 300, Q).total.lo > 0


def test_exceptional_zero_validation():
    with pytest.raises(ValueError):
        ExceptionalZero(Fraction(3, 2), 1)
    with pytest.raises(ValueError):
        ExceptionalZero(Fraction(1, 2), 2)
    with pytest.raises(DomainError):
        ExceptionalZero(Fraction(1, 2), 1).check_against(Q)
    with pytest.raises(DomainError):
        ExceptionalZero(Fraction(1, 2), 1).check_against(GAUSS)
    ExceptionalZero(Fraction(99, 100), -1).check_against(GAUSS)


def test_field_params_validation():
    with pytest.raises(ValueError):
        FieldParams(n_L=0)
    with pytest.raises(ValueError):
        FieldParams(n_L=3, n_K=2)
    with pytest.raises(ValueError):
        FieldParams(n_L=4, class_ratio=Fraction(1, 3))
    with pytest.raises(ValueError):
        FieldParams(n_L=2, class_ratio=2)
    with pytest.raises((ValueError, DomainError)):
        FieldParams(n_L=2, ln_dL=-1)
    with pytest.raises(ValueError):
        CharacterParams(n_E=2, a_chi=1, b_chi=0)
    p = FieldParams.from_discriminant(2, -4, 1)
    assert p.ln_d().overlaps(Interval(4).log()) and p.order_G == 2


def test_hermite_minkowski():
    assert bounds.hermite_minkowski_check(GAUSS)
    assert bounds.hermite_minkowski_check(FieldParams(n_L=3, ln_dL=Interval(23).log(),
                                                      class_ratio=Fraction(1, 3)))
    assert not bounds.hermite_minkowski_check(FieldParams(n_L=6, ln_dL=1, class_ratio=1))


def test_domains():
    with pytest.raises(DomainError):
        bounds.pi_grh_bound(1, Q)
    with pytest.raises(DomainError):
        bounds.truncation_bound(100, 10, 2, CharacterParams())
    with pytest.raises(DomainError):
        bounds.stark_beta_envelope(GAUSS, 0)


def test_digamma_region_rhs():
    z = Interval(10)
    with mpmath.workdps(50):
        assert inside(bounds.digamma_region_bound(z, "re", 1),
                      mpmath.log(10) + mpmath.pi / 2 + 1)
        assert inside(bounds.digamma_region_bound(z, "im", 2),
                      mpmath.log(10) + mpmath.pi * (1 + mpmath.mpf(1) / 4) + mpmath.mpf(1) / 4)
        assert inside(bounds.digamma_region_bound(z, "away", None),
                      mpmath.log(10) + mpmath.mpf(83) / 5)
    with pytest.raises(ValueError):
        bounds.digamma_region_bound(z, "left", None)


def test_mellin_lemma_targets():
    t, d = bounds.mellin_lemma_bound(1, Fraction(1, 2), 10)
    assert t == Interval(Fraction(1, 2)) and d.contains(Fraction(1, 20))
    t, _ = bounds.mellin_lemma_bound(3, 1, 10)
    assert t == Interval(1)
    t, _ = bounds.mellin_lemma_bound(Fraction(1, 3), 1, 10)
    assert t == Interval(0)


def test_pi_grh_at_e_squared():
    x = Interval(2).exp()
    # sqrt(e^2) (28*2 + 330 + 1655/2) = 1213.5 e
    v = bounds.pi_grh_bound(x, Q).total
    assert v.overlaps(Interval(Fraction(2427, 2)) * Interval(1).exp())
