"""Rigorous enclosures of the special functions the explicit bounds rely on."""

from __future__ import annotations

import functools
import math
from fractions import Fraction

import gmpy2
import mpmath
from gmpy2 import mpfr

from ..errors import DomainError, PoleProximity, PrecisionError
from .interval import (
    DEFAULT_PRECISION,
    ComplexInterval,
    Interval,
    _new,
    contexts,
    pi,
    to_interval,
)


@functools.lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


# ---------------------------------------------------------------- digamma


@functools.lru_cache(maxsize=32)
def _stirling_coeffs(prec: int, count: int) -> tuple[Interval, ...]:
    """B_{2k} / (2k) for k = 1..count as intervals."""
    return tuple(Interval(bernoulli(2 * k) / (2 * k), prec=prec) for k in range(1, count + 1))


def _as_complex(z, prec) -> ComplexInterval:
    if isinstance(z, ComplexInterval):
        return z
    if isinstance(z, complex):
        return ComplexInterval(z.real, z.imag, prec)
    return ComplexInterval(z, 0, prec)


def _check_poles(z: ComplexInterval) -> None:
    if z.im.lo <= 0 <= z.im.hi and z.re.lo <= 0:
        k_lo = int(gmpy2.ceil(z.re.lo))
        k_hi = min(0, int(gmpy2.floor(z.re.hi)))
        if k_lo <= k_hi:
            raise PoleProximity(f"rectangle contains the pole at {k_hi}")


def _reduction_radius(prec: int) -> int:
    return max(8, math.ceil(0.15 * prec))


def digamma(z, prec: int | None = None) -> ComplexInterval:
    """Enclosure of Gamma'/Gamma(z).

    The argument is moved right by the recurrence psi(z) = psi(z+m) - sum 1/(z+k)
    until Re w >= R/2 and |w| >= R, then the Stirling expansion is summed with the
    Binet remainder bound

        |R_K(w)| <= |B_2K| / (2K) * |w|^(2-2K) / min_{t >= 0} |t^2 + w^2|.
    """
    if prec is None:
        prec = z.prec if isinstance(z, (ComplexInterval, Interval)) else DEFAULT_PRECISION
    z = _as_complex(z, prec)
    _check_poles(z)
    R = _reduction_radius(prec)

    # shift count from a float estimate, then certified below
    re_lo = float(z.re.lo)
    im_mig = float(z.im.mig())
    m = max(0, math.ceil(R / 2 - re_lo))
    while (re_lo + m) ** 2 + im_mig ** 2 < R * R:
        m += 1

    shift_re = Interval(0, prec=prec)
    shift_im = Interval(0, prec=prec)
    for k in range(m):
        w = z + k
        n = w.abs2()
        shift_re = shift_re + w.re / n
        shift_im = shift_im - w.im / n
    w = z + m
    a, b = w.re, w.im

    # lower bound for min_t |t^2 + w^2|
    abs2 = w.abs2()
    if (a.sqr() - b.sqr()).lo >= 0:
        mlow = abs2.lo
    else:
        mlow = (2 * (Interval(a.mig(), prec=prec) * Interval(b.mig(), prec=prec))).lo
    if mlow <= 0:
        raise PrecisionError("digamma reduction failed to leave the imaginary axis")

    # choose the number of terms from the remainder bound
    eps = mpfr(2) ** (-prec - 2)
    absw_lo = float(Interval(abs2.lo, prec=prec).sqrt().lo)
    K = 2
    max_terms = 4 * prec + 40
    while True:
        est = abs(float(bernoulli(2 * K))) / (2 * K) * absw_lo ** (2 - 2 * K) / float(mlow)
        if est < float(eps) or K >= max_terms:
            break
        K += 1
    coeffs = _stirling_coeffs(prec, K)
    d, u = contexts(prec)
    absw = Interval(abs2.lo, prec=prec).sqrt()
    rem = Interval(coeffs[K - 1], prec=prec)
    rem = abs(rem) * Interval(absw.lo, prec=prec) ** (2 - 2 * K) / Interval(mlow, prec=prec)
    r = rem.hi

    inv = w.reciprocal()
    inv2 = inv.sqr()
    # Horner in 1/w^2 over k = 1..K-1
    acc = ComplexInterval(coeffs[K - 2], 0, prec) if K >= 2 else ComplexInterval(0, 0, prec)
    for k in range(K - 3, -1, -1):
        acc = acc * inv2 + coeffs[k]
    series = acc * inv2 if K >= 2 else acc

    res = w.log() - inv / 2 - series
    res_re = res.re - shift_re
    res_im = res.im - shift_im
    err = _new(-r, r, prec)
    return ComplexInterval(res_re + err, res_im + err, prec)


# ---------------------------------------------------------------- zeta on (1, oo)


def _em_params(prec: int) -> tuple[int, int]:
    return max(16, prec // 3), max(8, prec // 6)


def _zeta_sums(s: Interval, with_log: bool):
    """Euler-Maclaurin enclosures of sum n^-s and, optionally, sum n^-s ln n."""
    prec = s.prec
    if s.lo <= 1:
        raise DomainError("zeta_q needs sigma > 1")
    N, M = _em_params(prec)
    one = Interval(1, prec=prec)
    s1 = s - 1

    head = Interval(0, prec=prec)
    head_ln = Interval(0, prec=prec)
    for n in range(1, N):
        t = Interval(n, prec=prec).rpow(-s)
        head = head + t
        if with_log and n > 1:
            head_ln = head_ln + t * Interval(n, prec=prec).log()

    NI = Interval(N, prec=prec)
    lnN = NI.log()
    fN = NI.rpow(-s)
    # tail of sum f(n), f(x) = x^-s: integral + f(N)/2 - sum B2k/(2k)! f^(2k-1)(N)
    tail = NI.rpow(one - s) / s1 + fN / 2
    tail_ln = NI.rpow(one - s) * (lnN / s1 + one / s1.sqr()) + fN * lnN / 2

    # derivatives f^(j)(N) = (-1)^j (s)_j N^(-s-j) and the log variant
    #   g^(j)(N) = (-1)^j (s)_j N^(-s-j) [ln N - H_j],  H_j = sum_{i<j} 1/(s+i)
    poch = one
    harm = Interval(0, prec=prec)
    Npow = fN
    for j in range(1, 2 * M + 2):
        poch = poch * (s + (j - 1))
        harm = harm + one / (s + (j - 1))
        Npow = Npow / N
        if j % 2 == 1 and j <= 2 * M - 1:
            k = (j + 1) // 2
            c = Interval(bernoulli(2 * k) / math.factorial(2 * k), prec=prec)
            dj = -(poch * Npow)  # j odd
            tail = tail - c * dj
            if with_log:
                tail_ln = tail_ln - c * (dj * (lnN - harm))
    # here j = 2M+1: poch = (s)_{2M+1}, harm = H_{2M+1}, Npow = N^(-s-2M-1)
    a1 = s1 + (2 * M + 1)  # exponent a - 1 with a = s + 2M + 1
    bern_sup = Interval(Fraction(202, 100), prec=prec) / (2 * pi(prec)) ** (2 * M + 1)
    int_plain = NI.rpow(-a1) / a1
    err = bern_sup * poch * int_plain
    err_ln = bern_sup * poch * NI.rpow(-a1) * (lnN / a1 + one / a1.sqr() + harm / a1)
    r = err.hi
    zeta = head + tail + _new(-r, r, prec)
    if not with_log:
        return zeta, None
    r2 = err_ln.hi
    lsum = head_ln + tail_ln + _new(-r2, r2, prec)
    return zeta, lsum


def zeta_q(sigma, prec: int | None = None) -> Interval:
    """Enclosure of zeta(sigma) for real sigma > 1."""
    s = to_interval(sigma, prec or _prec_of(sigma))
    return _zeta_sums(s, False)[0]


def zeta_q_logderiv(sigma, prec: int | None = None) -> Interval:
    """Enclosure of zeta'/zeta(sigma) for real sigma > 1."""
    s = to_interval(sigma, prec or _prec_of(sigma))
    z, l = _zeta_sums(s, True)
    return -l / z


def _prec_of(x) -> int:
    return x.prec if isinstance(x, Interval) else DEFAULT_PRECISION


# ---------------------------------------------------------------- Li from 2


def li_from_2(x, prec: int | None = None) -> Interval:
    """Enclosure of the integral of 1/ln t over [2, x].

    Uses Li(x) = Ei(ln x) - Ei(ln 2) with MPFR's correctly rounded ``eint``;
    Ei is increasing on (0, oo) so directed endpoints give an enclosure.
    """
    prec = prec or _prec_of(x)
    x = to_interval(x, prec)
    if x.lo < 2:
        raise DomainError("li_from_2 needs x >= 2")
    d, u = contexts(prec)
    if x.hi == 2:
        return _new(mpfr(0), mpfr(0), prec)
    two = mpfr(2)
    lo = d.sub(d.eint(d.log(x.lo)), u.eint(u.log(two)))
    hi = u.sub(u.eint(u.log(x.hi)), d.eint(d.log(two)))
    return _new(max(lo, mpfr(0)), hi, prec)


# ---------------------------------------------------------------- Mellin truncation


def mellin_truncated(y, sigma, T, prec: int = 64, tol_bits: int = 50) -> Interval:
    """Enclosure of (1/2 pi i) int_{sigma-iT}^{sigma+iT} y^s / s ds.

    For y != 1 the segment is traded, by Cauchy's theorem, for the two horizontal
    rays Im s = +-T running away from the side where |y^s| decays.  Along the ray
    the integrand e^{uL}/(u+iT) is integrated piecewise by Taylor series with
    Cauchy-estimate remainders, L = ln y.
    """
    y = Fraction(y) if not isinstance(y, Interval) else y
    sigma_q = Fraction(sigma)
    T_q = Fraction(T)
    if (y <= 0) if not isinstance(y, Interval) else (y.lo <= 0):
        raise DomainError("y must be positive")
    if sigma_q <= 0 or T_q <= 0:
        raise DomainError("sigma and T must be positive")
    TI = Interval(T_q, prec=prec)
    if y == 1:
        return (TI / Interval(sigma_q, prec=prec)).atan() / pi(prec)

    L = Interval(y, prec=prec).log()
    if L.lo <= 0 <= L.hi:
        raise PrecisionError("ln y not separated from zero")
    Lf = float(L.mid())
    aL = abs(Lf)
    eps = 2.0 ** (-tol_bits)
    Tf = float(T_q)
    sig = float(sigma_q)

    # cutoff so that the ray tail e^{-U|L|}/(|L| T) * e^{sigma L} stays below eps
    span = (tol_bits * math.log(2) + max(0.0, math.log(1 / (aL * Tf)))) / aL + 2
    direction = -1 if Lf > 0 else 1
    far = Fraction(sig + direction * span).limit_denominator(1 << 20)

    # piece endpoints as exact rationals walking from sigma outward
    pts = [sigma_q]
    a = sigma_q
    while (a - far) * direction < 0:
        af = float(a)
        hmax = min(2 / aL, math.sqrt(Tf * Tf + max(0.0, abs(af) - 4 / aL) ** 2) / 4)
        step = 2 * hmax
        # keep the pieces clear of the singularity at -iT
        while True:
            nb = af + direction * step
            dmin = 0.0 if (af > 0) != (nb > 0) else min(abs(af), abs(nb))
            if 2 * step <= math.sqrt(Tf * Tf + dmin * dmin):
                break
            step /= 2
        b = Fraction(nb).limit_denominator(1 << 30)
        pts.append(b)
        a = b
    if direction < 0:
        pts.reverse()

    total = ComplexInterval(0, 0, prec)
    err = Interval(0, prec=prec)
    for lo_q, hi_q in zip(pts, pts[1:]):
        piece, perr = _ray_piece(lo_q, hi_q, L, TI, prec, eps)
        total = total + piece
        err = err + perr
    # ray tail beyond the last point
    tail = (L * Interval(far, prec=prec)).exp() / (abs(L) * TI)
    err = err + tail

    phase = ComplexInterval(0, TI * L, prec).exp()
    J = phase * total
    r = err.hi
    im = J.im + _new(-r, r, prec)
    if Lf > 0:
        return 1 + im / pi(prec)
    return -im / pi(prec)


def _ray_piece(a_q: Fraction, b_q: Fraction, L: Interval, T: Interval, prec: int, eps: float):
    """Integral of e^{uL}/(u+iT) over [a, b] and a bound on the truncation error."""
    m_f = float((a_q + b_q) / 2)
    m = Interval(m_f, prec=prec)  # exact dyadic expansion point
    A = Interval(a_q, prec=prec) - m
    B = Interval(b_q, prec=prec) - m
    h = math.nextafter(float(max(A.mag(), B.mag())), math.inf)
    c = ComplexInterval(m, T, prec)
    absc = abs(c)
    emL = (m * L).exp()
    hI = Interval(h, prec=prec)
    # Cauchy estimate on the circle of radius 2h around m (4h <= |c| by construction)
    Mrho = 2 * emL * (2 * hI * abs(L)).exp() / Interval(absc.lo, prec=prec)
    scale = 4 * h * float(Mrho.hi)
    K = max(4, math.ceil(math.log2(max(scale / eps, 2.0))) + 1)
    g = -c.reciprocal()
    bk = ComplexInterval(1, 0, prec)
    Lk = Interval(1, prec=prec)
    powA = A
    powB = B
    acc = bk * (B - A)
    for k in range(1, K):
        Lk = Lk * L / k
        bk = g * bk + Lk
        powA = powA * A
        powB = powB * B
        acc = acc + bk * ((powB - powA) / (k + 1))
    val = (acc / c) * emL
    perr = 4 * hI * Mrho * Interval(2, prec=prec) ** (-K)
    return val, perr
