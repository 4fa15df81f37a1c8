"""Explicit bounds of the effective Chebotarev theorem as interval evaluators.

Each evaluator returns a :class:`BoundReport` whose terms carry the formula
fragment they implement.  Inputs may be ints, Fractions, decimal strings,
floats or :class:`Interval` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import DomainError, RegionError, ThresholdError
from .numerics import DEFAULT_PRECISION, Interval, li_from_2, pi, to_interval
from .numerics.interval import e as e_const

ROSSER_THETA = Fraction(12703, 12500)  # theta(x) < 1.01624 x
C0 = 783846699796966
UNCOND_K = {
    "statement": 1505234280710,
    "proof-1": 1505243591773,
    "proof-2": 1505243592416,
}


def _q(n, d=1, prec=DEFAULT_PRECISION) -> Interval:
    return Interval(Fraction(n, d), prec=prec)


def _nonneg(v, name: str):
    if to_interval(v, 64).hi < 0:
        raise ValueError(f"{name} must be nonnegative")
    return v


@dataclass(frozen=True)
class FieldParams:
    """Degrees, discriminant and class size of a Galois extension L/K.

    ``ln_dL`` is ln|d_L|; d_L itself is never formed.
    """

    n_L: int
    n_K: int = 1
    ln_dL: object = 0
    class_ratio: Fraction = Fraction(1)
    order_G: int | None = None

    def __post_init__(self):
        if self.n_L < 1 or self.n_K < 1:
            raise ValueError("degrees must be positive")
        if self.n_L % self.n_K:
            raise ValueError("n_K must divide n_L")
        order = self.order_G if self.order_G is not None else self.n_L // self.n_K
        object.__setattr__(self, "order_G", order)
        if order * self.n_K != self.n_L:
            raise ValueError("order_G * n_K must equal n_L")
        ratio = Fraction(self.class_ratio)
        object.__setattr__(self, "class_ratio", ratio)
        if not 0 <= ratio <= 1:
            raise ValueError("class_ratio must lie in [0, 1]")
        if (ratio * order).denominator != 1:
            raise ValueError("class_ratio * order_G must be an integer")
        _nonneg(self.ln_dL, "ln_dL")

    @classmethod
    def rationals(cls) -> "FieldParams":
        return cls(n_L=1, n_K=1, ln_dL=0, class_ratio=Fraction(1), order_G=1)

    @classmethod
    def from_discriminant(cls, n_L: int, d_L: int, class_size: int = 1,
                          n_K: int = 1, prec: int = DEFAULT_PRECISION) -> "FieldParams":
        order = n_L // n_K
        return cls(n_L=n_L, n_K=n_K, ln_dL=Interval(abs(d_L), prec=prec).log(),
                   class_ratio=Fraction(class_size, order), order_G=order)

    def ln_d(self, prec: int = DEFAULT_PRECISION) -> Interval:
        return to_interval(self.ln_dL, prec)

    @property
    def class_size(self) -> int:
        return int(self.class_ratio * self.order_G)

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        ln_d = self.ln_d(64)
        if ln_d.hi == 0 and self.n_L > 1:
            out.append("ln_dL = 0 with n_L > 1: only Q has discriminant 1")
        if not hermite_minkowski_check(self):
            out.append("inconsistent with the Hermite-Minkowski lower bound")
        return tuple(out)

    def echo(self) -> dict:
        ln_d = self.ln_dL
        return {
            "n_L": self.n_L,
            "n_K": self.n_K,
            "ln_dL": str(ln_d) if not isinstance(ln_d, Interval) else ln_d.format(20),
            "class_ratio": str(self.class_ratio),
            "order_G": self.order_G,
        }


@dataclass(frozen=True)
class CharacterParams:
    """Conductor data of a Hecke character: ln A(chi), degree n_E, gamma-factor counts."""

    ln_A: object = 0
    n_E: int = 1
    a_chi: int | None = None
    b_chi: int = 0
    is_principal: bool = False

    def __post_init__(self):
        if self.n_E < 1:
            raise ValueError("n_E must be positive")
        _nonneg(self.ln_A, "ln_A")
        a = self.a_chi if self.a_chi is not None else self.n_E - self.b_chi
        object.__setattr__(self, "a_chi", a)
        if a < 0 or self.b_chi < 0 or a + self.b_chi != self.n_E:
            raise ValueError("a_chi + b_chi must equal n_E")

    def lnA(self, prec: int) -> Interval:
        return to_interval(self.ln_A, prec)

    def echo(self) -> dict:
        return {"ln_A": str(self.ln_A), "n_E": self.n_E, "a_chi": self.a_chi,
                "b_chi": self.b_chi, "is_principal": self.is_principal}


@dataclass(frozen=True)
class ExceptionalZero:
    """Possible real zero beta0 of zeta_L and the sign chi0(g); chi0_sign = 0 means none."""

    beta0: Fraction = Fraction(0)
    chi0_sign: int = 0

    def __post_init__(self):
        if self.chi0_sign not in (-1, 0, 1):
            raise ValueError("chi0_sign must be -1, 0 or 1")
        b = Fraction(self.beta0)
        object.__setattr__(self, "beta0", b)
        if self.chi0_sign and not 0 < b < 1:
            raise ValueError("beta0 must lie in (0, 1)")

    @property
    def present(self) -> bool:
        return self.chi0_sign != 0

    def check_against(self, p: FieldParams, prec: int = DEFAULT_PRECISION) -> None:
        if not self.present:
            return
        ln_d = p.ln_d(prec)
        if ln_d.hi == 0:
            raise DomainError("no exceptional zero is possible when d_L = 1")
        floor = 1 - 1 / (4 * ln_d)
        if Interval(self.beta0, prec=prec).certainly_lt(floor):
            raise DomainError("beta0 below 1 - 1/(4 ln d_L)")


@dataclass(frozen=True)
class Term:
    label: str
    value: Interval
    anchor: str


@dataclass(frozen=True)
class BoundReport:
    name: str
    total: Interval
    terms: tuple[Term, ...]
    parameters: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def term(self, label: str) -> Interval:
        for t in self.terms:
            if t.label == label:
                return t.value
        raise KeyError(label)

    def as_rows(self) -> list[dict]:
        rows = [{"term": t.label, "lo": _s(t.value.lo, -1), "hi": _s(t.value.hi, 1),
                 "anchor": t.anchor} for t in self.terms]
        rows.append({"term": "total", "lo": _s(self.total.lo, -1), "hi": _s(self.total.hi, 1),
                     "anchor": ""})
        return rows


def _s(x, direction: int) -> str:
    return format(x, ".17" + ("D" if direction < 0 else "U") + "g")


def _report(name, raw_terms, params, scale=None, flags=(), prec=DEFAULT_PRECISION) -> BoundReport:
    """Build a report; ``scale`` (the class ratio) multiplies every term and the total."""
    zero = Interval(0, prec=prec)
    raw_sum = zero
    for _, v, _ in raw_terms:
        raw_sum = raw_sum + v
    if scale is not None:
        s = Interval(scale, prec=prec) if not isinstance(scale, Interval) else scale
        terms = tuple(Term(lbl, s * v, anc) for lbl, v, anc in raw_terms)
        total = s * raw_sum
    else:
        terms = tuple(Term(lbl, v, anc) for lbl, v, anc in raw_terms)
        total = raw_sum
    for t in terms:
        if t.value.hi < 0:
            raise AssertionError(f"negative term {t.label}")
    return BoundReport(name, total, terms, dict(params), tuple(flags))


def _x(x, prec, minimum=2, name="x") -> Interval:
    xi = to_interval(x, prec)
    if xi.lo < minimum:
        raise DomainError(f"{name} must be >= {minimum}")
    return xi


def _echo_val(v) -> str:
    return v.format(20) if isinstance(v, Interval) else str(v)


# ---------------------------------------------------------------- lemma level


def r1_bound(x, T, p: FieldParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Majorant of the remainder R_1 in the Perron step."""
    X = _x(x, prec)
    Ti = _x(T, prec, 1, "T")
    lx = X.log()
    ln2 = Interval(2, prec=prec).log()
    terms = [
        ("discriminant", 2 / ln2 * lx * p.ln_d(prec) / p.order_G,
         r"\frac{2}{\ln 2}\ln(x)\frac{\ln(d_L)}{|G|}"),
        ("log", _q(73, 4, prec) * p.n_K * lx, r"\frac{73}{4}n_K\ln(x)"),
        ("truncation", _q(145, 6, prec) * p.n_K * X * lx.sqr() / Ti,
         r"\frac{145}{6}n_K T^{-1} x(\ln(x))^2"),
    ]
    return _report("r1", terms, {"x": _echo_val(x), "T": _echo_val(T), **p.echo()}, prec=prec)


def nchi_bound(t, c: CharacterParams, prec: int = DEFAULT_PRECISION) -> Interval:
    """Upper bound for n_chi(t) + n_chi(-t)."""
    ti = abs(to_interval(t, prec))
    return _q(5, 2, prec) * (c.lnA(prec) + c.n_E * ((ti + 3).log() + _q(1075, 134, prec)))


def bchi_bound(epsilon, c: CharacterParams, prec: int = DEFAULT_PRECISION) -> Interval:
    """Bound for |B(chi) + sum_{|rho|<eps} 1/rho|."""
    eps = to_interval(epsilon, prec)
    if eps.lo <= 0 or eps.hi > 1:
        raise DomainError("epsilon must lie in (0, 1]")
    pi_ = pi(prec)
    a = (5 * pi_.sqr() + 34 + 10 / eps) / 8 * c.lnA(prec)
    b = (_q(10842, 107, prec) + _q(1790, 157, prec) / eps) * c.n_E
    return a + b


def lprime_partial_bound(t, c: CharacterParams, prec: int = DEFAULT_PRECISION) -> Interval:
    """Bound for |L'/L(s) - sum_{|gamma-t|<=1} 1/(s-rho)| on -1/2 <= sigma <= 3."""
    ti = abs(to_interval(t, prec))
    pi_ = pi(prec)
    a = _q(5, 4, prec) * (1 + _q(7, 4, prec) * pi_.sqr()) * c.lnA(prec)
    b = Interval(c.n_E, prec=prec) / 2 * (ti + 5).log() * (57 + 35 / (ti + 4))
    return a + b + _q(50096, 255, prec) * c.n_E + _q(53, 6, prec)


def truncation_bound(x, T, U, c: CharacterParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Five-term bound on |I_chi(x,T) - I_chi(x,T,U)|."""
    X = _x(x, prec)
    Ti = _x(T, prec, 2, "T")
    Uq = Fraction(U) if not isinstance(U, Interval) else None
    if Uq is None or Uq < Fraction(1, 2) or (Uq - Fraction(1, 2)).denominator != 1:
        raise DomainError("U must be a half-integer j + 1/2 with j >= 0")
    Ui = Interval(Uq, prec=prec)
    lx = X.log()
    pi_, e_ = pi(prec), e_const(prec)
    lnA = c.lnA(prec)
    nE = c.n_E
    bracket = lnA + nE * ((Ti + 5).log() + _q(1075, 268, prec))
    terms = [
        ("horizontal-log", 65 * e_ / (8 * pi_) * X * lx / (Ti - 1) * bracket,
         r"\frac{65e}{8\pi}\frac{x\ln(x)}{T-1}"),
        ("horizontal", 5 * e_ / (2 * pi_) * X / (Ti - 1) * bracket,
         r"\frac{5e}{2\pi}\frac{x}{T-1}"),
        ("near-zeros", e_ / pi_ * X / (Ti * lx) *
         (_q(571, 25, prec) * lnA + nE * (_q(57, 2, prec) * (Ti + 5).log() + _q(5921, 28, prec))),
         r"\frac{e}{\pi}\frac{x}{T\ln(x)}\left[\frac{571}{25}\ln(A(\chi))"),
        ("vertical", X.rpow(-Ui) * Ti / (pi_ * Ui) *
         (lnA + nE * ((Ui + Ti + 2).log() + _q(19683, 812, prec))),
         r"\frac{x^{-U} T}{\pi U}"),
        ("left-strip", 4 * nE * X.rpow(_q(-1, 4, prec)) / (17 * pi_ * Ti * lx.sqr()),
         r"\frac{4n_E x^{-1/4}}{17\pi T(\ln(x))^2}"),
    ]
    params = {"x": _echo_val(x), "T": _echo_val(T), "U": str(Uq), **c.echo()}
    return _report("truncation", terms, params, prec=prec)


def _explicit_raw(X: Interval, Ti: Interval, p: FieldParams, prec: int):
    lx = X.log()
    pi_, e_ = pi(prec), e_const(prec)
    ln_d = p.ln_d(prec)
    nL = p.n_L
    bracket = ln_d + nL * ((Ti + 5).log() + _q(1075, 268, prec))
    ln2 = Interval(2, prec=prec).log()
    return [
        ("perron", _q(145, 6, prec) * nL * X * lx.sqr() / Ti,
         r"\frac{145}{6}n_L \frac{x(\ln(x))^2}{T}"),
        ("horizontal-log", 65 * e_ / (8 * pi_) * X * lx / (Ti - 1) * bracket,
         r"\frac{65e}{8\pi}\frac{x\ln(x)}{T-1}"),
        ("horizontal", _q(5, 2, prec) * (e_ / pi_ + 1) * X / (Ti - 1) * bracket,
         r"\frac{5}{2}\left(\frac{e}{\pi}+1\right)\frac{x}{T-1}"),
        ("near-zeros", e_ / pi_ * X / (Ti * lx) *
         (_q(571, 25, prec) * ln_d + nL * (_q(57, 2, prec) * (Ti + 5).log() + _q(5921, 28, prec))),
         r"\frac{e}{\pi}\frac{x}{T\ln(x)}\left[\frac{571}{25}\ln(d_L)"),
        ("ramified-log", lx * (2 / ln2 * ln_d + _q(77, 4, prec) * nL),
         r"\ln(x)\left[\frac{2}{\ln(2)}\ln(d_L)+\frac{77}{4}n_L\right]"),
        ("constant", _q(94, 7, prec) * ln_d + _q(3817, 30, prec) * nL,
         r"\frac{94}{7}\ln(d_L) + \frac{3817}{30}n_L"),
        ("left-strip", 4 * nL * X.rpow(_q(-1, 4, prec)) / (17 * pi_ * Ti * lx.sqr()),
         r"\frac{4n_L x^{-1/4}}{17\pi T(\ln(x))^2}"),
    ]


def explicit_formula_error(x, T, p: FieldParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Right-hand side of the truncated explicit formula for psi_C."""
    X = _x(x, prec)
    Ti = _x(T, prec, 2, "T")
    params = {"x": _echo_val(x), "T": _echo_val(T), **p.echo()}
    return _report("explicit-formula", _explicit_raw(X, Ti, p, prec), params,
                   scale=p.class_ratio, prec=prec)


def zero_free_threshold(p: FieldParams, prec: int = DEFAULT_PRECISION) -> Interval:
    return 1 / (1 + 4 * p.ln_d(prec))


def zero_free_beta(gamma, p: FieldParams, prec: int = DEFAULT_PRECISION) -> Interval:
    """Abscissa left of which zeros of zeta_L at height gamma must lie."""
    g = abs(to_interval(gamma, prec))
    if g.lo < zero_free_threshold(p, prec).hi:
        raise RegionError("|gamma| below 1/(1 + 4 ln d_L); use the exceptional-zero lemma")
    sqrt3 = Interval(3, prec=prec).sqrt()
    denom = (22 * p.ln_d(prec)
             + p.n_L * (_q(5, 2, prec) * (g + 3).log() + _q(1078, 67, prec)
                        + 2 * Interval(3, prec=prec).log())
             + _q(15, 2, prec))
    return 1 - (7 - 4 * sqrt3) / denom


# ---------------------------------------------------------------- theorem level


def _psi_grh_raw(X, p, prec, precise):
    lx = X.log()
    sx = X.sqrt()
    ln_d = p.ln_d(prec)
    nL = p.n_L
    if not precise:
        return [
            ("discriminant", sx * lx * (_q(23, 3, prec) + _q(4781, 96, prec) / lx) * ln_d,
             r"\left(\frac{23}{3}+\frac{4781}{96\ln(x)}\right)\ln(d_L)"),
            ("degree", sx * lx * (_q(863, 31, prec) * lx + _q(68, 3, prec)
                                  + _q(58681, 113, prec) / lx) * nL,
             r"\left(\frac{863}{31}\ln(x)+\frac{68}{3}+\frac{58681}{113\ln(x)}\right)n_L"),
        ]
    d = [
        ("disc:ln x", _q(23, 3, prec) * lx, r"\frac{23}{3}\ln(x)"),
        ("disc:const", _q(29, 3, prec), r"\frac{29}{3}"),
        ("disc:1/ln x", _q(336, 17, prec) / lx, r"\frac{336}{17\ln(x)}"),
        ("disc:ln x/sqrt x", _q(26, 9, prec) * lx / sx, r"\frac{26\ln(x)}{9\sqrt{x}}"),
        ("disc:1/sqrt x", _q(94, 7, prec) / sx, r"\frac{94}{7\sqrt{x}}"),
    ]
    g = [
        ("deg:ln^2 x", _q(863, 31, prec) * lx.sqr(), r"\frac{863}{31}(\ln(x))^2"),
        ("deg:ln x", _q(68, 3, prec) * lx, r"\frac{68}{3}\ln(x)"),
        ("deg:const", _q(1198, 13, prec), r"\frac{1198}{13}"),
        ("deg:1/ln x", _q(1343, 6, prec) / lx, r"\frac{1343}{6\ln(x)}"),
        ("deg:ln x/sqrt x", _q(77, 4, prec) * lx / sx, r"\frac{77\ln(x)}{4\sqrt{x}}"),
        ("deg:1/sqrt x", _q(3817, 30, prec) / sx, r"\frac{3817}{30\sqrt{x}}"),
        ("deg:x^-3/4", _q(3, 40, prec) / (X.rpow(_q(3, 4, prec)) * lx.sqr()),
         r"\frac{3}{40x^{3/4}(\ln(x))^2}"),
    ]
    return ([(lbl, sx * v * ln_d, a) for lbl, v, a in d]
            + [(lbl, sx * v * nL, a) for lbl, v, a in g])


def psi_grh_bound(x, p: FieldParams, precise: bool = False,
                  prec: int = DEFAULT_PRECISION) -> BoundReport:
    """GRH bound on |psi_C(x) - (|C|/|G|) x| (compact, or the precise lower-order form)."""
    X = _x(x, prec)
    params = {"x": _echo_val(x), "precise": precise, **p.echo()}
    name = "psi-grh-precise" if precise else "psi-grh"
    return _report(name, _psi_grh_raw(X, p, prec, precise), params,
                   scale=p.class_ratio, prec=prec)


def theta_from_psi_gap(x, p: FieldParams, prec: int = DEFAULT_PRECISION) -> Interval:
    """Upper bound (22/15) n_K sqrt(x) ln x for psi_C - theta_C."""
    X = _x(x, prec)
    return _q(22, 15, prec) * p.n_K * X.sqrt() * X.log()


def pi_grh_bound(x, p: FieldParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """GRH bound on |pi_C(x) - (|C|/|G|) Li(x)|."""
    X = _x(x, prec)
    lx = X.log()
    sx = X.sqrt()
    terms = [
        ("discriminant", sx * (32 + 181 / lx) * p.ln_d(prec),
         r"\left(32+\frac{181}{\ln(x)}\right)\ln(d_L)"),
        ("degree", sx * (28 * lx + 330 + 1655 / lx) * p.n_L,
         r"\left(28\ln(x)+330+\frac{1655}{\ln(x)}\right)n_L"),
    ]
    return _report("pi-grh", terms, {"x": _echo_val(x), **p.echo()},
                   scale=p.class_ratio, prec=prec)


def pi_oesterle_bound(x, p: FieldParams, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Oesterle's announced GRH bound; kept only as an unproven comparison reference."""
    X = _x(x, prec)
    lx = X.log()
    sx = X.sqrt()
    pi_ = pi(prec)
    terms = [
        ("discriminant", sx * (1 / pi_ + _q(53, 10, prec) / lx) * p.ln_d(prec),
         r"\ln(d_L)\left(\frac{1}{\pi}+\frac{5,3}{\ln(x)}\right)"),
        ("degree", sx * (2 + lx / (2 * pi_)) * p.n_L,
         r"n_L\left(2+\frac{\ln(x)}{2\pi}\right)"),
    ]
    return _report("pi-oesterle", terms, {"x": _echo_val(x), **p.echo()},
                   scale=p.class_ratio, flags=("unproven comparison reference",), prec=prec)


def pi_grh_abel_bound(x, p: FieldParams, prec: int = DEFAULT_PRECISION,
                      pieces: int = 400) -> BoundReport:
    """Bound on |pi_C(x) - (|C|/|G|) Li(x)| by partial summation from the precise psi form.

    With E(t) = precise psi bound + (22/15) n_K sqrt(t) ln t >= |theta_C(t) - r t|,
    |pi_C(x) - r Li(x)| <= E(x)/ln x + int_2^x E(t)/(t ln^2 t) dt + 2r/ln 2.
    The integral is enclosed piecewise in u = ln t by interval extension.
    """
    X = _x(x, prec)
    r = Interval(p.class_ratio, prec=prec)

    def E(t: Interval) -> Interval:
        raw = _psi_grh_raw(t, p, prec, True)
        s = Interval(0, prec=prec)
        for _, v, _ in raw:
            s = s + v
        return r * s + theta_from_psi_gap(t, p, prec)

    lx = X.log()
    u0 = Interval(2, prec=prec).log()
    integral = Interval(0, prec=prec)
    if X.hi > 2:
        a = float(u0.lo)
        b = float(lx.hi)
        edges = [Interval(2, prec=prec).log()]
        for i in range(1, pieces):
            edges.append(Interval(a + (b - a) * i / pieces, prec=prec))
        edges.append(lx)
        for lo_e, hi_e in zip(edges, edges[1:]):
            if hi_e.hi <= lo_e.lo:
                continue
            piece = Interval.hull_of(lo_e, hi_e, prec=prec)
            t = piece.exp()
            t = Interval(max(t.lo, 2), t.hi, prec=prec) if t.lo < 2 else t
            integrand = E(t) / piece.sqr()  # E(e^u) / u^2 du
            width = Interval(hi_e.hi, prec=prec) - Interval(lo_e.lo, prec=prec)
            integral = integral + integrand * Interval(width.hi, prec=prec)
        # the certified upper end is itself the bound used
        integral = Interval(integral.hi, integral.hi, prec=prec)
    terms = [
        ("endpoint", E(X) / lx, r"\frac{E(x)}{\ln(x)}"),
        ("partial-summation", integral, r"\int_2^x \frac{E(t)}{t(\ln t)^2}\,dt"),
        ("Li-offset", 2 * r / u0, r"\frac{2|C|}{|G|\ln 2}"),
    ]
    return _report("pi-grh-precise", terms, {"x": _echo_val(x), **p.echo()}, prec=prec)


def uncond_ln_threshold(p: FieldParams, power: int = 8, variant: str = "statement",
                        prec: int = DEFAULT_PRECISION) -> Interval:
    """Exponent of the validity threshold exp(power n_L (ln 150867 + k ln d_L)^2).

    ``variant`` "statement" uses k = 44/5; "abel" uses k = 1 as in the partial
    summation passage.
    """
    k = _q(44, 5, prec) if variant == "statement" else _q(1, 1, prec)
    base = Interval(150867, prec=prec).log() + k * p.ln_d(prec)
    return power * p.n_L * base.sqr()


def _uncond_check(X: Interval, p, power, force, prec):
    ln_th = uncond_ln_threshold(p, power, prec=prec)
    flags = []
    lx = X.log()
    if lx.lo < ln_th.hi and lx.hi >= ln_th.lo:
        flags.append("at the validity threshold (undecided at this precision)")
    elif lx.hi < ln_th.lo:
        if not force:
            raise ThresholdError(
                f"x below the validity threshold exp({power} n_L (ln 150867 + (44/5) ln d_L)^2)"
                f" = exp({ln_th.format(8)})", ln_threshold=ln_th)
        flags.append("out of proven range")
    return flags


def psi_uncond_bound(x, p: FieldParams, ez: ExceptionalZero | None = None,
                     variant: Literal["statement", "proof-1", "proof-2"] = "statement",
                     force: bool = False, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Unconditional bound for psi_C: exceptional-zero term plus the R(x) envelope."""
    ez = ez or ExceptionalZero()
    X = _x(x, prec)
    flags = _uncond_check(X, p, 4, force, prec)
    ez.check_against(p, prec)
    if variant != "statement":
        flags.append(f"constant {UNCOND_K[variant]} from the proof exceeds the stated "
                     f"{UNCOND_K['statement']}")
    else:
        flags.append("stated constant is smaller than the proof's 1505243592416")
    c = (7 - 4 * Interval(3, prec=prec).sqrt()) / 5
    envelope = UNCOND_K[variant] * X * (-(c * (X.log() / p.n_L).sqrt())).exp()
    terms = []
    if ez.present:
        b = Interval(ez.beta0, prec=prec)
        terms.append(("exceptional", X.rpow(b) / b, r"\chi_0(g)\frac{x^{\beta_0}}{\beta_0}"))
    terms.append(("envelope", envelope,
                  r"|R(x)| \leq 1505234280710x\exp\left(-\frac{7-4\sqrt{3}}{5}"))
    params = {"x": _echo_val(x), "variant": variant, "beta0": str(ez.beta0),
              "chi0": ez.chi0_sign, **p.echo()}
    return _report("psi-uncond", terms, params, scale=p.class_ratio, flags=flags, prec=prec)


def pi_uncond_bound(x, p: FieldParams, ez: ExceptionalZero | None = None,
                    force: bool = False, prec: int = DEFAULT_PRECISION) -> BoundReport:
    """Unconditional effective Chebotarev bound: Siegel term plus C_0 envelope."""
    ez = ez or ExceptionalZero()
    X = _x(x, prec)
    flags = _uncond_check(X, p, 8, force, prec)
    ez.check_against(p, prec)
    r = Interval(p.class_ratio, prec=prec)
    terms = []
    if ez.present:
        xb = X.rpow(Interval(ez.beta0, prec=prec))
        siegel = li_from_2(xb, prec) if xb.lo >= 2 else Interval(0, prec=prec)
        terms.append(("siegel", r * siegel, r"\frac{|C|}{|G|}\mathrm{Li}(x^\beta)"))
    env = C0 * X * (-(X.log() / p.n_L).sqrt() / 99).exp()
    terms.append(("envelope", env, r"C_0x \exp\left(-\frac{1}{99} \sqrt{\frac{\ln(x)}{n_L}}\right)"))
    params = {"x": _echo_val(x), "beta0": str(ez.beta0), "chi0": ez.chi0_sign, **p.echo()}
    return _report("pi-uncond", terms, params, flags=flags, prec=prec)


def hermite_minkowski_check(p: FieldParams, prec: int = 64) -> bool:
    """False only when d_L < (pi/3)(3 pi/4)^(n_L - 1) is certain."""
    if p.n_L == 1:
        return True
    pi_ = pi(prec)
    rhs = (pi_ / 3).log() + (p.n_L - 1) * (3 * pi_ / 4).log()
    return not p.ln_d(prec).certainly_lt(rhs)


def stark_beta_envelope(p: FieldParams, c, prec: int = DEFAULT_PRECISION) -> Interval:
    """1 - 1/(c d_L^(1/n_L)) for a caller-supplied constant c > 0."""
    ci = to_interval(c, prec)
    if ci.lo <= 0:
        raise DomainError("c must be positive")
    return 1 - 1 / (ci * (p.ln_d(prec) / p.n_L).exp())


# ---------------------------------------------------------------- presets and lemma checks


def preset_T_grh(x, prec: int = DEFAULT_PRECISION) -> Interval:
    """T = sqrt(x) + 1."""
    return to_interval(x, prec).sqrt() + 1


def digamma_region_bound(z_abs: Interval, region: Literal["re", "im", "away"], param,
                         prec: int = DEFAULT_PRECISION) -> Interval:
    """Right-hand sides of the three digamma inequalities.

    region "re":   Re z >= a          -> ln|z| + pi/2 + 1/a
    region "im":   |Im z| >= b        -> ln|z| + pi(1 + 1/(2b)) + 1/(2b)
    region "away": |z + k| >= 1/8     -> ln|z| + 83/5
    """
    lz = z_abs.log()
    pi_ = pi(prec)
    if region == "re":
        a = to_interval(param, prec)
        return lz + pi_ / 2 + 1 / a
    if region == "im":
        b = to_interval(param, prec)
        return lz + pi_ * (1 + 1 / (2 * b)) + 1 / (2 * b)
    if region == "away":
        return lz + _q(83, 5, prec)
    raise ValueError(region)


def mellin_lemma_bound(y, sigma, T, prec: int = 64) -> tuple[Interval, Interval]:
    """(target, allowed deviation) of the three truncated-Mellin inequalities."""
    yq, s, Tq = Fraction(y), Fraction(sigma), Fraction(T)
    if yq == 1:
        return _q(1, 2, prec), Interval(s / Tq, prec=prec)
    Y = Interval(yq, prec=prec)
    dev = Y.rpow(Interval(s, prec=prec))
    inv = 1 / (Interval(Tq, prec=prec) * abs(Y.log()))
    # min(1, .) is monotone; enclose it endpoint-wise
    lo = min(inv.lo, 1)
    hi = min(inv.hi, 1)
    m = Interval(lo, hi, prec=prec)
    target = Interval(1 if yq > 1 else 0, prec=prec)
    return target, dev * m
