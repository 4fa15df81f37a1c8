"""Zero tables for zeta: window counts, the sum S(x, T) and checks of the
explicit formula and of the zero-free region."""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .bounds import FieldParams, explicit_formula_error, zero_free_beta
from .errors import MonotonicityError, ParseError, RegionError, WindowError
from .numerics import DEFAULT_PRECISION, Interval


@dataclass(frozen=True)
class ZeroTable:
    """Positive ordinates gamma of zeros rho = beta + i gamma, ascending.

    ``complete_to`` (from a ``!complete-to`` header) certifies that every zero
    with 0 < gamma <= complete_to is listed.  Tables without it are usable for
    partial sums but not for counting.
    """

    ordinates: tuple[float, ...]
    source_label: str = ""
    assumed_beta: Fraction = Fraction(1, 2)
    lfunction: str = "zeta"
    complete_to: float | None = None

    @property
    def max_height(self) -> float:
        return self.ordinates[-1] if self.ordinates else 0.0

    @property
    def complete(self) -> bool:
        return self.complete_to is not None

    @property
    def coverage(self) -> float:
        return self.complete_to if self.complete_to is not None else 0.0

    def __len__(self):
        return len(self.ordinates)

    def below(self, T: float) -> tuple[float, ...]:
        """Ordinates with gamma < T."""
        return self.ordinates[: bisect.bisect_left(self.ordinates, T)]

    def with_ordinates(self, extra) -> "ZeroTable":
        """Copy with additional ordinates merged in (for synthetic checks)."""
        ords = tuple(sorted(set(self.ordinates) | {float(g) for g in extra}))
        return ZeroTable(ords, self.source_label + " +synthetic", self.assumed_beta,
                         self.lfunction, self.complete_to)


def parse_zeros(text: str, source_label: str = "") -> ZeroTable:
    ords: list[float] = []
    complete_to = None
    comments = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("!"):
            key, _, val = line[1:].partition(" ")
            if key != "complete-to":
                raise ParseError(f"line {n}: unknown directive {key!r}", n)
            try:
                complete_to = float(val)
            except ValueError as exc:
                raise ParseError(f"line {n}: bad height {val!r}", n) from exc
            continue
        try:
            g = float(line)
        except ValueError as exc:
            raise ParseError(f"line {n}: not a number: {line!r}", n) from exc
        if not math.isfinite(g) or g <= 0:
            raise ParseError(f"line {n}: ordinate must be positive and finite", n)
        if ords and g <= ords[-1]:
            raise MonotonicityError(f"line {n}: ordinate {g} not above {ords[-1]}", n)
        ords.append(g)
    if complete_to is not None and ords and complete_to > ords[-1]:
        raise ParseError(f"complete-to {complete_to} exceeds the last ordinate {ords[-1]}")
    label = source_label or next((c for c in comments if c.lower().startswith("source")), "")
    return ZeroTable(tuple(ords), label, Fraction(1, 2), "zeta", complete_to)


def load_zeros(path: str | Path | None = None) -> ZeroTable:
    """Read a zeros file; ``None`` loads the bundled zeta table."""
    if path is None:
        text = resources.files("chebotarev.data").joinpath("zeta_zeros.txt").read_text("utf-8")
        return parse_zeros(text, "bundled zeta table")
    p = Path(path)
    return parse_zeros(p.read_text(encoding="utf-8"), str(p))


def _require(table: ZeroTable, height: float):
    if not table.complete or height > table.coverage:
        raise WindowError(f"height {height} beyond verified coverage {table.coverage}")


def count_zeros_window(t: float, table: ZeroTable) -> int:
    """Number of zeros with |gamma - t| <= 1, conjugates included."""
    _require(table, abs(t) + 1)
    o = table.ordinates
    n = bisect.bisect_right(o, t + 1) - bisect.bisect_left(o, t - 1)
    # conjugate zeros -gamma fall in the window when -t - 1 <= gamma <= -t + 1
    n += bisect.bisect_right(o, -t + 1) - bisect.bisect_left(o, -t - 1)
    return n


def count_zeros_pair(t: float, table: ZeroTable) -> int:
    """n(t) + n(-t), the quantity bounded in the zero-counting lemma."""
    return count_zeros_window(t, table) + count_zeros_window(-t, table)


def _terms(x: float, gammas: np.ndarray, beta: float) -> np.ndarray:
    rho = beta + 1j * gammas
    return 2.0 * (np.exp(rho * math.log(x)) / rho).real


def s_x_t(x: float, T: float, table: ZeroTable, threads: int = 1, chunk: int = 4096) -> float:
    """sum_{|gamma| < T} x^rho / rho, conjugate pairs combined."""
    if x < 2 or T < 2:
        raise ValueError("need x >= 2 and T >= 2")
    _require(table, T)
    beta = float(table.assumed_beta)
    # |rho| >= beta > 0 for every tabulated zero, so the sum over |rho| < 1/2 is empty
    assert beta >= 0.5
    g = np.asarray(table.below(T), dtype=np.float64)
    parts = [g[i:i + chunk] for i in range(0, len(g), chunk)]
    if threads > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            vals = list(ex.map(lambda a: _terms(x, a, beta), parts))
    else:
        vals = [_terms(x, a, beta) for a in parts]
    return math.fsum(v for a in vals for v in a.tolist())


def psi_lambda_sum(x: float) -> float:
    """sum_{n <= x} Lambda(n) via the sieve (psi over Q)."""
    from .arith import chebyshev_psi
    n = int(math.floor(x))
    return chebyshev_psi(n) if n >= 2 else 0.0


@dataclass(frozen=True)
class ExplicitFormulaResidual:
    x: float
    T: float
    psi_direct: float
    s_sum: float
    residual: float
    bound: Interval
    holds: bool

    @property
    def ratio(self) -> float:
        return self.residual / float(self.bound.lo)

    @property
    def slack(self) -> float:
        return float(self.bound.lo) - self.residual


def check_explicit_formula(x: float, T: float, table: ZeroTable, psi: float | None = None,
                           prec: int = DEFAULT_PRECISION, threads: int = 1) -> ExplicitFormulaResidual:
    """|psi(x) - x + S(x, T)| against the explicit-formula error for K = L = Q."""
    if table.lfunction != "zeta":
        raise ValueError("the explicit-formula check needs a zeta table")
    if T in table.ordinates:
        raise ValueError("T must differ from every ordinate")
    s = s_x_t(x, T, table, threads)
    psi = psi_lambda_sum(x) if psi is None else psi
    residual = abs(psi - x + s)
    bound = explicit_formula_error(Fraction(x), Fraction(T), FieldParams.rationals(), prec).total
    return ExplicitFormulaResidual(x, T, psi, s, residual, bound, residual <= bound.lo)


@dataclass(frozen=True)
class ZeroFreeReport:
    checked: int
    violations: tuple[tuple[float, str], ...]
    min_margin: float  # min over zeros of (region boundary - beta)
    min_ordinate: float

    @property
    def ok(self) -> bool:
        return not self.violations


def check_zero_free_region(table: ZeroTable, p: FieldParams | None = None,
                           prec: int = 64) -> ZeroFreeReport:
    """Every tabulated zero lies left of the zero-free boundary; for n_L = 1 none has |gamma| < 14."""
    p = FieldParams.rationals() if p is None else p
    if not table.complete:
        raise WindowError("zero-free scan needs a table with a complete-to header")
    beta = Interval(table.assumed_beta, prec=prec)
    bad = []
    margin = math.inf
    for g in table.ordinates:
        if p.n_L == 1 and g < 14:
            bad.append((g, "ordinate below 14"))
        try:
            b = zero_free_beta(Fraction(g), p, prec)
        except RegionError:
            continue
        m = b - beta
        margin = min(margin, float(m.lo))
        if not m.certainly_positive():
            bad.append((g, "zero inside the zero-free region"))
    low = table.ordinates[0] if table.ordinates else math.inf
    return ZeroFreeReport(len(table.ordinates), tuple(bad), margin, low)
