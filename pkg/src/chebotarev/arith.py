"""Prime sieving, Frobenius classes for abelian fields over Q, and the counts
pi_C, theta_C, psi_C."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Literal

import gmpy2
import numpy as np

from .bounds import (
    FieldParams,
    pi_grh_abel_bound,
    pi_grh_bound,
    pi_oesterle_bound,
)
from .errors import BudgetExceeded, DomainError
from .numerics import DEFAULT_PRECISION, Interval, li_from_2

SEGMENT = 1 << 20
DEFAULT_BUDGET = 1 << 28  # bytes


# ---------------------------------------------------------------- sieve


def _small_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(n + 1, dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if s[p]:
            s[p * p::p] = False
    return np.flatnonzero(s).astype(np.int64)


def _segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi) given all primes up to sqrt(hi)."""
    flags = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        flags[: 2 - lo] = False
    for p in base:
        p = int(p)
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        flags[start - lo::p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def sieve_memory(limit: int, segment: int = SEGMENT) -> int:
    """Peak bytes of the streaming sieve (one segment per worker plus base primes)."""
    r = math.isqrt(limit) + 1
    return min(segment, limit + 1) * 9 + 8 * max(1, int(1.3 * r / max(1.0, math.log(r))))


def prime_blocks(limit: int, segment: int = SEGMENT, threads: int = 1,
                 budget: int | None = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    """Ascending arrays of primes covering [2, limit]; segments are fixed by ``segment``."""
    if limit < 2:
        raise DomainError("limit must be >= 2")
    need = sieve_memory(limit, segment) * max(1, threads)
    if budget is not None and need > budget:
        raise BudgetExceeded(f"sieve up to {limit} needs about {need} bytes, budget {budget}")
    base = _small_primes(math.isqrt(limit) + 1)
    bounds = [(lo, min(lo + segment, limit + 1)) for lo in range(0, limit + 1, segment)]
    if threads <= 1:
        for lo, hi in bounds:
            yield _segment(lo, hi, base)
        return
    with ThreadPoolExecutor(max_workers=threads) as ex:
        # map keeps segment order, so the stream is identical for any thread count
        for i in range(0, len(bounds), threads * 4):
            chunk = bounds[i:i + threads * 4]
            yield from ex.map(lambda b: _segment(b[0], b[1], base), chunk)


def sieve_primes(limit: int, segment: int = SEGMENT, threads: int = 1,
                 budget: int | None = DEFAULT_BUDGET) -> np.ndarray:
    """All primes <= limit in ascending order."""
    blocks = list(prime_blocks(limit, segment, threads, budget))
    return np.concatenate(blocks) if blocks else np.zeros(0, dtype=np.int64)


def prime_count(limit: int, **kw) -> int:
    return sum(len(b) for b in prime_blocks(limit, **kw))


# ---------------------------------------------------------------- fields and Frobenius


def _squarefree(n: int) -> bool:
    n = abs(n)
    return all(n % (q * q) for q in range(2, math.isqrt(n) + 1))


def quadratic_discriminant(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def kronecker(d: int, p: int) -> int:
    """(D/p) for the discriminant D of Q(sqrt d)."""
    return int(gmpy2.kronecker(quadratic_discriminant(d), p))


def _totient_factors(m: int) -> tuple[int, list[int]]:
    primes = [q for q in range(2, m + 1) if m % q == 0 and gmpy2.is_prime(q)]
    phi = m
    for q in primes:
        phi = phi // q * (q - 1)
    return phi, primes


@dataclass(frozen=True)
class GaloisSetup:
    """An abelian extension of Q with a chosen set C of Galois elements.

    family "q" is Q itself, "quad" is Q(sqrt d) with classes in {+1, -1},
    "cyclo" is Q(zeta_m) with classes among the units mod m.
    """

    family: Literal["q", "quad", "cyclo"]
    param: int = 0
    selected_class: frozenset = field(default_factory=lambda: frozenset({1}))

    def __post_init__(self):
        cls = frozenset(int(c) for c in self.selected_class)
        if self.family == "q":
            cls = frozenset({1})
        elif self.family == "quad":
            d = self.param
            if d in (0, 1) or not _squarefree(d):
                raise ValueError("quadratic parameter must be squarefree, nonzero and != 1")
            if not cls or not cls <= {1, -1}:
                raise ValueError("quadratic class must be a nonempty subset of {1, -1}")
        elif self.family == "cyclo":
            m = self.param
            if m < 3:
                raise ValueError("cyclotomic modulus must be >= 3")
            cls = frozenset(c % m for c in cls)
            if not cls or any(math.gcd(c, m) != 1 for c in cls):
                raise ValueError("cyclotomic class must be nonempty units mod m")
        else:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "selected_class", cls)

    @classmethod
    def trivial(cls) -> "GaloisSetup":
        return cls("q", 0, frozenset({1}))

    @classmethod
    def quadratic(cls, d: int, classes=(1,)) -> "GaloisSetup":
        return cls("quad", d, frozenset(classes))

    @classmethod
    def cyclotomic(cls, m: int, classes=(1,)) -> "GaloisSetup":
        return cls("cyclo", m, frozenset(classes))

    @classmethod
    def parse(cls, family: str, classes: str | None = None) -> "GaloisSetup":
        """Parse ``q``, ``quad:D`` or ``cyclo:M`` with a comma list of classes."""
        cl = [int(c) for c in classes.split(",")] if classes else [1]
        if family == "q":
            return cls.trivial()
        kind, _, arg = family.partition(":")
        if kind == "quad":
            return cls.quadratic(int(arg), cl)
        if kind == "cyclo":
            return cls.cyclotomic(int(arg), cl)
        raise ValueError(f"unknown family {family!r}")

    @property
    def family_id(self) -> str:
        return "q" if self.family == "q" else f"{self.family}:{self.param}"

    @property
    def class_id(self) -> str:
        return ",".join(str(c) for c in sorted(self.selected_class))

    @property
    def group(self) -> tuple[int, ...]:
        if self.family == "q":
            return (1,)
        if self.family == "quad":
            return (1, -1)
        return tuple(c for c in range(1, self.param) if math.gcd(c, self.param) == 1)

    @property
    def modulus(self) -> int:
        """Conductor through which Frobenius is read off p mod modulus."""
        if self.family == "q":
            return 1
        if self.family == "quad":
            return abs(quadratic_discriminant(self.param))
        return self.param

    def with_class(self, classes) -> "GaloisSetup":
        return GaloisSetup(self.family, self.param, frozenset(classes))

    def element_table(self) -> np.ndarray:
        """Frobenius element of residue r mod ``modulus`` (0 marks ramified)."""
        M = self.modulus
        if self.family == "q":
            return np.ones(1, dtype=np.int64)
        if self.family == "quad":
            D = quadratic_discriminant(self.param)
            return np.array([int(gmpy2.kronecker(D, r)) for r in range(M)], dtype=np.int64)
        tab = [r if math.gcd(r, M) == 1 else 0 for r in range(M)]
        if M % 4 == 2:
            # Q(zeta_m) = Q(zeta_{m/2}): 2 is unramified, Frobenius is the odd lift of 2
            tab[2] = 2 + M // 2
        return np.array(tab, dtype=np.int64)

    def class_mask(self) -> np.ndarray:
        tab = self.element_table()
        return np.isin(tab, list(self.selected_class)) & (tab != 0)


@dataclass(frozen=True)
class FrobeniusClassification:
    prime: int
    ramified: bool
    element: int | None = None


def frobenius_class(p: int, setup: GaloisSetup) -> FrobeniusClassification:
    if setup.family == "q":
        return FrobeniusClassification(p, False, 1)
    if setup.family == "quad":
        k = kronecker(setup.param, p)
        return FrobeniusClassification(p, k == 0, k if k else None)
    m = setup.param
    if p == 2 and m % 4 == 2:
        return FrobeniusClassification(p, False, 2 + m // 2)
    if m % p == 0:
        return FrobeniusClassification(p, True, None)
    return FrobeniusClassification(p, False, p % m)


def field_invariants(setup: GaloisSetup, prec: int = DEFAULT_PRECISION) -> FieldParams:
    if setup.family == "q":
        return FieldParams.rationals()
    if setup.family == "quad":
        D = quadratic_discriminant(setup.param)
        return FieldParams.from_discriminant(2, D, len(setup.selected_class), prec=prec)
    d = cyclotomic_discriminant(setup.param)
    phi, _ = _totient_factors(setup.param)
    return FieldParams.from_discriminant(phi, d, len(setup.selected_class), prec=prec)


def cyclotomic_discriminant(m: int) -> int:
    """|d| of Q(zeta_m) = m^phi / prod_{q | m} q^(phi/(q-1))."""
    phi, primes = _totient_factors(m)
    den = 1
    for q in primes:
        den *= q ** (phi // (q - 1))
    num = m ** phi
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------- counting


@dataclass(frozen=True)
class CountResult:
    x: int
    pi_c: int
    theta_c: float
    psi_c: float
    ramified_seen: int
    family_id: str = "q"
    class_id: str = "1"


def _power_in_class(p: int, k: int, setup: GaloisSetup, elem: int) -> bool:
    if setup.family == "q":
        return True
    if setup.family == "quad":
        return (elem ** k) in setup.selected_class
    return pow(elem, k, setup.param) in setup.selected_class


def count_up_to(x: int, setup: GaloisSetup, threads: int = 1, segment: int = SEGMENT,
                budget: int | None = DEFAULT_BUDGET, cache: "CountCache | None" = None) -> CountResult:
    """pi_C(x), theta_C(x), psi_C(x) and the number of ramified primes up to x."""
    x = int(x)
    if x < 2:
        raise DomainError("x must be >= 2")
    if cache is not None:
        hit = cache.get(setup, x)
        if hit is not None:
            return hit
    M = setup.modulus
    tab = setup.element_table()
    mask_tab = setup.class_mask()
    pi_c = 0
    ram = 0
    logs = []
    for block in prime_blocks(x, segment, threads, budget):
        r = block % M
        mask = mask_tab[r]
        pi_c += int(mask.sum())
        ram += int((tab[r] == 0).sum())
        logs.append(np.log(block[mask].astype(np.float64)))
    theta = math.fsum(itertools.chain.from_iterable(a.tolist() for a in logs))
    extra = []
    for p in sieve_primes(math.isqrt(x), segment, 1, budget).tolist() if x >= 4 else []:
        fr = frobenius_class(p, setup)
        if fr.ramified:
            continue
        lp = float(np.log(np.float64(p)))
        k, q = 2, p * p
        while q <= x:
            if _power_in_class(p, k, setup, fr.element):
                extra.append(lp)
            k += 1
            q *= p
    psi = math.fsum(itertools.chain.from_iterable([a.tolist() for a in logs] + [extra]))
    res = CountResult(x, pi_c, theta, psi, ram, setup.family_id, setup.class_id)
    if cache is not None:
        cache.put(res)
    return res


def chebyshev_psi(x: int, **kw) -> float:
    return count_up_to(x, GaloisSetup.trivial(), **kw).psi_c


def chebyshev_theta(x: int, **kw) -> float:
    return count_up_to(x, GaloisSetup.trivial(), **kw).theta_c


# ---------------------------------------------------------------- cache


class CountCache:
    """Text cache of CountResult records keyed by (family, class, x).

    Lines after the magic header are tab separated; floats are stored with
    ``float.hex``.  Unreadable lines are ignored and recomputed on demand.
    """

    MAGIC = "#chebotarev-count-cache v1"

    def __init__(self, directory: str | os.PathLike):
        self.path = Path(directory) / "counts.v1.tsv"
        self._data: dict[tuple[str, str, int], CountResult] = {}
        self._load()

    def _load(self):
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except (FileNotFoundError, UnicodeDecodeError):
            return
        if not lines or lines[0] != self.MAGIC:
            return
        for line in lines[1:]:
            try:
                fam, cls, x, pi_c, th, ps, ram = line.split("\t")
                rec = CountResult(int(x), int(pi_c), float.fromhex(th), float.fromhex(ps),
                                  int(ram), fam, cls)
            except ValueError:
                continue
            if rec.pi_c < 0 or rec.theta_c > rec.psi_c or rec.ramified_seen < 0:
                continue
            self._data[(fam, cls, rec.x)] = rec

    def get(self, setup: GaloisSetup, x: int) -> CountResult | None:
        return self._data.get((setup.family_id, setup.class_id, int(x)))

    def put(self, rec: CountResult) -> None:
        self._data[(rec.family_id, rec.class_id, rec.x)] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        rows = [self.MAGIC] + [
            "\t".join([r.family_id, r.class_id, str(r.x), str(r.pi_c), r.theta_c.hex(),
                       r.psi_c.hex(), str(r.ramified_seen)])
            for _, r in sorted(self._data.items())
        ]
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text("\n".join(rows) + "\n", encoding="utf-8")
        tmp.replace(self.path)


# ---------------------------------------------------------------- comparison


@dataclass(frozen=True)
class Comparison:
    x: int
    family_id: str
    class_id: str
    mode: str
    pi_c: int
    expected: Interval  # (|C|/|G|) Li(x)
    lhs: Interval  # |pi_C(x) - (|C|/|G|) Li(x)|
    rhs: Interval
    holds: bool
    margin: float  # rhs_lo / lhs_hi


def compare_to_bound(x: int, setup: GaloisSetup, mode: str = "grh",
                     prec: int = DEFAULT_PRECISION, counts: CountResult | None = None,
                     **count_kw) -> Comparison:
    """Empirical deviation |pi_C(x) - (|C|/|G|) Li(x)| against a GRH-type bound."""
    p = field_invariants(setup, prec)
    if counts is None:
        counts = count_up_to(x, setup, **count_kw)
    expected = Interval(p.class_ratio, prec=prec) * li_from_2(x, prec)
    lhs = abs(counts.pi_c - expected)
    if mode == "grh":
        rhs = pi_grh_bound(x, p, prec).total
    elif mode == "grh-precise":
        rhs = pi_grh_abel_bound(x, p, prec).total
    elif mode == "oesterle":
        rhs = pi_oesterle_bound(x, p, prec).total
    else:
        raise ValueError(f"unknown mode {mode!r}")
    holds = bool(lhs.hi <= rhs.lo)
    margin = math.inf if lhs.hi == 0 else float(rhs.lo / lhs.hi)
    return Comparison(int(x), setup.family_id, setup.class_id, mode, counts.pi_c,
                      expected, lhs, rhs, holds, margin)


def class_ratio(setup: GaloisSetup) -> Fraction:
    return Fraction(len(setup.selected_class), len(setup.group))
