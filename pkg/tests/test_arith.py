import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chebotarev import BudgetExceeded, DomainError, arith
from chebotarev.arith import CountCache, GaloisSetup
from chebotarev.numerics import Interval


def prime_power(n: int):
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


def legendre_euler(D: int, p: int) -> int:
    """(D/p) by Euler's criterion, and the mod-8 rule at p = 2."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    if D % p == 0:
        return 0
    return 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1


def frob_oracle(p: int, s: GaloisSetup):
    if s.family == "q":
        return 1
    if s.family == "quad":
        k = legendre_euler(arith.quadratic_discriminant(s.param), p)
        return k or None
    m = s.param
    if p == 2 and m % 4 == 2:
        half = m // 2
        return next(r for r in range(m) if r % 2 and r % half == 2 % half)
    return None if m % p == 0 else p % m


def power(elem, k, s):
    if s.family == "cyclo":
        return pow(elem, k, s.param)
    return elem ** k


def brute_counts(x: int, s: GaloisSetup):
    pi_c, th, ps = 0, [], []
    for n in range(2, x + 1):
        pk = prime_power(n)
        if pk is None:
            continue
        p, k = pk
        f = frob_oracle(p, s)
        if f is None or power(f, k, s) not in s.selected_class:
            continue
        ps.append(math.log(p))
        if k == 1:
            pi_c += 1
            th.append(math.log(p))
    return pi_c, math.fsum(th), math.fsum(ps)


# ---------------------------------------------------------------- sieve


def test_small_sieves():
    assert arith.sieve_primes(10).tolist() == [2, 3, 5, 7]
    assert arith.sieve_primes(2).tolist() == [2]
    assert arith.prime_count(100) == 25
    with pytest.raises(DomainError):
        arith.sieve_primes(1)


@given(st.integers(min_value=2, max_value=20_000), st.sampled_from([7, 64, 1000, 1 << 20]))
@settings(max_examples=40, deadline=None)
def test_sieve_matches_sympy(n, seg):
    assert arith.sieve_primes(n, segment=seg).tolist() == list(sympy.primerange(2, n + 1))


def test_sieve_threads_and_budget():
    a = arith.sieve_primes(300_000, segment=4096)
    b = arith.sieve_primes(300_000, segment=4096, threads=8)
    assert np.array_equal(a, b)
    with pytest.raises(BudgetExceeded):
        arith.sieve_primes(10**7, budget=1000)


# ---------------------------------------------------------------- fields


def test_kronecker_examples():
    assert arith.kronecker(-1, 2) == 0
    assert arith.kronecker(-1, 5) == 1
    assert arith.kronecker(-1, 7) == -1
    assert arith.quadratic_discriminant(5) == 5
    assert arith.quadratic_discriminant(-1) == -4
    assert arith.quadratic_discriminant(2) == 8


@given(st.sampled_from([-23, -15, -7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 13, 21, 33]),
       st.sampled_from(list(sympy.primerange(2, 400))))
def test_kronecker_matches_euler_criterion(d, p):
    D = arith.quadratic_discriminant(d)
    assert arith.kronecker(d, p) == legendre_euler(D, p)


def test_frobenius_examples():
    i = GaloisSetup.quadratic(-1)
    assert arith.frobenius_class(2, i).ramified
    assert arith.frobenius_class(5, i).element == 1
    assert arith.frobenius_class(7, i).element == -1
    z5 = GaloisSetup.cyclotomic(5)
    assert arith.frobenius_class(5, z5).ramified
    assert arith.frobenius_class(13, z5).element == 3
    z6 = GaloisSetup.cyclotomic(6)
    assert not arith.frobenius_class(2, z6).ramified
    assert arith.frobenius_class(2, z6).element == 5


@pytest.mark.parametrize("setup,n,d", [
    (GaloisSetup.trivial(), 1, 1),
    (GaloisSetup.quadratic(-1), 2, 4),
    (GaloisSetup.quadratic(5), 2, 5),
    (GaloisSetup.cyclotomic(4), 2, 4),
    (GaloisSetup.cyclotomic(5), 4, 125),
    (GaloisSetup.cyclotomic(8), 4, 256),
    (GaloisSetup.cyclotomic(12), 4, 144),
])
def test_field_invariants(setup, n, d):
    p = arith.field_invariants(setup)
    assert p.n_L == n
    assert p.ln_d().overlaps(Interval(d).log())
    if setup.family == "cyclo":
        assert arith.cyclotomic_discriminant(setup.param) == d


@given(st.integers(min_value=3, max_value=60))
def test_cyclotomic_discriminant_via_sympy(m):
    if m % 4 == 2:
        return
    x = sympy.Symbol("x")
    D = sympy.discriminant(sympy.cyclotomic_poly(m, x), x)
    assert arith.cyclotomic_discriminant(m) == abs(D)


def test_setup_validation_and_parse():
    for bad in (lambda: GaloisSetup.quadratic(4), lambda: GaloisSetup.quadratic(1),
                lambda: GaloisSetup.quadratic(5, [2]), lambda: GaloisSetup.cyclotomic(2),
                lambda: GaloisSetup.cyclotomic(8, [2]), lambda: GaloisSetup("cubic", 7)):
        with pytest.raises(ValueError):
            bad()
    s = GaloisSetup.parse("cyclo:8", "3,5")
    assert s.family_id == "cyclo:8" and s.class_id == "3,5" and arith.class_ratio(s) == Fraction(1, 2)
    assert GaloisSetup.parse("q").family_id == "q"
    with pytest.raises(ValueError):
        GaloisSetup.parse("cubic:7")


# ---------------------------------------------------------------- counting


def test_rational_counts_at_10():
    r = arith.count_up_to(10, GaloisSetup.trivial())
    assert r.pi_c == 4
    assert math.isclose(r.theta_c, math.log(210), rel_tol=1e-15)
    assert math.isclose(r.psi_c, math.log(2520), rel_tol=1e-15)


SETUPS = [GaloisSetup.trivial(), GaloisSetup.quadratic(-1, [1]), GaloisSetup.quadratic(-1, [-1]),
          GaloisSetup.quadratic(5, [-1]), GaloisSetup.quadratic(-3, [1, -1]),
          GaloisSetup.cyclotomic(5, [2]), GaloisSetup.cyclotomic(8, [1, 7]),
          GaloisSetup.cyclotomic(6, [5]), GaloisSetup.cyclotomic(10, [1]),
          GaloisSetup.cyclotomic(12, [5, 11])]


@pytest.mark.parametrize("setup", SETUPS, ids=lambda s: f"{s.family_id}[{s.class_id}]")
def test_counts_match_brute_force(setup):
    for x in (2, 3, 30, 1000, 4321):
        r = arith.count_up_to(x, setup, segment=257)
        pi_c, th, ps = brute_counts(x, setup)
        assert r.pi_c == pi_c
        assert math.isclose(r.theta_c, th, rel_tol=1e-12, abs_tol=1e-12)
        assert math.isclose(r.psi_c, ps, rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.parametrize("m", [3, 5, 7, 8, 9, 10, 12])
def test_partition_identity(m):
    x = 50_000
    total = arith.prime_count(x)
    parts = [arith.count_up_to(x, GaloisSetup.cyclotomic(m, [c])) for c in GaloisSetup.cyclotomic(m).group]
    assert sum(p.pi_c for p in parts) + parts[0].ramified_seen == total
    assert math.isclose(math.fsum(p.psi_c for p in parts)
                        + sum(math.log(q) * int(math.log(x, q) + 1e-12)
                              for q in sympy.primefactors(m) if not (q == 2 and m % 4 == 2)),
                        arith.chebyshev_psi(x), rel_tol=1e-12)


def test_psi_by_mangoldt_sum():
    x = 100_000
    ref = math.fsum(float(sympy.log(p)) * int(math.log(x, p) + 1e-12)
                    for p in sympy.primerange(2, x + 1))
    assert math.isclose(arith.chebyshev_psi(x), ref, rel_tol=1e-12)
    assert arith.chebyshev_theta(x) <= arith.chebyshev_psi(x)


@given(st.integers(min_value=2, max_value=5000), st.integers(min_value=0, max_value=500),
       st.sampled_from(SETUPS))
@settings(max_examples=40, deadline=None)
def test_counts_monotone(x, dx, setup):
    a, b = arith.count_up_to(x, setup), arith.count_up_to(x + dx, setup)
    assert a.pi_c <= b.pi_c and a.theta_c <= b.theta_c and a.psi_c <= b.psi_c
    assert 0 <= a.psi_c - a.theta_c


def test_thread_and_segment_independence():
    s = GaloisSetup.cyclotomic(7, [3])
    ref = arith.count_up_to(200_000, s)
    for threads, seg in ((8, 1 << 12), (3, 9999), (1, 1 << 20)):
        assert arith.count_up_to(200_000, s, threads=threads, segment=seg) == ref


def test_count_domain():
    with pytest.raises(DomainError):
        arith.count_up_to(1, GaloisSetup.trivial())


# ---------------------------------------------------------------- cache


def test_cache_roundtrip(tmp_path):
    c = CountCache(tmp_path)
    s = GaloisSetup.quadratic(5, [1])
    r = arith.count_up_to(10_000, s, cache=c)
    assert c.get(s, 10_000) == r
    again = CountCache(tmp_path)
    assert again.get(s, 10_000) == r
    assert arith.count_up_to(10_000, s, cache=again) == r


def test_cache_ignores_corruption(tmp_path):
    c = CountCache(tmp_path)
    s = GaloisSetup.trivial()
    c.put(arith.count_up_to(100, s))
    path = tmp_path / "counts.v1.tsv"
    with path.open("a", encoding="utf-8") as fh:
        fh.write("garbage line\nq\t1\t200\t-5\t0x0p+0\t0x0p+0\t0\n")
    d = CountCache(tmp_path)
    assert d.get(s, 100) is not None and d.get(s, 200) is None
    path.write_text("#some other cache\n" + path.read_text().split("\n", 1)[1])
    assert CountCache(tmp_path).get(s, 100) is None
    path.write_bytes(b"\xff\xfe")
    assert CountCache(tmp_path).get(s, 100) is None


# ---------------------------------------------------------------- comparisons


def test_compare_holds_with_margin():
    c = arith.compare_to_bound(10**5, GaloisSetup.quadratic(-1, [-1]))
    assert c.holds and c.margin > 10
    assert c.expected.overlaps(Interval(Fraction(1, 2)) * (c.expected * 2))
    for mode in ("grh-precise", "oesterle"):
        assert arith.compare_to_bound(10**4, GaloisSetup.trivial(), mode).holds
    with pytest.raises(ValueError):
        arith.compare_to_bound(100, GaloisSetup.trivial(), "lucky")


def test_compare_lhs_is_true_deviation():
    c = arith.compare_to_bound(10**6, GaloisSetup.trivial())
    assert c.pi_c == 78498
    assert abs(float(c.lhs.mid()) - 128.50399568) < 1e-6
