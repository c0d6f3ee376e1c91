import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from cong17.arith.cyclotomic import Cyclotomic17, GaussFieldElem, cyclo_sqrt17
from cong17.arith.fields import GF, PrimeFieldElem, QuadExtElem, roots_mod_p
from cong17.arith.ntheory import factor, is_prime, kronecker, legendre, primes_up_to, sqrt_mod
from cong17.arith.poly import RationalFunction, SparsePoly, parse_poly, ugcd
from cong17.arith.series import (
    BranchAmbiguous,
    LaurentSeries,
    NoSuchBranch,
    PrecisionError,
    hensel_solve_quadratic,
)

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))
small_q = st.integers(-20, 20).map(mpq)


# ---- integers ----


def test_factor_curve_integers():
    assert factor(47775) == {3: 1, 5: 2, 7: 2, 13: 1}
    assert factor(3077901970) == {2: 1, 5: 1, 11: 1, 13: 1, 59: 1, 191: 2}
    assert factor(1) == {}


def test_factor_zero_raises():
    with pytest.raises(ValueError):
        factor(0)


def test_factor_large_semiprime():
    # both factors above the trial-division limit
    p, q = 1000003, 1000033
    assert factor(p * q) == {p: 1, q: 1}
    assert factor(-(p**2) * 6) == {2: 1, 3: 1, p: 2}


@settings(max_examples=2000)
@given(st.integers(1, 10**12))
def test_factor_recomposes(n):
    f = factor(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(20000))
    assert all(is_prime(n) == (n in sieve) for n in range(20000))
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321):
        assert not is_prime(n)


def test_legendre_examples():
    squares = {x * x % 17 for x in range(1, 17)}
    assert legendre(0, 17) == 0
    assert legendre(16, 17) == 1
    assert 11 not in squares and legendre(11, 17) == -1
    assert all(legendre(a, 17) == (1 if a in squares else -1) for a in range(1, 17))


@pytest.mark.parametrize("p", [2, 9, 15, -3])
def test_legendre_rejects_non_odd_prime(p):
    with pytest.raises(ValueError):
        legendre(3, p)


@given(st.integers(-1000, 1000), st.sampled_from(primes_up_to(200)[1:]))
def test_legendre_is_euler_criterion(a, p):
    e = pow(a, (p - 1) // 2, p)
    assert legendre(a, p) == (e if e <= 1 else -1)


@given(st.integers(1, 500), st.sampled_from(primes_up_to(300)[1:]))
def test_sqrt_mod(a, p):
    r = sqrt_mod(a, p)
    if legendre(a, p) == -1:
        assert r is None
    else:
        assert r * r % p == a % p


def test_kronecker_minus_four():
    assert [kronecker(-4, n) for n in (3, 5, 7, 13)] == [-1, 1, -1, 1]


# ---- prime fields ----


@given(st.integers(), st.integers(), st.integers(), st.sampled_from([2, 3, 17, 101, 10007]))
def test_prime_field_ring_axioms(a, b, c, p):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + F(0) == x and x * F(1) == x
    if x:
        assert x * x.inverse() == F(1)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeFieldElem(1, 15)


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_quadratic_extension(a, b, c, d):
    p = 13
    n = QuadExtElem.field_data(p)
    assert legendre(n, p) == -1
    x, y = QuadExtElem(a, b, p, n), QuadExtElem(c, d, p, n)
    assert x * y == y * x
    if x:
        assert x ** (p * p - 1) == QuadExtElem(1, 0, p, n)
        assert x * x.inverse() == QuadExtElem(1, 0, p, n)
    # every element of F_p is a square in F_{p^2}
    assert QuadExtElem(a, 0, p, n).is_square()


def test_roots_mod_p():
    # (x - 3)(x - 5)(x^2 + 1) over F_13: x^2 + 1 has roots 5 and 8
    p = 13
    f = [3 * 5 % p, -(3 + 5) % p, 1]  # constant term first
    g = [1, 0, 1]
    prod = [0] * 5
    for i, u in enumerate(f):
        for j, v in enumerate(g):
            prod[i + j] = (prod[i + j] + u * v) % p
    assert sorted(roots_mod_p(prod, p)) == [3, 5, 8]


# ---- cyclotomic field ----


cyclo = st.lists(st.integers(-5, 5), min_size=16, max_size=16).map(lambda c: Cyclotomic17(list(map(mpq, c))))


@settings(max_examples=1000)
@given(cyclo, cyclo, cyclo)
def test_cyclotomic_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + Cyclotomic17() == x and x * Cyclotomic17.rational(1) == x


@settings(max_examples=200)
@given(cyclo)
def test_cyclotomic_inverse(x):
    if x:
        assert x * x.inverse() == Cyclotomic17.rational(1)


def test_zeta_relations():
    z = Cyclotomic17.zeta()
    assert z**17 == Cyclotomic17.rational(1)
    assert sum((z**k for k in range(17)), Cyclotomic17()) == Cyclotomic17()
    assert Cyclotomic17.zeta(-1) == z**16


def test_sqrt17_gauss_sum():
    s = cyclo_sqrt17()
    assert s * s == Cyclotomic17.rational(17)
    # built as sum over k of (k|17) zeta^k
    gauss = sum((Cyclotomic17.zeta(k) * legendre(k, 17) for k in range(1, 17)), Cyclotomic17())
    assert s == gauss
    # 3 is a non-residue mod 17, so sigma_3 flips the sign
    assert s.sigma(3) == -s
    assert s.sigma(2) == s


@pytest.mark.parametrize("k", range(17))
def test_xi_symmetry(k):
    assert Cyclotomic17.xi(k) == Cyclotomic17.xi(17 - k)
    assert Cyclotomic17.xi(k).is_real()


def test_periods_round_trip():
    x = Cyclotomic17.xi(3) * Cyclotomic17.xi(5) + cyclo_sqrt17()
    assert Cyclotomic17.from_periods(x.periods()) == x


# ---- Q(i, theta) ----


gauss = st.lists(st.integers(-4, 4), min_size=8, max_size=8).map(lambda c: GaussFieldElem(list(map(mpq, c))))


@settings(max_examples=1000)
@given(gauss, gauss, gauss)
def test_gauss_field_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


def test_gauss_field_relations():
    th, i = GaussFieldElem.theta(), GaussFieldElem.i()
    one = GaussFieldElem.rational(1)
    assert i * i == -one
    assert th**4 == one - i * 4
    # sigma: theta -> i theta has order 4 and fixes i
    assert th.sigma().sigma().sigma().sigma() == th
    assert i.sigma() == i
    assert (th + i).inverse() * (th + i) == one


# ---- sparse polynomials ----


def _rand_poly(rng, gens, terms=6, deg=4):
    return SparsePoly.from_dict(
        gens,
        {tuple(rng.randrange(deg) for _ in gens): mpq(rng.randrange(-9, 10), rng.randrange(1, 4)) for _ in range(terms)},
    )


@settings(max_examples=1000)
@given(st.integers(0, 2**32))
def test_sparse_poly_ring_axioms(seed):
    rng = random.Random(seed)
    gens = ("a", "b", "c")
    f, g, h = (_rand_poly(rng, gens) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + SparsePoly(gens) == f
    assert f * SparsePoly.constant(gens, 1) == f
    assert all(c for c in (f - f).terms.values()) and not (f - f)


def test_sparse_poly_basics():
    x, y = SparsePoly.generators(("x", "y"))
    f = (x + y) ** 3
    assert f.degree() == 3 and f.is_homogeneous()
    assert f.coeff((2, 1)) == 3
    assert f.derivative("x") == 3 * (x + y) ** 2
    assert f.evaluate([mpq(1, 2), mpq(1, 2)]) == 1
    assert parse_poly("(x + y)^3", ("x", "y")) == f
    assert f.compose([y, x]) == f


def test_univariate_gcd():
    t = SparsePoly.gen(("t",), 0)
    a = (t - 1) ** 2 * (t + 2)
    b = (t - 1) * (t + 3)
    assert ugcd(a, b) == t - 1


def test_rational_function_lowest_terms():
    t = SparsePoly.gen(("t",), 0)
    r = RationalFunction((t - 1) * (t + 1), (t - 1) * t)
    assert r == RationalFunction(t + 1, t)
    assert r.evaluate(mpq(2)) == mpq(3, 2)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(t, SparsePoly(("t",)))


# ---- Laurent series ----


def _series(rng, prec):
    v = rng.randrange(-3, 3)
    return LaurentSeries([mpq(rng.randrange(-5, 6)) for _ in range(prec - v)], v, prec)


@settings(max_examples=1000)
@given(st.integers(0, 2**32))
def test_laurent_ring_axioms(seed):
    rng = random.Random(seed)
    f, g, h = (_series(rng, 8) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + 0 == f and f * 1 == f


@given(st.integers(0, 2**32))
def test_laurent_eps_shifts_valuation(seed):
    rng = random.Random(seed)
    f = _series(rng, 8)
    if f:
        e = LaurentSeries.eps(20)
        assert (f * e).val == f.val + 1
        assert (f * e).leading()[0] == f.leading()[0]


def test_laurent_precision():
    f = LaurentSeries.from_terms({0: 1, 1: 1}, 5)
    with pytest.raises(PrecisionError):
        f.coeff(5)
    with pytest.raises(PrecisionError):
        LaurentSeries.big_o(3).leading()
    # a series that is O(eps^3) plus something known only to eps^2 loses precision
    assert (f + LaurentSeries.big_o(2)).prec == 2


def test_hensel_binomial_series():
    eps = LaurentSeries.eps(12)
    y = hensel_solve_quadratic(1, 0, -(1 + eps), LaurentSeries.constant(1, 1))
    assert [y.coeff(k) for k in range(4)] == [1, mpq(1, 2), mpq(-1, 8), mpq(1, 16)]
    assert (y * y - (1 + eps)).is_zero()
    neg = hensel_solve_quadratic(1, 0, -(1 + eps), LaurentSeries.constant(-1, 1))
    assert (neg + y).is_zero()


def _t():
    return RationalFunction.from_poly(SparsePoly.gen(("t",), 0))


def _fiber_quadratic(T, x):
    """(a, b, c) of y^2 + ((T+1)(T-2)x + T^3) y - (x^3 - x^2) as a quadratic in y."""
    return 1, (T + 1) * (T - 2) * x + T * T * T, -(x * x * x - x * x)


def test_hensel_exact_root():
    t = _t()
    prec = 6
    T = LaurentSeries.constant(t, prec)
    x = LaurentSeries.constant(t * t, prec)
    a, b, c = _fiber_quadratic(T, x)
    y = hensel_solve_quadratic(a, b, c, LaurentSeries.from_terms({0: t * t}, 1))
    assert y.coeff(0) == t * t and all(y.coeff(k) == 0 for k in range(1, prec))
    assert (y * y * a + b * y + c).is_zero()


def test_hensel_branch_with_eps():
    t = _t()
    prec = 10
    eps = LaurentSeries.eps(prec)
    T = 1 + eps
    x = eps * eps * (-t)
    a, b, c = _fiber_quadratic(T, x)
    y = hensel_solve_quadratic(a, b, c, LaurentSeries.from_terms({0: -1}, 1))
    assert y.coeff(0) == -1
    assert (y * y * a + b * y + c).is_zero()


def test_hensel_errors():
    eps = LaurentSeries.eps(8)
    # (y - 1)^2 = eps^2 has roots 1 +- eps: a prefix 1 + O(eps) cannot separate them
    with pytest.raises(BranchAmbiguous):
        hensel_solve_quadratic(1, -2, 1 - eps * eps, LaurentSeries.from_terms({0: 1}, 1))
    # roots +-1 + ...: nothing starts with 2
    with pytest.raises(NoSuchBranch):
        hensel_solve_quadratic(1, 0, -(1 + eps), LaurentSeries.from_terms({0: 2}, 1))
    # y^2 = eps has no Laurent series root
    with pytest.raises(NoSuchBranch):
        hensel_solve_quadratic(1, 0, -eps, LaurentSeries.from_terms({0: 0}, 1))
