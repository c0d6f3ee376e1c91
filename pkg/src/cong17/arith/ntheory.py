"""Elementary number theory over the integers.

Primality is decided by a deterministic Miller-Rabin test (witness set valid
below 3.3e24, far beyond anything used here), factorization by trial division
followed by Pollard rho with Brent's cycle detection.
"""

from __future__ import annotations

import math
import random
from collections import Counter

import numpy as np

# Deterministic for n < 3.3e24 (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10**6

_small_primes_cache: list[int] = []


def primes_up_to(n: int) -> list[int]:
    """All primes p <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).tolist()


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi (segmented sieve)."""
    lo = max(lo, 2)
    if hi <= lo:
        return []
    base = primes_up_to(math.isqrt(hi - 1) + 1)
    seg = np.ones(hi - lo, dtype=bool)
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        seg[start - lo :: p] = False
    return (np.flatnonzero(seg) + lo).tolist()


def _small_primes() -> list[int]:
    if not _small_primes_cache:
        _small_primes_cache.extend(primes_up_to(1000))
    return _small_primes_cache


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    for p in _small_primes()[:40]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime > n."""
    n = int(n) + 1
    while not is_prime(n):
        n += 1
    return n


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: Counter, rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] += 1
        return
    d = _pollard_brent(n, rng)
    _factor_into(d, out, rng)
    _factor_into(n // d, out, rng)


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    The sign is dropped; ``factor(1) == factor(-1) == {}``.
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: Counter = Counter()
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] += 1
            n //= p
    # wheel mod 30 trial division
    p, steps, i = 7, (4, 2, 4, 2, 4, 6, 2, 6), 0
    while p * p <= n and p < _TRIAL_LIMIT:
        while n % p == 0:
            out[p] += 1
            n //= p
        p += steps[i]
        i = (i + 1) & 7
    if n > 1:
        if p * p > n:
            out[n] += 1
        else:
            _factor_into(n, out, random.Random(n))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factor(n))


def valuation(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    if hasattr(n, "denominator") and n.denominator != 1:
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = int(n)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d|n) for n > 0; the quadratic character of Q(sqrt d)."""
    d, n = int(d), int(n)
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo the prime p, or None (Tonelli-Shanks)."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factor(n).values())


def crt(residues, moduli) -> tuple[int, int]:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = math.gcd(m, n)
        if (r - x) % g:
            raise ValueError("incompatible congruences")
        l = m // g * n
        x = (x + (r - x) // g * pow(m // g, -1, n // g) % (n // g) * m) % l
        m = l
    return x, m
