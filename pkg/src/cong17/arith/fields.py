"""Prime fields F_p, their quadratic extensions, and small polynomial tools over F_p."""

from __future__ import annotations

import random
from functools import lru_cache

from .ntheory import is_prime, sqrt_mod


@lru_cache(maxsize=256)
def _check_modulus(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


class PrimeFieldElem:
    """An element of F_p.  Interoperates with plain ints."""

    __slots__ = ("value", "p")

    def __init__(self, value, p: int):
        self.p = _check_modulus(p)
        if hasattr(value, "denominator") and value.denominator != 1:
            value = int(value.numerator) * pow(int(value.denominator), -1, p)
        self.value = int(value) % p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("mismatched moduli")
            return other.value
        if hasattr(other, "denominator") and other.denominator != 1:
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return int(other)

    def __add__(self, other):
        return PrimeFieldElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PrimeFieldElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return PrimeFieldElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroDivisionError("division by 0 in F_p")
        return PrimeFieldElem(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return PrimeFieldElem(self._coerce(other), self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElem(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.value == other.value
        try:
            return (self.value - self._coerce(other)) % self.p == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def is_square(self) -> bool:
        return self.value == 0 or self.p == 2 or pow(self.value, (self.p - 1) // 2, self.p) == 1

    def sqrt(self) -> "PrimeFieldElem | None":
        r = sqrt_mod(self.value, self.p)
        return None if r is None else PrimeFieldElem(r, self.p)

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class GF:
    """The prime field F_p; calling it coerces integers and rationals."""

    def __init__(self, p: int):
        self.p = _check_modulus(p)

    def __call__(self, value) -> PrimeFieldElem:
        return PrimeFieldElem(value, self.p)

    def elements(self):
        return (PrimeFieldElem(i, self.p) for i in range(self.p))

    def nonresidue(self) -> int:
        if self.p == 2:
            raise ValueError("F_2 has no quadratic non-residue")
        d = 2
        while pow(d, (self.p - 1) // 2, self.p) != self.p - 1:
            d += 1
        return d

    def __repr__(self):
        return f"GF({self.p})"


class QuadExtElem:
    """a + b*s in F_{p^2} = F_p[s]/(s^2 - d), d a fixed quadratic non-residue."""

    __slots__ = ("a", "b", "p", "d")

    def __init__(self, a: int, b: int, p: int, d: int):
        self.a, self.b, self.p, self.d = a % p, b % p, p, d

    @classmethod
    def field_data(cls, p: int) -> int:
        if p == 2:
            raise ValueError("only odd p supported")
        return GF(p).nonresidue()

    def _lift(self, other):
        if isinstance(other, QuadExtElem):
            return other
        return QuadExtElem(int(other), 0, self.p, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.p, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return QuadExtElem(self.a - o.a, self.b - o.b, self.p, self.d)

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.p, self.d)

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExtElem(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.p, self.d
        )

    __rmul__ = __mul__

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) % self.p

    def inverse(self) -> "QuadExtElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_p^2")
        ni = pow(n, -1, self.p)
        return QuadExtElem(self.a * ni, -self.b * ni, self.p, self.d)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadExtElem(1, 0, self.p, self.d), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_square(self) -> bool:
        # x is a square in F_{p^2} iff its norm is a square in F_p
        n = self.norm()
        return n == 0 or pow(n, (self.p - 1) // 2, self.p) == 1

    def __eq__(self, other):
        o = self._lift(other)
        return self.a == o.a and self.b == o.b and self.p == o.p

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"{self.a} + {self.b}*s (mod {self.p}, s^2={self.d})"


# ---- dense univariate polynomials over F_p as coefficient lists, low degree first ----


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def pmod(f: list[int], g: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    _trim(f)
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def pmul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, pmod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = pmod(base, mod, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), mod, p)
        base = pmod(pmul(base, base, p), mod, p)
        e >>= 1
    return result


def roots_mod_p(f: list[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_p of f (coefficients low degree first)."""
    f = _trim([c % p for c in f])
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    if p < 50:
        return [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0]
    rng = rng or random.Random(p)
    # restrict to the product of the distinct linear factors
    xp = ppowmod([0, 1], p, f, p)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = pgcd(f, _trim(xp), p)
    roots: list[int] = []
    _split_linear(g, p, rng, roots)
    return sorted(roots)


def _split_linear(g: list[int], p: int, rng: random.Random, out: list[int]) -> None:
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append((-g[0] * pow(g[1], -1, p)) % p)
        return
    while True:
        a = rng.randrange(p)
        h = ppowmod([a, 1], (p - 1) // 2, g, p)
        h = h + [0] * max(0, 1 - len(h))
        h[0] = (h[0] - 1) % p
        d = pgcd(g, _trim(h), p)
        if 0 < len(d) - 1 < deg:
            _split_linear(d, p, rng, out)
            q = pdivexact(g, d, p)
            _split_linear(q, p, rng, out)
            return


def pdivexact(f: list[int], g: list[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    inv = pow(g[-1], -1, p)
    q = [0] * (len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        q[shift] = c
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    if f:
        raise ValueError("division not exact")
    return q
