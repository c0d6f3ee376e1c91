"""The cyclotomic field Q(zeta_17) and the degree-8 field Q(i, theta), theta^4 = 1 - 4i.

Elements of Q(zeta) are stored in the power basis 1, zeta, ..., zeta^15 and
reduced modulo Phi_17 after every operation.  Elements of Q(i, theta) are
stored in the basis theta^a i^b (a < 4, b < 2), index 2a + b.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, mpz

from .ntheory import legendre

_SCALARS = (int, type(mpz(0)), type(mpq(0)), Fraction)

P = 17
DEG = P - 1


def _reduce17(c: list) -> tuple:
    # c has 17 entries indexed by powers of zeta mod 17; use zeta^16 = -(1 + ... + zeta^15)
    top = c[16]
    if top:
        return tuple(c[k] - top for k in range(16))
    return tuple(c[:16])


def _canon(x):
    if isinstance(x, int):
        return x
    x = mpq(x)
    return int(x) if x.denominator == 1 else x


class Cyclotomic17:
    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = (0,) * DEG
            return
        coeffs = [_canon(x) for x in coeffs]
        if len(coeffs) < DEG:
            coeffs = coeffs + [0] * (DEG - len(coeffs))
        if len(coeffs) > DEG:
            folded = [0] * P
            for k, x in enumerate(coeffs):
                folded[k % P] += x
            self.c = _reduce17(folded)
        else:
            self.c = tuple(coeffs)

    # ---- constructors ----
    @classmethod
    def zeta(cls, k: int = 1) -> "Cyclotomic17":
        folded = [0] * P
        folded[k % P] = 1
        return cls._raw(_reduce17(folded))

    @classmethod
    def xi(cls, k: int) -> "Cyclotomic17":
        """zeta^k + zeta^-k."""
        return cls.zeta(k) + cls.zeta(-k)

    @classmethod
    def rational(cls, q) -> "Cyclotomic17":
        return cls._raw((_canon(q),) + (0,) * (DEG - 1))

    @classmethod
    def _raw(cls, c: tuple) -> "Cyclotomic17":
        obj = cls.__new__(cls)
        obj.c = c
        return obj

    # ---- arithmetic ----
    @staticmethod
    def _lift(other) -> "Cyclotomic17":
        if isinstance(other, Cyclotomic17):
            return other
        return Cyclotomic17.rational(other)

    def __add__(self, other):
        if not isinstance(other, Cyclotomic17):
            if not other:
                return self
            c = list(self.c)
            c[0] = _canon(c[0] + other)
            return Cyclotomic17._raw(tuple(c))
        return Cyclotomic17._raw(tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic17._raw(tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic17):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = _canon(other)
            return Cyclotomic17._raw(tuple(a * other for a in self.c))
        a, b = self.c, other.c
        out = [0] * (2 * DEG - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        folded = out[:P]
        for k in range(P, len(out)):
            folded[k - P] += out[k]
        return Cyclotomic17._raw(_reduce17(folded))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = Cyclotomic17.rational(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def sigma(self, k: int) -> "Cyclotomic17":
        """The automorphism zeta -> zeta^k."""
        if k % P == 0:
            raise ValueError("k must be prime to 17")
        folded = [0] * P
        for j, x in enumerate(self.c):
            if x:
                folded[(j * k) % P] += x
        return Cyclotomic17._raw(_reduce17(folded))

    def norm(self):
        """Absolute norm to Q."""
        prod = self
        for k in range(2, P):
            prod = prod * self.sigma(k)
        return prod.rational_part()

    def inverse(self) -> "Cyclotomic17":
        if not self:
            raise ZeroDivisionError("inverse of 0 in Q(zeta_17)")
        others = self.sigma(2)
        for k in range(3, P):
            others = others * self.sigma(k)
        n = (self * others).rational_part()
        return others * (mpq(1) / n)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic17):
            return self * other.inverse()
        return self * (mpq(1) / mpq(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    # ---- queries ----
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_part(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0]

    def is_real(self) -> bool:
        return self == self.sigma(-1)

    def periods(self) -> tuple:
        """Coordinates in the basis xi_1, ..., xi_8 (requires a real element)."""
        # normal basis zeta^1..zeta^16: subtract the constant term from every power
        a0 = self.c[0]
        b = [self.c[k] - a0 for k in range(1, DEG)] + [-a0]
        if any(b[k - 1] != b[P - k - 1] for k in range(1, 9)):
            raise ValueError("element is not in the real subfield")
        return tuple(b[k - 1] for k in range(1, 9))

    @classmethod
    def from_periods(cls, coords) -> "Cyclotomic17":
        out = cls()
        for k, x in enumerate(coords, start=1):
            if x:
                out = out + cls.xi(k) * x
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic17):
            return self.c == other.c
        try:
            return self.is_rational() and self.c[0] == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __str__(self):
        terms = []
        for k, x in enumerate(self.c):
            if x:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if not mono:
                    terms.append(str(x))
                elif x == 1:
                    terms.append(mono)
                elif x == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{x}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    __repr__ = __str__


def cyclo_sqrt17() -> Cyclotomic17:
    """The quadratic Gauss sum sum_k (k|17) zeta^k, a square root of 17."""
    folded = [0] * P
    for k in range(1, P):
        folded[k] = legendre(k, P)
    return Cyclotomic17._raw(_reduce17(folded))


# ---------------------------------------------------------------------------
# Q(i, theta) with theta^4 = 1 - 4i
# ---------------------------------------------------------------------------

# theta^4 = 1 - 4i, expressed as a Q(i)-coefficient pair (re, im)
_T4 = (1, -4)


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


class GaussFieldElem:
    """sum over a < 4, b < 2 of c[2a+b] theta^a i^b."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = ()
        coeffs = [_canon(x) for x in coeffs] + [0] * (8 - len(coeffs))
        if len(coeffs) != 8:
            raise ValueError("expected 8 coefficients")
        self.c = tuple(coeffs)

    @classmethod
    def theta(cls) -> "GaussFieldElem":
        return cls([0, 0, 1])

    @classmethod
    def i(cls) -> "GaussFieldElem":
        return cls([0, 1])

    @classmethod
    def rational(cls, q) -> "GaussFieldElem":
        return cls([q])

    def _pairs(self):
        return [(self.c[2 * a], self.c[2 * a + 1]) for a in range(4)]

    @staticmethod
    def _from_pairs(pairs) -> "GaussFieldElem":
        # pairs: list of Q(i) coefficients of theta^0..theta^6
        pairs = list(pairs)
        for a in range(len(pairs) - 1, 3, -1):
            hi = pairs[a]
            if hi[0] or hi[1]:
                red = _cmul(hi, _T4)
                lo = pairs[a - 4]
                pairs[a - 4] = (lo[0] + red[0], lo[1] + red[1])
        out = []
        for a in range(4):
            out.extend(pairs[a])
        return GaussFieldElem(out)

    @staticmethod
    def _lift(other) -> "GaussFieldElem":
        if isinstance(other, GaussFieldElem):
            return other
        return GaussFieldElem.rational(other)

    def __add__(self, other):
        o = self._lift(other)
        return GaussFieldElem([x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return GaussFieldElem([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussFieldElem):
            other = _canon(other)
            return GaussFieldElem([x * other for x in self.c])
        a, b = self._pairs(), other._pairs()
        out = [(0, 0)] * 7
        for i, x in enumerate(a):
            if x[0] or x[1]:
                for j, y in enumerate(b):
                    if y[0] or y[1]:
                        p = _cmul(x, y)
                        o = out[i + j]
                        out[i + j] = (o[0] + p[0], o[1] + p[1])
        return self._from_pairs(out)

    __rmul__ = __mul__

    def sigma(self) -> "GaussFieldElem":
        """The automorphism theta -> i*theta fixing i."""
        pairs = self._pairs()
        ipow = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        return GaussFieldElem([v for a in range(4) for v in _cmul(pairs[a], ipow[a])])

    def inverse(self) -> "GaussFieldElem":
        if not self:
            raise ZeroDivisionError("inverse of 0 in Q(i, theta)")
        s1 = self.sigma()
        s2 = s1.sigma()
        s3 = s2.sigma()
        others = s1 * s2 * s3
        n = self * others  # relative norm, lies in Q(i)
        re, im = n.c[0], n.c[1]
        if any(n.c[2:]):
            raise ArithmeticError("relative norm not in Q(i)")
        d = mpq(re * re + im * im)
        inv = GaussFieldElem([re / d, -im / d])
        return others * inv

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = GaussFieldElem.rational(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other):
        if isinstance(other, GaussFieldElem):
            return self.c == other.c
        try:
            return self.is_rational() and self.c[0] == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.c[0]) if self.is_rational() else hash(self.c)

    def __str__(self):
        names = ["", "i", "t", "t*i", "t^2", "t^2*i", "t^3", "t^3*i"]
        terms = [
            (str(x) if not n else (n if x == 1 else f"{x}*{n}"))
            for x, n in zip(self.c, names)
            if x
        ]
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__
