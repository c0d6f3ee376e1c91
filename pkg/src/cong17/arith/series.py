"""Truncated Laurent series in one variable (written eps) over an exact coefficient ring.

A series is stored as (val, coeffs, prec): the value is
sum(coeffs[i] * eps^(val + i)) + O(eps^prec) with coeffs[0] != 0, or, when every
known coefficient vanishes, the bare error term O(eps^prec).  Every operation
propagates absolute precision exactly, so a leading term reported by
``leading()`` is certified and never an artifact of truncation.
"""

from __future__ import annotations

from typing import Sequence

from gmpy2 import is_square, isqrt, mpq

DEFAULT_TERMS = 12


class PrecisionError(ArithmeticError):
    """Not enough terms are known to answer the question."""


class BranchAmbiguous(ArithmeticError):
    pass


class NoSuchBranch(ArithmeticError):
    pass


def _inv(c):
    if hasattr(c, "inverse"):
        return c.inverse()
    return 1 / mpq(c)


def _sqrt(c):
    if hasattr(c, "sqrt"):
        return c.sqrt()
    c = mpq(c)
    if c < 0 or not (is_square(c.numerator) and is_square(c.denominator)):
        return None
    return mpq(isqrt(c.numerator), isqrt(c.denominator))


class LaurentSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, coeffs: Sequence, val: int, prec: int):
        coeffs = list(coeffs[: max(0, prec - val)])
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            self.val, self.coeffs, self.prec = prec, [], prec
        else:
            self.val, self.coeffs, self.prec = val + i, coeffs[i:], prec

    # ---- construction ----
    @classmethod
    def from_terms(cls, terms: dict, prec: int) -> "LaurentSeries":
        """Series from {exponent: coefficient}, truncated at absolute precision prec."""
        terms = {e: c for e, c in terms.items() if c and e < prec}
        if not terms:
            return cls([], prec, prec)
        v = min(terms)
        return cls([terms.get(e, 0) for e in range(v, prec)], v, prec)

    @classmethod
    def constant(cls, c, prec: int) -> "LaurentSeries":
        return cls.from_terms({0: c}, prec)

    @classmethod
    def eps(cls, prec: int, power: int = 1) -> "LaurentSeries":
        return cls.from_terms({power: 1}, prec)

    @classmethod
    def big_o(cls, prec: int) -> "LaurentSeries":
        return cls([], prec, prec)

    # ---- queries ----
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (the series is O(eps^prec))."""
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def rel_prec(self) -> int:
        return self.prec - self.val

    def coeff(self, e: int):
        if e >= self.prec:
            raise PrecisionError(f"coefficient of eps^{e} unknown (precision {self.prec})")
        i = e - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading(self):
        """(coefficient, exponent) of the leading term."""
        if not self.coeffs:
            raise PrecisionError(f"series is O(eps^{self.prec}); leading term not determined")
        return self.coeffs[0], self.val

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.coeffs, self.val, prec)

    # ---- arithmetic ----
    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        # scalars are exact: give them the precision of self so nothing is lost
        return LaurentSeries.from_terms({0: other}, max(self.prec, 1))

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            if not other:
                return self
            if self.prec <= 0:
                return self
            other = LaurentSeries.from_terms({0: other}, self.prec)
        prec = min(self.prec, other.prec)
        v = min(self.val, other.val, prec)
        out = [0] * (prec - v)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                j = s.val + i - v
                if j >= len(out):
                    break
                out[j] = out[j] + c
        return LaurentSeries(out, v, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.val, self.prec)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            if not other:
                return LaurentSeries.big_o(self.prec)
            return LaurentSeries([c * other for c in self.coeffs], self.val, self.prec)
        v = self.val + other.val
        prec = min(self.val + other.prec, other.val + self.prec)
        n = prec - v
        if n <= 0 or not self.coeffs or not other.coeffs:
            return LaurentSeries.big_o(prec)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = None
            for i in range(max(0, k - len(b) + 1), min(k + 1, len(a))):
                t = a[i] * b[k - i]
                s = t if s is None else s + t
            out.append(0 if s is None else s)
        return LaurentSeries(out, v, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by eps^k."""
        return LaurentSeries(self.coeffs, self.val + k, self.prec + k)

    def inverse(self) -> "LaurentSeries":
        if not self.coeffs:
            raise PrecisionError("cannot invert a series with no known nonzero term")
        a = self.coeffs
        n = self.rel_prec
        inv0 = _inv(a[0])
        out = [inv0]
        for k in range(1, n):
            s = None
            for i in range(1, min(k, len(a) - 1) + 1):
                t = a[i] * out[k - i]
                s = t if s is None else s + t
            out.append(0 if s is None else -(s * inv0))
        return LaurentSeries(out, -self.val, -self.val + n)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return self * _inv(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return LaurentSeries.from_terms({0: 1}, self.rel_prec)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def sqrt(self) -> "LaurentSeries | None":
        """A square root (leading coefficient the ring's chosen root), or None if none exists."""
        if not self.coeffs:
            return LaurentSeries.big_o(self.prec // 2 if self.prec >= 0 else -((-self.prec) // 2))
        if self.val % 2:
            return None
        s0 = _sqrt(self.coeffs[0])
        if s0 is None:
            return None
        a = self.coeffs
        n = self.rel_prec
        inv2 = _inv(s0 * 2)
        out = [s0]
        for k in range(1, n):
            s = a[k] if k < len(a) else 0
            for i in range(1, k):
                s = s - out[i] * out[k - i]
            out.append(s * inv2)
        return LaurentSeries(out, self.val // 2, self.val // 2 + n)

    def __eq__(self, other):
        """Equality of the known parts, at the common precision."""
        other = self._lift(other)
        diff = self - other
        return diff.is_zero()

    __hash__ = None

    def map_coeffs(self, f) -> "LaurentSeries":
        return LaurentSeries([f(c) for c in self.coeffs], self.val, self.prec)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                e = self.val + i
                parts.append(f"({c})*eps^{e}" if e else f"({c})")
        parts.append(f"O(eps^{self.prec})")
        return " + ".join(parts)

    __repr__ = __str__


def hensel_solve_quadratic(a, b, c, branch: LaurentSeries) -> LaurentSeries:
    """The root y of a*y^2 + b*y + c = 0 whose expansion begins with ``branch``.

    ``branch`` is a prefix such as -1 + O(eps): the root must agree with it to
    the prefix's precision.  Both roots come from the discriminant's square
    root; exactly one of them has to match.
    """
    known = [x.prec for x in (a, b, c) if isinstance(x, LaurentSeries)]
    prec = max(known) if known else branch.prec + DEFAULT_TERMS
    a, b, c = (
        x if isinstance(x, LaurentSeries) else LaurentSeries.from_terms({0: x}, prec)
        for x in (a, b, c)
    )
    disc = b * b - a * c * 4
    two_a = a * 2
    if disc.is_zero():
        root = -b / two_a
        if (root - branch).is_zero():
            raise BranchAmbiguous(
                "the two roots agree to the working precision; increase precision"
            )
        raise NoSuchBranch("no root with the requested leading behaviour")
    s = disc.sqrt()
    if s is None:
        raise NoSuchBranch("discriminant is not a square: roots are not series over the base field")
    roots = [(-b + s) / two_a, (-b - s) / two_a]
    matches = []
    for r in roots:
        d = r - branch
        if d.prec < branch.prec:
            raise PrecisionError("working precision too small to compare with the branch prefix")
        if d.is_zero() or d.val >= branch.prec:
            matches.append(r)
    if len(matches) == 2:
        raise BranchAmbiguous("both roots begin with the given prefix")
    if not matches:
        raise NoSuchBranch("no root begins with the given prefix")
    return matches[0]
