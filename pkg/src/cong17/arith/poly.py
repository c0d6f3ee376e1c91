"""Sparse multivariate polynomials over an arbitrary exact coefficient ring.

A polynomial is a dict from packed exponent vectors to nonzero coefficients.
Exponents are packed into a single int, 12 bits per variable, so monomial
multiplication is integer addition and the total degree of a monomial is the
packed key modulo 4095.  Coefficients may be ints, gmpy2 rationals,
Cyclotomic17, GaussFieldElem, PrimeFieldElem or RationalFunction: anything
with +, -, * and a truth value that is False exactly for zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq, mpz

BITS = 12
FIELD = (1 << BITS) - 1


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            if e < 0 or e >= FIELD:
                raise ValueError(f"exponent {e} out of range")
            key |= e << (BITS * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (BITS * i)) & FIELD for i in range(n))


def Q(x, y=None):
    """Exact rational from an int, a string like '-2/75', or a pair."""
    if y is not None:
        return mpq(x, y)
    return mpq(x) if not isinstance(x, str) else mpq(x.replace(" ", ""))


class SparsePoly:
    __slots__ = ("gens", "terms", "_deg")

    def __init__(self, gens: Sequence[str], terms: dict | None = None, *, clean: bool = True):
        self.gens = tuple(gens)
        if terms is None:
            terms = {}
        elif clean:
            terms = {k: c for k, c in terms.items() if c}
        self.terms = terms
        self._deg = None

    # ---- construction ----
    @classmethod
    def from_dict(cls, gens: Sequence[str], d: dict) -> "SparsePoly":
        out: dict = {}
        for exps, c in d.items():
            k = pack(exps)
            out[k] = out.get(k, 0) + c
        return cls(gens, out)

    @classmethod
    def gen(cls, gens: Sequence[str], i: int | str) -> "SparsePoly":
        gens = tuple(gens)
        if isinstance(i, str):
            i = gens.index(i)
        return cls(gens, {1 << (BITS * i): 1}, clean=False)

    @classmethod
    def generators(cls, gens: Sequence[str]) -> list["SparsePoly"]:
        return [cls.gen(gens, i) for i in range(len(gens))]

    @classmethod
    def constant(cls, gens: Sequence[str], c) -> "SparsePoly":
        return cls(gens, {0: c})

    @classmethod
    def monomial(cls, gens: Sequence[str], exps: Sequence[int], c=1) -> "SparsePoly":
        return cls(gens, {pack(exps): c})

    # ---- basic queries ----
    @property
    def nvars(self) -> int:
        return len(self.gens)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_coeff(self):
        return self.terms.get(0, 0)

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if self._deg is None:
            self._deg = max((k % FIELD for k in self.terms), default=-1)
        return self._deg

    def degree_in(self, i: int | str) -> int:
        if isinstance(i, str):
            i = self.gens.index(i)
        sh = BITS * i
        return max(((k >> sh) & FIELD for k in self.terms), default=-1)

    def block_degrees(self, blocks: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
        """The set of multidegrees w.r.t. the given variable blocks."""
        out = set()
        for k in self.terms:
            e = unpack(k, self.nvars)
            out.add(tuple(sum(e[i] for i in b) for b in blocks))
        return out

    def items(self) -> Iterable[tuple[tuple[int, ...], object]]:
        n = self.nvars
        for k, c in self.terms.items():
            yield unpack(k, n), c

    def to_dict(self) -> dict:
        return dict(self.items())

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(pack(exps), 0)

    def is_homogeneous(self) -> bool:
        return len({k % FIELD for k in self.terms}) <= 1

    # ---- arithmetic ----
    def _wrap(self, c) -> "SparsePoly":
        return SparsePoly(self.gens, {0: c})

    def _check(self, other: "SparsePoly"):
        if other.gens != self.gens:
            raise ValueError(f"ring mismatch {self.gens} vs {other.gens}")

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            if not other:
                return self
            other = self._wrap(other)
        else:
            self._check(other)
        res = dict(self.terms)
        get = res.get
        for k, c in other.terms.items():
            res[k] = get(k, 0) + c
        return SparsePoly(self.gens, res)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.gens, {k: -c for k, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            if not other:
                return self
            other = self._wrap(other)
        else:
            self._check(other)
        res = dict(self.terms)
        get = res.get
        for k, c in other.terms.items():
            res[k] = get(k, 0) - c
        return SparsePoly(self.gens, res)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SparsePoly":
        if not c:
            return SparsePoly(self.gens)
        return SparsePoly(self.gens, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return SparsePoly(self.gens)
        if self.degree() + other.degree() >= FIELD:
            raise OverflowError("degree too large for packed exponents")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        bi = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bi:
                k = ka + kb
                res[k] = get(k, 0) + ca * cb
        return SparsePoly(self.gens, res)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly(self.gens, {0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, SparsePoly):
            if not c.is_constant():
                raise TypeError("use RationalFunction for polynomial quotients")
            c = c.constant_coeff()
        inv = c.inverse() if hasattr(c, "inverse") else mpq(1) / mpq(c)
        return self.scale(inv)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            if other.gens != self.gens or len(other.terms) != len(self.terms):
                return False
            ot = other.terms
            for k, c in self.terms.items():
                if k not in ot or not (ot[k] == c):
                    return False
            return True
        if not other:
            return not self.terms
        return self.is_constant() and self.constant_coeff() == other

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    # ---- calculus / structure ----
    def derivative(self, i: int | str) -> "SparsePoly":
        if isinstance(i, str):
            i = self.gens.index(i)
        sh = BITS * i
        one = 1 << sh
        res = {}
        for k, c in self.terms.items():
            e = (k >> sh) & FIELD
            if e:
                res[k - one] = c * e
        return SparsePoly(self.gens, res, clean=False)

    def gradient(self) -> list["SparsePoly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def homogeneous_part(self, d: int) -> "SparsePoly":
        return SparsePoly(self.gens, {k: c for k, c in self.terms.items() if k % FIELD == d}, clean=False)

    def map_coeffs(self, f: Callable) -> "SparsePoly":
        return SparsePoly(self.gens, {k: f(c) for k, c in self.terms.items()})

    def embed(self, gens: Sequence[str], index_map: Sequence[int]) -> "SparsePoly":
        """Rename variable i to variable index_map[i] of a new ring."""
        n = self.nvars
        res = {}
        for k, c in self.terms.items():
            e = unpack(k, n)
            nk = 0
            for i, ei in enumerate(e):
                if ei:
                    nk += ei << (BITS * index_map[i])
            res[nk] = res.get(nk, 0) + c
        return SparsePoly(gens, res)

    def permute(self, perm: Sequence[int], signs: Sequence[int] | None = None) -> "SparsePoly":
        """Substitute x_i -> signs[i] * x_{perm[i]} (a signed monomial substitution)."""
        n = self.nvars
        res = {}
        for k, c in self.terms.items():
            e = unpack(k, n)
            nk = 0
            sgn = 1
            for i, ei in enumerate(e):
                if ei:
                    nk += ei << (BITS * perm[i])
                    if signs is not None and signs[i] < 0 and ei & 1:
                        sgn = -sgn
            res[nk] = res.get(nk, 0) + (c if sgn > 0 else -c)
        return SparsePoly(self.gens, res)

    def evaluate(self, values: Sequence, one=1):
        """Value at a point; values may lie in any ring acting on the coefficients."""
        n = self.nvars
        pows: list[dict[int, object]] = [{0: one, 1: v} for v in values]

        def pw(i, e):
            cache = pows[i]
            r = cache.get(e)
            if r is None:
                r = pw(i, e // 2)
                r = r * r
                if e & 1:
                    r = r * values[i]
                cache[e] = r
            return r

        total = None
        for k, c in self.terms.items():
            term = None
            for i in range(n):
                e = (k >> (BITS * i)) & FIELD
                if e:
                    f = pw(i, e)
                    term = f if term is None else term * f
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return 0 * one
        return total

    def compose(self, subs: Sequence) -> "SparsePoly | object":
        """Substitute subs[i] (polynomials in a common ring, or scalars) for variable i."""
        if len(subs) != self.nvars:
            raise ValueError("wrong number of substitutions")
        target = next((s for s in subs if isinstance(s, SparsePoly)), None)
        if target is None:
            return self.evaluate(subs)
        one = SparsePoly(target.gens, {0: 1})
        subs = [s if isinstance(s, SparsePoly) else one.scale(s) for s in subs]
        return self.evaluate(subs, one)

    def subs(self, mapping: dict) -> "SparsePoly":
        """Partial substitution {var name or index: polynomial in the same ring}."""
        gens = SparsePoly.generators(self.gens)
        for key, val in mapping.items():
            i = self.gens.index(key) if isinstance(key, str) else key
            gens[i] = val if isinstance(val, SparsePoly) else SparsePoly.constant(self.gens, val)
        return self.compose(gens)

    def content_denominator(self) -> int:
        """LCM of the denominators of rational coefficients."""
        from math import lcm

        d = 1
        for c in self.terms.values():
            den = getattr(c, "denominator", 1)
            d = lcm(d, int(den))
        return d

    # ---- printing ----
    def _sorted_terms(self):
        n = self.nvars
        return sorted(self.terms.items(), key=lambda kc: (-(kc[0] % FIELD), [-e for e in unpack(kc[0], n)]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self._sorted_terms():
            e = unpack(k, self.nvars)
            mono = "*".join(
                (g if ei == 1 else f"{g}^{ei}") for g, ei in zip(self.gens, e) if ei
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if _needs_paren(cs) else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append((f"({cs})" if _needs_paren(cs) else cs) + "*" + mono)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self})"


def _needs_paren(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-") or " " in s


# ---------------------------------------------------------------------------
# univariate polynomials over Q (used by RationalFunction and the series code)
# ---------------------------------------------------------------------------


def _udense(p: SparsePoly) -> list:
    d = p.degree()
    out = [mpq(0)] * (d + 1)
    for k, c in p.terms.items():
        out[k] = mpq(c)
    return out


def _usparse(gens, coeffs: Sequence) -> SparsePoly:
    return SparsePoly(gens, {i: c for i, c in enumerate(coeffs) if c}, clean=False)


def udivmod(a: SparsePoly, b: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    A, B = _udense(a) if a else [], _udense(b)
    db = len(B) - 1
    inv = 1 / B[-1]
    q = [mpq(0)] * max(0, len(A) - db)
    while len(A) - 1 >= db and A:
        c = A[-1] * inv
        s = len(A) - 1 - db
        q[s] = c
        if c:
            for i in range(db + 1):
                A[s + i] -= c * B[i]
        A.pop()
        while A and not A[-1]:
            A.pop()
    return _usparse(a.gens, q), _usparse(a.gens, A)


def umonic(a: SparsePoly) -> SparsePoly:
    lc = a.terms[max(a.terms)]
    return a if lc == 1 else a.scale(1 / mpq(lc))


def ugcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Monic gcd over Q (gcd(0, 0) = 0)."""
    # clear denominators and work with primitive integer polynomials (no fraction blow-up)
    if not a:
        return umonic(b) if b else b
    if not b:
        return umonic(a)
    A = _uprimitive(_udense(a))
    B = _uprimitive(_udense(b))
    if len(A) < len(B):
        A, B = B, A
    while B:
        # pseudo-remainder
        R = list(A)
        lb = B[-1]
        while len(R) >= len(B) and R:
            c = R[-1]
            s = len(R) - len(B)
            R = [r * lb for r in R]
            for i, bi in enumerate(B):
                R[s + i] -= c * bi
            R.pop()
            while R and R[-1] == 0:
                R.pop()
        A, B = B, _uprimitive(R) if R else []
    return umonic(_usparse(a.gens, [mpq(c) for c in A]))


def _uprimitive(coeffs: list) -> list:
    from math import gcd, lcm

    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = lcm(den, int(mpq(c).denominator))
    ints = [int(mpq(c) * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [mpz(c // g) for c in ints]


def usqrt(a: SparsePoly) -> SparsePoly | None:
    """Exact square root of a univariate polynomial over Q, or None."""
    if not a:
        return a
    A = _udense(a)
    low = next(i for i, c in enumerate(A) if c)
    if low % 2:
        return None
    A = A[low:]
    n = len(A) - 1
    if n % 2:
        return None
    from gmpy2 import is_square, isqrt

    lead = A[-1]
    num, den = lead.numerator, lead.denominator
    if lead < 0 or not (is_square(num) and is_square(den)):
        return None
    m = n // 2
    r = [mpq(0)] * (m + 1)
    r[m] = mpq(isqrt(num), isqrt(den))
    # solve top-down: coefficient of t^(m+j) in r^2
    for j in range(m - 1, -1, -1):
        s = A[m + j]
        for i in range(j + 1, m):
            k = m + j - i
            if j < k <= m:
                s -= r[i] * r[k]
        r[j] = s / (2 * r[m])
    root = _usparse(a.gens, [mpq(0)] * (low // 2) + r)
    return root if root * root == a else None


class RationalFunction:
    """A quotient of univariate polynomials over Q, kept in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly | None = None, *, reduced: bool = False):
        if den is None:
            den = SparsePoly(num.gens, {0: 1}, clean=False)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "RationalFunction":
        return cls(p, SparsePoly(p.gens, {0: 1}, clean=False), reduced=True)

    @classmethod
    def constant(cls, gens, c) -> "RationalFunction":
        return cls(SparsePoly(gens, {0: c}), SparsePoly(gens, {0: 1}, clean=False), reduced=True)

    @property
    def gens(self):
        return self.num.gens

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self):
        return bool(self.num)

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, SparsePoly):
            return RationalFunction.from_poly(other)
        return RationalFunction.constant(self.gens, other)

    def __add__(self, other):
        if _foreign(other):
            return NotImplemented
        o = self._lift(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den.is_constant():
                return RationalFunction(self.num + o.num, self.den, reduced=True)
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        if _foreign(other):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if _foreign(other):
            return NotImplemented
        if not isinstance(other, (RationalFunction, SparsePoly)):
            if not other:
                return RationalFunction(SparsePoly(self.gens), self.den.scale(0) + 1, reduced=True)
            return RationalFunction(self.num.scale(other), self.den, reduced=True)
        o = self._lift(other)
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num * o.num, self.den, reduced=True)
        # cross-cancel before multiplying
        g1 = _gcd_fast(self.num, o.den)
        g2 = _gcd_fast(o.num, self.den)
        n1 = self.num if g1.is_constant() else udivmod(self.num, g1)[0]
        d2 = o.den if g1.is_constant() else udivmod(o.den, g1)[0]
        n2 = o.num if g2.is_constant() else udivmod(o.num, g2)[0]
        d1 = self.den if g2.is_constant() else udivmod(self.den, g2)[0]
        num, den = n1 * n2, d1 * d2
        lc = den.terms[max(den.terms)]
        if lc != 1:
            num, den = num.scale(1 / mpq(lc)), den.scale(1 / mpq(lc))
        return RationalFunction(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if _foreign(other):
            return NotImplemented
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num**e, self.den**e, reduced=True)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    __hash__ = None

    def evaluate(self, t):
        d = self.den.evaluate([t])
        if not d:
            raise ZeroDivisionError("pole")
        return self.num.evaluate([t]) / d

    def sqrt(self) -> "RationalFunction | None":
        a, b = usqrt(self.num), usqrt(self.den)
        if a is None or b is None:
            return None
        return RationalFunction(a, b, reduced=True)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _foreign(other) -> bool:
    """Operands such as power series that must handle mixed arithmetic themselves."""
    return not isinstance(other, (RationalFunction, SparsePoly, int, mpz, mpq, Fraction))


def _is_monomial(p: SparsePoly) -> bool:
    return len(p.terms) == 1


def _gcd_fast(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    if b.is_constant() or a.is_constant():
        return SparsePoly(a.gens, {0: 1}, clean=False)
    if _is_monomial(a) or _is_monomial(b):
        e = min(min(a.terms), min(b.terms))
        return SparsePoly(a.gens, {e: 1}, clean=False)
    return ugcd(a, b)


def _reduce(num: SparsePoly, den: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    if not num:
        return num, SparsePoly(den.gens, {0: 1}, clean=False)
    if not den.is_constant():
        g = _gcd_fast(num, den)
        if not g.is_constant():
            if _is_monomial(g):
                e = min(g.terms)
                num = SparsePoly(num.gens, {k - e: c for k, c in num.terms.items()}, clean=False)
                den = SparsePoly(den.gens, {k - e: c for k, c in den.terms.items()}, clean=False)
            else:
                num, den = udivmod(num, g)[0], udivmod(den, g)[0]
    lc = den.terms[max(den.terms)]
    if lc != 1:
        inv = 1 / mpq(lc)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z](?:_\{?\d+\}?)?)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    for num, name, other in _TOKEN.findall(text):
        if num:
            out.append(num)
        elif name:
            out.append(name.replace("{", "").replace("}", ""))
        elif other.strip():
            out.append(other)
    return out


def parse_expr(text: str, env: dict, number: Callable = mpz):
    """Evaluate an arithmetic expression with implicit multiplication.

    Accepts the notation used in typeset formulas: juxtaposition for products,
    ``^`` with optional braces (``x^{10}``, ``t^{-1}``), and ``/`` between
    factors.  Variables are single letters looked up in ``env``.  LaTeX spacing
    and alignment commands are stripped.
    """
    for junk in ("\\left", "\\right", "\\qquad", "\\quad", "\\\\", "&", "\\,", "\\!"):
        text = text.replace(junk, " ")
    text = text.replace("\\cdot", "*").replace("\\varepsilon", "e").replace("ε", "e")
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if expected is not None and tok != expected:
            raise SyntaxError(f"expected {expected!r}, got {tok!r} at token {pos}")
        pos += 1
        return tok

    def expr():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        val = term()
        if sign < 0:
            val = -val
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def starts_atom(tok):
        return tok is not None and (tok.isdigit() or tok[0].isalpha() or tok in ("(", "{"))

    def term():
        val = power()
        while True:
            tok = peek()
            if tok == "*":
                take()
                val = val * power()
            elif tok == "/":
                take()
                den = power()
                if isinstance(den, (int, mpz, mpq, Fraction)):
                    val = val * (mpq(1) / mpq(den))
                else:
                    val = val / den
            elif starts_atom(tok):
                val = val * power()
            else:
                return val

    def exponent():
        tok = peek()
        if tok == "{":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            e = int(take())
            take("}")
            return sign * e
        return int(take())

    def power():
        base = atom()
        if peek() == "^":
            take()
            e = exponent()
            if e < 0:
                inv = base.inverse() if hasattr(base, "inverse") else mpq(1) / base
                return inv ** (-e)
            return base**e
        return base

    def atom():
        tok = take()
        if tok is None:
            raise SyntaxError("unexpected end of expression")
        if tok.isdigit():
            return number(int(tok))
        if tok[0].isalpha():
            if tok not in env:
                raise SyntaxError(f"unknown variable {tok!r}")
            return env[tok]
        if tok in ("(", "{"):
            val = expr()
            take(")" if tok == "(" else "}")
            return val
        raise SyntaxError(f"unexpected token {tok!r}")

    val = expr()
    if pos != len(toks):
        raise SyntaxError(f"trailing input at token {pos}: {toks[pos:pos + 5]}")
    return val


def poly_ring(names: str | Sequence[str]):
    """Return the generators of Q[names] as SparsePoly objects."""
    gens = tuple(names.replace(",", " ").split()) if isinstance(names, str) else tuple(names)
    return SparsePoly.generators(gens)


def parse_poly(text: str, gens: Sequence[str]) -> SparsePoly:
    gs = SparsePoly.generators(gens)
    env = dict(zip(gens, gs))
    val = parse_expr(text, env)
    if not isinstance(val, SparsePoly):
        val = SparsePoly.constant(gens, val)
    return val
