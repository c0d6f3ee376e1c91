"""Genus-2 curves y^2 = f1(x) f2(x) with a split Jacobian.

Point counts over F_p and F_{p^2}, the Jacobian order from the zeta function,
the product check #J(F_p) = #E1(F_p) #E2(F_p), and an exact check over F_p of
degree-n maps to elliptic curves given by their x-coordinate and the pull-back
of the invariant differential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arith.fields import _trim, pgcd, pmul
from .arith.ntheory import factor, is_prime, primes_up_to
from .elliptic import EllipticCurveQ, TraceTable


class BadPrime(ValueError):
    pass


class InconsistentCounts(ValueError):
    pass


def _poly_mul_int(f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _det(m: list[list]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def resultant(f: Sequence[int], g: Sequence[int], df: int | None = None, dg: int | None = None) -> int:
    """Resultant of forms of formal degrees df, dg (coefficient lists low degree first)."""
    df = len(f) - 1 if df is None else df
    dg = len(g) - 1 if dg is None else dg
    f = list(f) + [0] * (df + 1 - len(f))
    g = list(g) + [0] * (dg + 1 - len(g))
    n = df + dg
    rows = []
    for i in range(dg):
        row = [0] * n
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(df):
        row = [0] * n
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    d = _det(rows)
    assert d.denominator == 1
    return int(d)


def form_discriminant(f: Sequence[int], d: int | None = None) -> int:
    """Discriminant of the binary form of degree d attached to f (allows a vanishing top coefficient)."""
    d = len(f) - 1 if d is None else d
    if d < 1 or not any(f):
        return 0
    f = list(f) + [0] * (d + 1 - len(f))
    df = [k * f[k] for k in range(1, d + 1)]
    lead = f[d]
    if lead == 0:
        # disc_d(f) = a_{d-1}^2 disc_{d-1}(f) when the top coefficient vanishes
        return f[d - 1] ** 2 * form_discriminant(f[:d], d - 1)
    r = resultant(f, df, d, d - 1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, lead)
    assert rem == 0
    return q


@lru_cache(maxsize=64)
def _sextic_discriminant(f1: tuple[int, ...], f2: tuple[int, ...]) -> int:
    if len(f1) <= 4 and len(f2) <= 4:
        # disc(f1 f2) = disc(f1) disc(f2) Res(f1, f2)^2 for a pair of cubic forms
        return form_discriminant(f1, 3) * form_discriminant(f2, 3) * resultant(f1, f2, 3, 3) ** 2
    return form_discriminant(_poly_mul_int(f1, f2), 6)


@dataclass(frozen=True)
class Genus2Curve:
    """y^2 = f1(x) f2(x); f1, f2 are the cubic factors (any split with deg f1 f2 <= 6 is accepted)."""

    f1: tuple[int, ...]
    f2: tuple[int, ...] = (1,)

    def __post_init__(self):
        if len(self.f1) + len(self.f2) - 2 > 6:
            raise ValueError("f1 f2 must have degree at most 6")
        if self.discriminant() == 0:
            raise ValueError("f1 f2 has a repeated root")

    @property
    def f(self) -> list[int]:
        return _poly_mul_int(self.f1, self.f2)

    def discriminant(self) -> int:
        """Discriminant of f1 f2 as a binary sextic form."""
        return _sextic_discriminant(tuple(self.f1), tuple(self.f2))

    def bad_primes(self) -> list[int]:
        return sorted(set(factor(2 * self.discriminant())))

    def is_good(self, p: int) -> bool:
        return p != 2 and self.discriminant() % p != 0


def _chi(p: int) -> np.ndarray:
    tab = np.full(p, -1, dtype=np.int64)
    xs = np.arange(p, dtype=np.int64)
    tab[(xs * xs) % p] = 1
    tab[0] = 0
    return tab


def curve_counts(C: Genus2Curve, p: int) -> tuple[int, int]:
    """(#C(F_p), #C(F_{p^2})) for the smooth model, points at infinity included."""
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if not C.is_good(p):
        raise BadPrime(f"{p} is a bad prime for the curve")
    f = [c % p for c in C.f]
    chi = _chi(p)
    lc = f[6]
    # points at infinity: two (lc square) or none over F_p; a single one when deg f drops to 5
    inf1 = 1 + int(chi[lc]) if lc else 1
    inf2 = 2 if lc else 1
    x = np.arange(p, dtype=np.int64)
    v = np.zeros(p, dtype=np.int64)
    for c in reversed(f):
        v = (v * x + c) % p
    n1 = p + int(chi[v].sum()) + inf1
    # F_{p^2} = F_p[s]/(s^2 - d)
    d = 2
    while chi[d] != -1:
        d += 1
    A, B = np.meshgrid(x, x, indexing="ij")
    A, B = A.ravel(), B.ravel()
    ra = np.zeros(p * p, dtype=np.int64)
    rb = np.zeros(p * p, dtype=np.int64)
    for c in reversed(f):
        ra, rb = (ra * A + d * ((rb * B) % p) + c) % p, (ra * B + rb * A) % p
    norm = (ra * ra - d * ((rb * rb) % p)) % p
    # a nonzero element of F_{p^2} is a square iff its norm is a square in F_p
    n2 = p * p + int(chi[norm].sum()) + inf2
    return n1, n2


@dataclass(frozen=True)
class JacobianCount:
    p: int
    N1: int
    N2: int
    a1: int
    a2: int
    order: int

    @property
    def weil_polynomial(self) -> tuple[int, ...]:
        """Coefficients (1, a1, a2, p a1, p^2) of the reversed characteristic polynomial."""
        return (1, self.a1, self.a2, self.p * self.a1, self.p * self.p)


def jacobian_order(N1: int, N2: int, p: int) -> JacobianCount:
    a1 = N1 - p - 1
    twice = N2 - p * p - 1 + a1 * a1
    if twice % 2:
        raise InconsistentCounts(f"non-integral a2 from N1={N1}, N2={N2}, p={p}")
    a2 = twice // 2
    order = 1 + a1 + a2 + p * a1 + p * p
    return JacobianCount(p, N1, N2, a1, a2, order)


def in_weil_interval(order: int, p: int) -> bool:
    """(sqrt p - 1)^4 <= order <= (sqrt p + 1)^4, decided in integers.

    (sqrt p +- 1)^4 = p^2 + 6p + 1 +- 4(p + 1) sqrt p.
    """
    dev = order - (p * p + 6 * p + 1)
    return dev * dev <= 16 * p * (p + 1) ** 2


@dataclass
class SplitReport:
    bound: int
    results: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.results)

    def to_dict(self) -> dict:
        return {"bound": self.bound, "passed": self.passed, "results": self.results, "skipped": self.skipped}


def split_check(C: Genus2Curve, E1: EllipticCurveQ, E2: EllipticCurveQ, bound: int) -> SplitReport:
    t1, t2 = TraceTable(E1), TraceTable(E2)
    rep = SplitReport(bound)
    for p in primes_up_to(bound):
        if not C.is_good(p) or p in t1.local or p in t2.local:
            rep.skipped.append(p)
            continue
        jc = jacobian_order(*curve_counts(C, p), p)
        e = (p + 1 - t1.ap(p)) * (p + 1 - t2.ap(p))
        rep.results.append({"p": p, "jacobian": jc.order, "product": e, "ok": jc.order == e})
    return rep


# ---------------------------------------------------------------------------
# maps C -> E over F_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MorphismDataModP:
    """x-coordinate xi_i = h_i / (f_i g_i^2) and differential (c_i x + d_i) dx / y, over F_p."""

    p: int
    f: dict  # i -> f_i (low degree first)
    g: dict
    h: dict
    diff: dict  # i -> (c_i, d_i)

    def with_h_bumped(self, i: int, k: int) -> "MorphismDataModP":
        h = dict(self.h)
        hi = list(h[i])
        hi[k] = (hi[k] + 1) % self.p
        h[i] = tuple(hi)
        return MorphismDataModP(self.p, self.f, self.g, h, self.diff)


def _padd(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _pscale(f, c, p):
    return _trim([(c * x) % p for x in f])


def _pderiv(f, p):
    return _trim([(k * f[k]) % p for k in range(1, len(f))])


def xi_lowest_terms(data: MorphismDataModP, i: int) -> tuple[list[int], list[int]]:
    p = data.p
    num = _trim([c % p for c in data.h[i]])
    den = pmul(list(data.f[i]), pmul(list(data.g[i]), list(data.g[i]), p), p)
    g = pgcd(num, den, p)
    if len(g) > 1:
        from .arith.fields import pdivexact

        num, den = pdivexact(num, g, p), pdivexact(den, g, p)
    return num, den


def verify_morphism_mod_p(data: MorphismDataModP, i: int, E: EllipticCurveQ) -> bool:
    """True iff x = xi(X), y = (Y xi'(X)/(cX + d) - a1 xi - a3)/2 maps y^2 = f(X) onto E over F_p.

    The y-coordinate is recovered from the differential identity
    xi' dX / (2y + a1 xi + a3) = (cX + d) dX / Y.  Substituting and using
    Y^2 = f(X), the equation of E holds iff
    f (N'D - N D')^2 = (cX + d)^2 D (4 N^3 + b2 N^2 D + 2 b4 N D^2 + b6 D^3)
    where xi = N / D (the terms odd in Y cancel identically).
    """
    p = data.p
    if not E.is_integral():
        raise ValueError("need an integral model")
    a1, a2, a3, a4, a6 = (x % p for x in E.a)
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    N = _trim([c % p for c in data.h[i]])
    D = pmul(list(data.f[i]), pmul(list(data.g[i]), list(data.g[i]), p), p)
    f = pmul(list(data.f[1]), list(data.f[2]), p)
    c, d = data.diff[i]
    lin = _trim([d % p, c % p])
    W = _padd(pmul(_pderiv(N, p), D, p), _pscale(pmul(N, _pderiv(D, p), p), -1, p), p)
    lhs = pmul(f, pmul(W, W, p), p)
    N2 = pmul(N, N, p)
    D2 = pmul(D, D, p)
    cubic = _padd(
        _padd(_pscale(pmul(N2, N, p), 4, p), _pscale(pmul(N2, D, p), b2, p), p),
        _padd(_pscale(pmul(N, D2, p), 2 * b4, p), _pscale(pmul(D2, D, p), b6, p), p),
        p,
    )
    rhs = pmul(pmul(lin, lin, p), pmul(D, cubic, p), p)
    return _trim(lhs) == _trim(rhs)


# ---------------------------------------------------------------------------
# the transcribed curve and maps
# ---------------------------------------------------------------------------


def _coeff_list(text: str) -> tuple[int, ...]:
    from .arith.poly import parse_poly

    P = parse_poly(text, ("x",))
    return tuple(int(P.coeff((k,))) for k in range(P.degree() + 1))


def curve_C() -> Genus2Curve:
    from . import data

    return Genus2Curve(_coeff_list(data.GENUS2_F1), _coeff_list(data.GENUS2_F2))


def morphism_data() -> MorphismDataModP:
    from . import data

    p = data.MORPHISM_P
    C = curve_C()
    return MorphismDataModP(
        p,
        {1: tuple(c % p for c in C.f1), 2: tuple(c % p for c in C.f2)},
        {i: tuple(c % p for c in _coeff_list(data.MORPHISM_G[i])) for i in (1, 2)},
        {i: tuple(c % p for c in _coeff_list(data.MORPHISM_H[i])) for i in (1, 2)},
        {i: tuple(c % p for c in data.MORPHISM_DIFF[i]) for i in (1, 2)},
    )
