"""The K3 fibration y^2 + (T+1)(T-2)xy + T^3 y = x^3 - x^2 and the double covers z^2 = F_k(T, x, y).

Exact evaluation, the quadratic fibre in y, Laurent-series checks of the
curves X_0(m) lying on the covers, the table of rational points, and a
bounded-height search for rational points classified against the known
one-parameter families.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import is_square, isqrt, mpq

from . import data
from .arith.poly import RationalFunction, SparsePoly, pack, parse_expr, parse_poly, udivmod, ugcd, unpack
from .arith.series import DEFAULT_TERMS, LaurentSeries, PrecisionError, hensel_solve_quadratic

GENS = ("T", "x", "y")
MAX_TERMS = 200


@lru_cache(maxsize=None)
def double_cover_poly(k: int) -> SparsePoly:
    if k not in data.DOUBLE_COVERS:
        raise ValueError("k must be 1 or 3")
    return parse_poly(data.DOUBLE_COVERS[k], GENS)


@lru_cache(maxsize=None)
def weierstrass_poly() -> SparsePoly:
    return parse_poly(data.WEIERSTRASS, GENS)


@dataclass(frozen=True)
class DoubleCoverSurface:
    k: int

    @property
    def F(self) -> SparsePoly:
        return double_cover_poly(self.k)

    def weierstrass(self, T, x, y):
        return eval_weierstrass(T, x, y)

    def value(self, T, x, y):
        return eval_double_cover(self.k, T, x, y)


def _fiber_coeffs(T, x):
    """(b, c) with the fibre equation written y^2 + b y + c = 0."""
    b = (T + 1) * (T - 2) * x + T**3
    c = -(x**3 - x**2)
    return b, c


def eval_weierstrass(T, x, y):
    """Residual of the fibration equation; exact for any ring elements (rationals, polynomials, series)."""
    b, c = _fiber_coeffs(T, x)
    return y * y + b * y + c


def eval_double_cover(k: int, T, x, y):
    return double_cover_poly(k).evaluate([T, x, y])


def rational_sqrt(q) -> mpq | None:
    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if not (is_square(n) and is_square(d)):
        return None
    return mpq(isqrt(n), isqrt(d))


def solve_fiber_y(T, x) -> list:
    """Rational roots y of the fibre equation at (T, x), in increasing order."""
    T, x = mpq(T), mpq(x)
    b, c = _fiber_coeffs(T, x)
    s = rational_sqrt(b * b - 4 * c)
    if s is None:
        return []
    return sorted({(-b - s) / 2, (-b + s) / 2})


# ---------------------------------------------------------------------------
# copies of X_0(m): Laurent series in e over Q(t)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesRow:
    m: int
    k: int
    T: str
    x: str
    y: str
    y_prec: int | None  # absolute precision of the printed y prefix; None for exact rows
    lead: str  # expected leading coefficient (or the exact value)
    power: int | None

    @property
    def exact(self) -> bool:
        return self.y_prec is None


@dataclass
class RowResult:
    m: int
    k: int
    ok: bool
    power: int | None
    coefficient: str
    expected: str
    terms: int = 0
    detail: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def table1_rows() -> list[SeriesRow]:
    rows = [SeriesRow(m, *v) for m, v in data.TABLE1_SERIES.items()]
    rows += [SeriesRow(m, k, T, x, y, None, val, None) for m, (k, T, x, y, val) in data.TABLE1_EXACT.items()]
    return sorted(rows, key=lambda r: r.m)


def _t_ring():
    t = SparsePoly.gen(("t",), 0)
    return t, RationalFunction.from_poly(t)


def _parse_series(text: str, prec: int):
    """Parse an expression in t and e as a Laurent series in e, exact up to O(e^prec)."""
    _, t = _t_ring()
    # e^{-n} loses n + 1 orders of relative precision when inverted; pad generously
    e = LaurentSeries.eps(prec + 64)
    val = parse_expr(text, {"t": t, "e": e})
    if not isinstance(val, LaurentSeries):
        val = LaurentSeries.from_terms({0: val}, prec)
    if val.prec < prec:
        raise PrecisionError("padding too small for this expression")
    return val.truncate(prec)


def _parse_rf(text: str) -> RationalFunction:
    _, t = _t_ring()
    val = parse_expr(text, {"t": t})
    if not isinstance(val, RationalFunction):
        val = RationalFunction.constant(("t",), val)
    return val


def _exact_row(row: SeriesRow) -> RowResult:
    t, _ = _t_ring()
    env = {"t": t}

    def P(s):
        v = parse_expr(s, env)
        return v if isinstance(v, SparsePoly) else SparsePoly.constant(("t",), v)

    T, x, y = P(row.T), P(row.x), P(row.y)
    on_surface = not eval_weierstrass(T, x, y)
    value = eval_double_cover(row.k, T, x, y)
    expected = P(row.lead)
    ok = on_surface and value == expected
    detail = "" if on_surface else "arguments are not on the fibration"
    return RowResult(row.m, row.k, ok, 0, str(value), str(expected), 0, detail)


def series_row_check(row: SeriesRow, terms: int = DEFAULT_TERMS) -> RowResult:
    """Evaluate F_k on the row's series arguments and compare the leading term.

    The y argument is the unique root of the fibre equation that starts with
    the printed prefix (Hensel refinement of the quadratic).  If the working
    precision does not reach the expected leading term the number of terms is
    doubled, up to MAX_TERMS.
    """
    if row.exact:
        return _exact_row(row)
    expected = _parse_rf(row.lead)
    while True:
        try:
            res = _series_attempt(row, terms)
        except PrecisionError:
            res = None
        if res is not None and res.prec > row.power:
            break
        if terms >= MAX_TERMS:
            raise PrecisionError(f"row m={row.m}: leading term not determined with {terms} terms")
        terms *= 2
    coeff, power = res.leading() if not res.is_zero() else (0, res.prec)
    ok = power == row.power and coeff == expected
    return RowResult(row.m, row.k, ok, power, str(coeff), str(expected), terms)


def _series_attempt(row: SeriesRow, terms: int) -> LaurentSeries:
    target = row.power + terms
    T = _parse_series(row.T, target)
    x = _parse_series(row.x, target)
    b, c = _fiber_coeffs(T, x)
    branch = _parse_series(row.y, row.y_prec) if row.y.strip() != "0" else LaurentSeries.big_o(row.y_prec)
    y = hensel_solve_quadratic(1, b, c, branch)
    # y = Y / D with polynomial coefficients in t; keeps all later arithmetic gcd-free
    D = _common_denominator(y)
    Dr = RationalFunction.from_poly(D)
    Y = LaurentSeries([ci * Dr for ci in y.coeffs], y.val, y.prec)
    residual = Y * Y + b * Y * Dr + c * (Dr * Dr)
    if not residual.is_zero():
        raise ArithmeticError(f"row m={row.m}: fibre residual {residual}")
    A, B = split_in_y(row.k)
    val = A.evaluate([T, x]) * Dr + B.evaluate([T, x]) * Y
    inv = Dr.inverse()
    return LaurentSeries([ci * inv for ci in val.coeffs], val.val, val.prec)


def _common_denominator(s: LaurentSeries) -> SparsePoly:
    D = SparsePoly(("t",), {0: 1})
    for ci in s.coeffs:
        d = getattr(ci, "den", None)
        if d is None or d.is_constant():
            continue
        g = ugcd(D, d)
        D = D * (udivmod(d, g)[0] if not g.is_constant() else d)
    return D


@lru_cache(maxsize=None)
def split_in_y(k: int) -> tuple[SparsePoly, SparsePoly]:
    """(A, B) in (T, x) with F_k = A + B y (F_k has degree 1 in y)."""
    F = double_cover_poly(k)
    A, B = {}, {}
    for key, ci in F.terms.items():
        a, bx, ey = unpack(key, 3)
        target = A if ey == 0 else B
        if ey > 1:
            raise ValueError("F_k is not linear in y")
        target[pack((a, bx))] = ci
    return SparsePoly(("T", "x"), A), SparsePoly(("T", "x"), B)


def verify_table1(rows=None, terms: int = DEFAULT_TERMS) -> list[RowResult]:
    return [series_row_check(r, terms) for r in (rows or table1_rows())]


# ---------------------------------------------------------------------------
# rational points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfacePoint:
    k: int
    T: mpq
    x: mpq
    y: mpq
    z: mpq | None = None
    cls: str = ""

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "T": str(self.T),
            "x": str(self.x),
            "y": str(self.y),
            "z": None if self.z is None else str(self.z),
            "class": self.cls,
        }


def table2_rows() -> list[tuple]:
    return [(k, mpq(T), mpq(x), mpq(y), labels, deg) for k, T, x, y, labels, deg in data.TABLE2]


def verify_table2(row) -> dict:
    k, T, x, y = row[:4]
    T, x, y = mpq(T), mpq(x), mpq(y)
    residual = eval_weierstrass(T, x, y)
    value = eval_double_cover(k, T, x, y)
    z = rational_sqrt(value)
    return {
        "k": k,
        "T": str(T),
        "x": str(x),
        "y": str(y),
        "on_surface": residual == 0,
        "F": str(value),
        "square": z is not None,
        "zero": value == 0,
        "z": None if z is None else str(z),
        "ok": residual == 0 and z is not None,
    }


@dataclass(frozen=True)
class KnownFamily:
    k: int
    label: str
    x: SparsePoly | None  # None for the line T = 0
    y: SparsePoly | None

    def contains(self, T, x, y) -> bool:
        if self.x is None:
            return T == 0
        return self.x.evaluate([T]) == x and self.y.evaluate([T]) == y

    def residual(self) -> SparsePoly:
        Tp = SparsePoly.gen(("T",), 0)
        return eval_weierstrass(Tp, self.x, self.y)


@lru_cache(maxsize=None)
def known_families(k: int) -> tuple[KnownFamily, ...]:
    fams = [KnownFamily(k, "T = 0", None, None)]
    for xs, ys in data.KNOWN_FAMILIES[k]:
        fams.append(KnownFamily(k, f"(x, y) = ({xs}, {ys})", parse_poly(xs, ("T",)), parse_poly(ys, ("T",))))
    return tuple(fams)


def classify(k: int, T, x, y) -> str:
    if any(f.contains(T, x, y) for f in known_families(k)):
        return "known-family"
    for row in table2_rows():
        if row[0] == k and row[1:4] == (T, x, y):
            return "table2"
    return "NEW"


def height(q) -> int:
    q = mpq(q)
    return max(abs(int(q.numerator)), int(q.denominator))


def rationals_of_height(B: int) -> list[mpq]:
    """All a/b in lowest terms with max(|a|, b) <= B, sorted by (height, value)."""
    out = {mpq(0)}
    for b in range(1, B + 1):
        for a in range(0, B + 1):
            if math.gcd(a, b) == 1:
                out.add(mpq(a, b))
                out.add(mpq(-a, b))
    return sorted(out, key=lambda q: (height(q), q))


def _search_T(args) -> list[tuple]:
    k, T, xs = args
    T = mpq(T)
    F = double_cover_poly(k)
    hits = []
    for x in map(mpq, xs):
        for y in solve_fiber_y(T, x):
            v = F.evaluate([T, x, y])
            z = rational_sqrt(v)
            if z is None:
                continue
            cls = classify(k, T, x, y)
            if cls == "NEW" and v == 0:
                cls = "spurious"
            hits.append((str(T), str(x), str(y), str(z), cls))
    return hits


def _sort_key(p: SurfacePoint):
    return (height(p.T), p.T, height(p.x), p.x, p.y)


def search_points(k: int, BT: int, Bx: int, workers: int = 1) -> list[SurfacePoint]:
    """Rational points with H(T) <= BT, H(x) <= Bx on which F_k is a square (zero included)."""
    if BT < 1 or Bx < 1:
        raise ValueError("height bounds must be positive")
    Ts = rationals_of_height(BT)
    xs = [str(x) for x in rationals_of_height(Bx)]
    tasks = [(k, str(T), xs) for T in Ts]
    if workers <= 1:
        chunks = map(_search_T, tasks)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_T, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    pts = [
        SurfacePoint(k, mpq(T), mpq(x), mpq(y), mpq(z), cls)
        for chunk in chunks
        for T, x, y, z, cls in chunk
    ]
    return sorted(pts, key=_sort_key)
