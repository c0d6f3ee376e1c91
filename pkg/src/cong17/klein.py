"""Invariant theory of the modular curve X(17) embedded in P^8.

The group G = PSL_2(Z/17) acts on P^8 through two generators: M17, a diagonal
matrix of 17th roots of unity, and M2 = (-1/sqrt17) N with N a matrix whose
entries lie in Z[xi], xi_k = zeta^k + zeta^-k.  This module builds the
invariants Q, D, F, the covariants v1..v6 and the degree-10 invariant c4, the
j-map j = -2^7 c4^3 / D^10, the maps phi1, phi2 from Klein's z-curve, and the
Pfaffian quartics of that curve.

Invariance under M2 is checked as an identity for N: P(N x) = (e sqrt17)^d P(x)
with e = -1, in the exact dense engine of ``arith.forms``.  Invariance under a
diagonal matrix is a congruence on monomial weights mod 17.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import lcm

import numpy as np
from gmpy2 import mpq

from . import data
from .arith.cyclotomic import Cyclotomic17, GaussFieldElem, cyclo_sqrt17
from .arith.forms import (
    ZXI,
    ZZ,
    Form,
    FormSpace,
    from_cyclotomic,
    ring_power,
    sigma_vec,
    sqrt17_vec,
    to_cyclotomic,
    xi_vec,
)
from .arith.poly import SparsePoly, parse_expr, parse_poly, unpack

XGENS = tuple(f"x_{i}" for i in range(9))
ZGENS = tuple(f"z_{i}" for i in range(1, 9))
SPACE = FormSpace(9, 10)


class Indeterminate(ArithmeticError):
    """Both c4 and D vanish: the j-map formula is 0/0 at this point."""


class NotDefinedHere(ZeroDivisionError):
    """A denominator in the chosen formula for phi vanishes."""


INFINITY = "inf"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupGen:
    """Either a diagonal matrix Diag(zeta^w_i) or (sign / sqrt17) * N with N over Z[xi].

    ``N`` has shape (8, 9, 9): period coordinates of each entry.
    """

    label: str
    weights: tuple[int, ...] | None = None
    N: np.ndarray | None = None
    sign: int = -1

    @property
    def diagonal(self) -> bool:
        return self.weights is not None

    def matrix(self) -> list[list[Cyclotomic17]]:
        """The 9x9 matrix over Q(zeta_17)."""
        if self.diagonal:
            return [
                [Cyclotomic17.zeta(self.weights[i]) if i == j else Cyclotomic17() for j in range(9)]
                for i in range(9)
            ]
        s = cyclo_sqrt17() * mpq(self.sign, 17)  # sign/sqrt17 = sign sqrt17 / 17
        return [[to_cyclotomic(self.N[:, i, j]) * s for j in range(9)] for i in range(9)]

    def scalar_power(self, d: int) -> np.ndarray:
        """(sign sqrt17)^d in period coordinates (the factor relating P(N x) and P(M x))."""
        return ring_power(ZXI, sqrt17_vec() * self.sign, d)


def _n_matrix() -> np.ndarray:
    N = np.zeros((8, 9, 9), dtype=np.int64)
    for j in range(9):
        N[:, 0, j] = ZXI.one
    for i in range(1, 9):
        N[:, i, 0] = 2 * ZXI.one
        for j in range(1, 9):
            N[:, i, j] = xi_vec(data.M2_XI_ROWS[i - 1][j - 1])
    return N


def build_generators() -> tuple[GroupGen, GroupGen]:
    return GroupGen("M2", N=_n_matrix(), sign=-1), GroupGen("M17", weights=tuple(data.M17_EXPONENTS))


def twisted_generator(g: GroupGen, a: int = 3) -> GroupGen:
    """Entrywise image under zeta -> zeta^a (a = 3 gives the outer automorphism g -> g~)."""
    if g.diagonal:
        return GroupGen(g.label + "~", weights=tuple(w * a % 17 for w in g.weights))
    N = np.zeros_like(g.N)
    for i in range(9):
        for j in range(9):
            N[:, i, j] = sigma_vec(g.N[:, i, j], a)
    # sigma_a(sqrt17) = (a|17) sqrt17
    flip = 1 if pow(a, 8, 17) == 1 else -1
    return GroupGen(g.label + "~", N=N, sign=g.sign * flip)


def cyclotomic_det(M: list[list[Cyclotomic17]]) -> Cyclotomic17:
    M = [list(r) for r in M]
    n = len(M)
    det = Cyclotomic17.rational(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Cyclotomic17()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [M[r][k] - f * M[c][k] for k in range(n)]
    return det


# ---------------------------------------------------------------------------
# invariants and covariants as rational SparsePolys
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def invariant(name: str) -> SparsePoly:
    text = {"Q": data.KLEIN_Q, "D": data.KLEIN_D, "F": data.KLEIN_F}[name]
    return parse_poly(text, XGENS)


@lru_cache(maxsize=None)
def hessian_Q() -> tuple[tuple, tuple]:
    """(H(Q), H(Q)^-1) as 9x9 tuples of rationals."""
    Q = invariant("Q")
    H = tuple(tuple(mpq(Q.derivative(i).derivative(j).constant_coeff()) for j in range(9)) for i in range(9))
    Hinv = _rat_inverse(H)
    return H, Hinv


def _rat_inverse(M) -> tuple:
    n = len(M)
    A = [[mpq(x) for x in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(tuple(row[n:]) for row in A)


def mat_vec(M, v: list[SparsePoly]) -> list[SparsePoly]:
    out = []
    for row in M:
        acc = SparsePoly(v[0].gens)
        for m, p in zip(row, v):
            if m:
                acc = acc + p.scale(m)
        out.append(acc)
    return out


def nabla_Q(I: SparsePoly) -> list[SparsePoly]:
    """H(Q)^-1 grad I: a covariant of degree deg I - 1 when I is invariant."""
    return mat_vec(hessian_Q()[1], I.gradient())


def dot(v: list, w: list):
    """v^T H(Q) w; works for polynomials and for field elements alike."""
    H = hessian_Q()[0]
    acc = None
    for i in range(9):
        for j in range(9):
            if H[i][j]:
                t = v[i] * w[j] * H[i][j]
                acc = t if acc is None else acc + t
    return acc


def compose(v: list[SparsePoly], w: list[SparsePoly]) -> list[SparsePoly]:
    """(v o w)(x) = v(w(x))."""
    return [vi.compose(w) for vi in v]


def v1() -> list[SparsePoly]:
    return SparsePoly.generators(XGENS)


@lru_cache(maxsize=None)
def covariants() -> dict[int, list[SparsePoly]]:
    """v2 = nabla D, v3 = nabla F (the degree 4 and 6 ones live in the dense engine)."""
    return {1: v1(), 2: nabla_Q(invariant("D")), 3: nabla_Q(invariant("F"))}


# ---------------------------------------------------------------------------
# dense engine glue
# ---------------------------------------------------------------------------


def _integral(P: SparsePoly) -> tuple[SparsePoly, int]:
    L = 1
    for c in P.terms.values():
        L = lcm(L, int(mpq(c).denominator))
    return (P.scale(L) if L != 1 else P), L


def dense(P: SparsePoly, ring=ZZ) -> tuple[Form, int]:
    """(L*P as a dense form, L) with L clearing the denominators."""
    Pi, L = _integral(P)
    return SPACE.from_sparse(ring, Pi, Pi.degree()), L


def _linear_rows(g: GroupGen) -> list[Form]:
    return [SPACE.linear(ZXI, g.N[:, i, :]) for i in range(9)]


def compose_N(g: GroupGen, P: SparsePoly, subs: list[Form] | None = None) -> tuple[Form, int]:
    """L * P(N x) (or L * P(subs)) over Z[xi]."""
    Pi, L = _integral(P)
    subs = subs if subs is not None else _linear_rows(g)
    return SPACE.compose(ZXI, Pi, subs, Pi.degree()), L


def _embed(F: Form) -> Form:
    """Rank-1 integer form into Z[xi]."""
    return Form(F.d, np.outer(ZXI.one, F.c[0]).astype(F.c.dtype))


def monomial_weights_ok(P: SparsePoly, weights, target: int = 0) -> bool:
    """Every monomial has weight = target mod 17 (diagonal invariance)."""
    n = P.nvars
    for key in P.terms:
        e = unpack(key, n)
        if sum(a * w for a, w in zip(e, weights)) % 17 != target % 17:
            return False
    return True


def is_invariant(g: GroupGen, P: SparsePoly) -> bool:
    if g.diagonal:
        return monomial_weights_ok(P, g.weights)
    lhs, L = compose_N(g, P)
    rhs = _embed(dense(P)[0]).ring_scale(ZXI, g.scalar_power(P.degree()))
    return lhs == rhs


def is_covariant(g: GroupGen, v: list[SparsePoly]) -> bool:
    """v(M x) = M v(x)."""
    if g.diagonal:
        return all(monomial_weights_ok(vi, g.weights, g.weights[i]) for i, vi in enumerate(v))
    d = max(vi.degree() for vi in v)
    L = 1
    for vi in v:
        L = lcm(L, _integral(vi)[1])
    vs = [vi.scale(L) for vi in v]
    rows = _linear_rows(g)
    lhs = [SPACE.compose(ZXI, vi, rows, d) for vi in vs]
    return _covariance_rhs_matches(g, lhs, [_embed(SPACE.from_sparse(ZZ, vi, d)) for vi in vs], d)


def _covariance_rhs_matches(g: GroupGen, lhs: list[Form], v: list[Form], d: int) -> bool:
    """lhs = (sign sqrt17)^(d-1) N v."""
    s = g.scalar_power(d - 1)
    for i in range(9):
        acc = None
        for j in range(9):
            t = v[j].ring_scale(ZXI, g.N[:, i, j])
            acc = t if acc is None else acc + t
        if not lhs[i] == acc.ring_scale(ZXI, s):
            return False
    return True


def act_on_poly(g: GroupGen, P: SparsePoly) -> SparsePoly:
    """P o g as a SparsePoly over Q(zeta_17)."""
    d = P.degree()
    if g.diagonal:
        out = {}
        for key, c in P.terms.items():
            e = unpack(key, 9)
            out[key] = Cyclotomic17.zeta(sum(a * w for a, w in zip(e, g.weights))) * c
        return SparsePoly(XGENS, out)
    F, L = compose_N(g, P)
    # (sign/sqrt17)^d = sign^d sqrt17^(d mod 2) / 17^ceil(d/2)
    if d % 2:
        F = F.ring_scale(ZXI, sqrt17_vec())
    scale = mpq(g.sign**d, 17 ** ((d + 1) // 2) * L)
    out = {}
    for exps, col in SPACE.to_terms(F).items():
        out[tuple(exps)] = to_cyclotomic(col) * scale
    return SparsePoly.from_dict(XGENS, out)


# ---------------------------------------------------------------------------
# c4 and its certified invariance
# ---------------------------------------------------------------------------


def _h_pairs():
    H = hessian_Q()[0]
    return [(i, j, int(H[i][j])) for i in range(9) for j in range(9) if H[i][j]]


@lru_cache(maxsize=None)
def c4_dense() -> tuple[Form, int]:
    """(L*c4, L) over Z, via v4 = v2 o v2 and v6 = v3 o v2."""
    cov = covariants()
    v2 = [dense(p)[0] for p in cov[2]]
    if any(_integral(p)[1] != 1 for p in cov[2]):
        raise ArithmeticError("v2 expected to be integral")
    v4 = [SPACE.compose(ZZ, p, v2, 2) for p in cov[2]]
    L3 = lcm(*[_integral(p)[1] for p in cov[3]])
    v6 = [SPACE.compose(ZZ, p.scale(L3), v2, 3) for p in cov[3]]
    pairs = _h_pairs()
    return SPACE.mul_sum(ZZ, [(v4[i], v6[j]) for i, j, _ in pairs], [h for _, _, h in pairs]), L3


@lru_cache(maxsize=None)
def c4() -> SparsePoly:
    F, L = c4_dense()
    return SparsePoly.from_dict(XGENS, {e: mpq(int(col[0]), L) for e, col in SPACE.to_terms(F).items()})


@dataclass
class CovariantChain:
    """v2, v4, v6 and c4 evaluated at N x, over Z[xi] (the scaled v3 factor is L3)."""

    w: list[Form]
    v4: list[Form]
    v6: list[Form]
    c4: Form
    L3: int


def covariant_chain_at_N(g: GroupGen) -> CovariantChain:
    cov = covariants()
    rows = _linear_rows(g)
    w = [SPACE.compose(ZXI, p, rows, 2) for p in cov[2]]  # v2(N x)
    v4 = [SPACE.compose(ZXI, p, w, 2) for p in cov[2]]  # v2(v2(N x))
    L3 = lcm(*[_integral(p)[1] for p in cov[3]])
    v6 = [SPACE.compose(ZXI, p.scale(L3), w, 3) for p in cov[3]]  # L3 v3(v2(N x))
    pairs = _h_pairs()
    c = SPACE.mul_sum(ZXI, [(v4[i], v6[j]) for i, j, _ in pairs], [h for _, _, h in pairs])
    return CovariantChain(w, v4, v6, c, L3)


def c4_invariance(g: GroupGen) -> dict:
    """c4 o g = c4, and covariance of v4 and v6, for a generator."""
    if g.diagonal:
        return {"c4": monomial_weights_ok(c4(), g.weights)}
    ch = covariant_chain_at_N(g)
    Fc, L = c4_dense()
    if L != ch.L3:
        raise ArithmeticError("inconsistent scaling")
    ok_c4 = ch.c4 == _embed(Fc).ring_scale(ZXI, g.scalar_power(10))
    cov = covariants()
    v2 = [dense(p)[0] for p in cov[2]]
    v4 = [_embed(SPACE.compose(ZZ, p, v2, 2)) for p in cov[2]]
    v6 = [_embed(SPACE.compose(ZZ, p.scale(L), v2, 3)) for p in cov[3]]
    # cyclotomic parts cancel: every coefficient of c4(M2 x) is a rational multiple of 1
    coords = ch.c4.c
    rational = bool(np.all(coords == coords[:1]))
    return {
        "c4": ok_c4,
        "c4_rational": rational,
        "v4": _covariance_rhs_matches(g, ch.v4, v4, 4),
        "v6": _covariance_rhs_matches(g, ch.v6, v6, 6),
    }


# ---------------------------------------------------------------------------
# the j-map and the point above j = 1728
# ---------------------------------------------------------------------------


def covariant_values(pt) -> dict:
    """(v2, v4, v6, c4, D) at a point, through the covariants (no degree-10 polynomial needed)."""
    cov = covariants()
    one = pt[0] * 0 + 1
    v2 = [p.evaluate(pt, one) for p in cov[2]]
    v4 = [p.evaluate(v2, one) for p in cov[2]]
    v6 = [p.evaluate(v2, one) for p in cov[3]]
    return {"v2": v2, "v4": v4, "v6": v6, "c4": dot(v4, v6), "D": invariant("D").evaluate(pt, one)}


def jmap_value(pt):
    """-2^7 c4^3 / D^10 at a point of P^8, or INFINITY where D = 0 != c4."""
    vals = covariant_values(pt)
    c, D = vals["c4"], vals["D"]
    if not D:
        if not c:
            raise Indeterminate("c4 and D both vanish")
        return INFINITY
    return c**3 * data.J_SCALE / D**10


def special_point() -> list[GaussFieldElem]:
    th, i = GaussFieldElem.theta(), GaussFieldElem.i()
    u = parse_expr(data.SPECIAL_U, {"h": th, "i": i})
    orbit = [u]
    for _ in range(3):
        orbit.append(orbit[-1].sigma())
    return [GaussFieldElem.rational(1)] + orbit + orbit


def special_point_report(full_c4: bool = False) -> dict:
    pt = special_point()
    one = GaussFieldElem.rational(1)
    Q = invariant("Q").evaluate(pt, one)
    dF = [p.evaluate(pt, one) for p in invariant("F").gradient()]
    vals = covariant_values(pt)
    ratio = vals["c4"] ** 3 / vals["D"] ** 10
    expected = mpq(*data.SPECIAL_RATIO)
    out = {
        "Q_zero": not Q,
        "dF_zero": all(not x for x in dF),
        "ratio": str(ratio),
        "ratio_ok": ratio == expected,
        "j": str(jmap_value(pt)),
    }
    if full_c4:
        # second route: the expanded degree-10 polynomial evaluated directly
        out["c4_direct_agrees"] = c4().evaluate(pt, one) == vals["c4"]
    return out


# ---------------------------------------------------------------------------
# Klein's z-curve
# ---------------------------------------------------------------------------


def _zsub(k: int) -> tuple[int, int]:
    """(sign, index) with z_k = sign * z_index, index in 1..8 (index 0 means z_0 = 0)."""
    k %= 17
    if k == 0:
        return 0, 0
    return (1, k) if k <= 8 else (-1, 17 - k)


def pfaffian_matrix() -> list[list[SparsePoly]]:
    """The 17x17 matrix (z_{i-j} z_{i+j}), rows and columns indexed 0..16."""
    zs = SparsePoly.generators(ZGENS)
    zero = SparsePoly(ZGENS)

    def z(k):
        s, i = _zsub(k)
        return zero if s == 0 else zs[i - 1].scale(s)

    return [[z(i - j) * z(i + j) for j in range(17)] for i in range(17)]


def pfaffian_quartics(prune: bool = True) -> list[SparsePoly]:
    """4x4 Pfaffians m_ij m_kl - m_ik m_jl + m_il m_jk for all i < j < k < l."""
    m = pfaffian_matrix()
    out = []
    for i, j, k, l in combinations(range(17), 4):
        out.append(m[i][j] * m[k][l] - m[i][k] * m[j][l] + m[i][l] * m[j][k])
    if not prune:
        return out
    seen, pruned = set(), []
    for p in out:
        if not p:
            continue
        lead = p.terms[max(p.terms)]
        q = p if lead > 0 else -p
        key = tuple(sorted(q.terms.items()))
        if key not in seen:
            seen.add(key)
            pruned.append(q)
    return pruned


def _phi(texts, z: list):
    if len(z) != 8:
        raise ValueError("expected 8 coordinates z_1..z_8")
    env = {f"z_{i}": v for i, v in enumerate(z, start=1)}
    out = []
    for t in texts:
        try:
            out.append(parse_expr(t, env))
        except ZeroDivisionError as e:
            raise NotDefinedHere(f"denominator vanishes in {t}") from e
    return out


def phi1(z: list) -> list:
    return _phi(data.PHI1, z)


def phi2(z: list) -> list:
    return _phi(data.PHI2, z)


class LaurentMonomial:
    """sign * z^e with integer (possibly negative) exponents; enough for phi1."""

    __slots__ = ("sign", "e")

    def __init__(self, sign: int, e: tuple):
        self.sign, self.e = sign, tuple(e)

    @classmethod
    def gen(cls, i: int) -> "LaurentMonomial":
        return cls(1, tuple(int(k == i) for k in range(8)))

    def __mul__(self, o):
        if isinstance(o, LaurentMonomial):
            return LaurentMonomial(self.sign * o.sign, tuple(a + b for a, b in zip(self.e, o.e)))
        if o in (1, -1):
            return LaurentMonomial(self.sign * int(o), self.e)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * LaurentMonomial(o.sign, tuple(-a for a in o.e))

    def __rtruediv__(self, o):
        return LaurentMonomial(1, (0,) * 8) * o / self

    def __neg__(self):
        return LaurentMonomial(-self.sign, self.e)

    def __eq__(self, o):
        return isinstance(o, LaurentMonomial) and (self.sign, self.e) == (o.sign, o.e)

    def __hash__(self):
        return hash((self.sign, self.e))


def phi1_monomials() -> list[LaurentMonomial]:
    one = LaurentMonomial(1, (0,) * 8)
    env = {f"z_{i}": LaurentMonomial.gen(i - 1) for i in range(1, 9)}
    out = []
    for t in data.PHI1:
        v = parse_expr(t, env)
        out.append(one if not isinstance(v, LaurentMonomial) else v)
    return out


def phi1_quartic_identities() -> tuple[bool, bool]:
    """x1 x3 x5 x7 = -x0^4 and x2 x4 x6 x8 = -x0^4 on the image of phi1, as Laurent identities."""
    x = phi1_monomials()
    minus_x0_4 = -(x[0] * x[0] * x[0] * x[0])
    return (x[1] * x[3] * x[5] * x[7] == minus_x0_4, x[2] * x[4] * x[6] * x[8] == minus_x0_4)


# ---------------------------------------------------------------------------
# verification bundle
# ---------------------------------------------------------------------------


def sqrt17_sign_check(g: GroupGen) -> dict:
    """D o M2 = D pins the sign of sqrt17: report both choices."""
    D = invariant("D")
    lhs, _ = compose_N(g, D)
    base = _embed(dense(D)[0])
    plus = lhs == base.ring_scale(ZXI, g.scalar_power(3))
    flipped = GroupGen(g.label, N=g.N, sign=-g.sign)
    minus = lhs == base.ring_scale(ZXI, flipped.scalar_power(3))
    return {"gauss_sum_sign": plus, "opposite_sign": minus}


def verify_invariants(which: str = "both") -> list[dict]:
    M2, M17 = build_generators()
    gens = {"m2": [M2], "m17": [M17], "both": [M2, M17]}[which]
    out = []
    cov = covariants()
    for g in gens:
        for name in ("Q", "D", "F"):
            out.append({"identity": f"{name} o {g.label} = {name}", "ok": is_invariant(g, invariant(name))})
        for d in (2, 3):
            out.append({"identity": f"v{d} o {g.label} = {g.label} v{d}", "ok": is_covariant(g, cov[d])})
        res = c4_invariance(g)
        out.append({"identity": f"c4 o {g.label} = c4", "ok": res["c4"]})
        for k in ("v4", "v6"):
            if k in res:
                out.append({"identity": f"{k} o {g.label} = {g.label} {k}", "ok": res[k]})
    return out


# ---------------------------------------------------------------------------
# a second route: random points over F_p with p = 1 mod 17
# ---------------------------------------------------------------------------


def _root_of_unity_17(p: int) -> int:
    if p % 17 != 1:
        raise ValueError("need a prime p = 1 mod 17")
    for a in range(2, p):
        z = pow(a, (p - 1) // 17, p)
        if z != 1:
            return z
    raise ValueError("no primitive 17th root of unity")


def matrix_mod_p(g: GroupGen, p: int, zeta: int | None = None) -> list[list[int]]:
    """The generator as a 9x9 matrix over F_p, via an embedding zeta -> a 17th root of unity."""
    z = zeta if zeta is not None else _root_of_unity_17(p)
    if g.diagonal:
        return [[pow(z, g.weights[i], p) if i == j else 0 for j in range(9)] for i in range(9)]
    xi = [0] + [(pow(z, k, p) + pow(z, 17 - k, p)) % p for k in range(1, 9)]
    squares = {k * k % 17 for k in range(1, 17)}
    root17 = sum((1 if k in squares else -1) * pow(z, k, p) for k in range(1, 17)) % p
    s = g.sign * pow(root17, -1, p) % p
    return [[s * sum(int(c) * xi[k + 1] for k, c in enumerate(g.N[:, i, j])) % p for j in range(9)] for i in range(9)]


def eval_mod_p(P: SparsePoly, vals, p: int) -> int:
    total = 0
    for e, c in P.items():
        c = mpq(c)
        t = int(c.numerator) * pow(int(c.denominator), -1, p) % p
        for v, k in zip(vals, e):
            if k:
                t = t * pow(v, k, p) % p
        total += t
    return total % p


def verify_invariants_mod_p(p: int, which: str = "both", trials: int = 5, seed: int = 0) -> list[dict]:
    """P(M x) = P(x) at random x in F_p^9 for Q, D, F and c4."""
    import random

    rng = random.Random(seed)
    M2, M17 = build_generators()
    gens = {"m2": [M2], "m17": [M17], "both": [M2, M17]}[which]
    polys = {name: invariant(name) for name in ("Q", "D", "F")}
    polys["c4"] = c4()
    out = []
    for g in gens:
        M = matrix_mod_p(g, p)
        pts = [[rng.randrange(p) for _ in range(9)] for _ in range(trials)]
        for name, P in polys.items():
            ok = True
            for x in pts:
                gx = [sum(M[i][j] * x[j] for j in range(9)) % p for i in range(9)]
                ok = ok and eval_mod_p(P, gx, p) == eval_mod_p(P, x, p)
            out.append({"identity": f"{name} o {g.label} = {name} (mod {p}, {trials} points)", "ok": ok})
    return out
