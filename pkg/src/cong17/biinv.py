"""Bi-invariants on P^8 x P^8 and the birational maps to the K3 fibration.

Polarizations of Q, D, F, Hessian-trace constructions, the symmetric degree
(3, 3) basis and the twisted ("skew") family with its involution f -> f^dagger,
and the change-of-basis matrices taking the constructed bases to the ones used
for the maps.  Invariance is certified exactly: under M2 as a Z[xi] identity
m(Nx)^T C m(N'y) = scalar * C built from symmetric powers of N, under the
diagonal generator as a congruence on monomial weights.

The second half checks the two quadric-intersection models of the genus-one
fibres: the linear change z -> u over Q(T), and randomized F_p points pushed
through the map to the Weierstrass fibration.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

import numpy as np
from gmpy2 import mpq

from . import data
from .arith.fields import _trim, pgcd, pmul, roots_mod_p
from .arith.forms import ZXI, ring_power, symmetric_power
from .arith.poly import BITS, FIELD, SparsePoly, parse_poly, unpack
from .klein import GroupGen, SPACE, XGENS, build_generators, hessian_Q, invariant, twisted_generator

YGENS = tuple(f"y_{i}" for i in range(9))
BGENS = XGENS + YGENS
_XMASK = (1 << (BITS * 9)) - 1


# ---------------------------------------------------------------------------
# bihomogeneous polynomials
# ---------------------------------------------------------------------------


def bidegrees(P: SparsePoly) -> set[tuple[int, int]]:
    out = set()
    for k in P.terms:
        m = (k & _XMASK) % FIELD
        out.add((m, k % FIELD - m))
    return out


def split_bidegree(P: SparsePoly) -> dict[tuple[int, int], SparsePoly]:
    parts: dict[tuple[int, int], dict] = {}
    for k, c in P.terms.items():
        m = (k & _XMASK) % FIELD
        parts.setdefault((m, k % FIELD - m), {})[k] = c
    return {bd: SparsePoly(BGENS, t, clean=False) for bd, t in parts.items()}


def in_x(P: SparsePoly) -> SparsePoly:
    """A polynomial in x_0..x_8 viewed in the 18-variable ring."""
    return P.embed(BGENS, range(9))


def in_y(P: SparsePoly) -> SparsePoly:
    return P.embed(BGENS, range(9, 18))


@dataclass(frozen=True, eq=False)
class BiPoly:
    poly: SparsePoly
    m: int
    n: int

    def __post_init__(self):
        bd = bidegrees(self.poly)
        if bd and bd != {(self.m, self.n)}:
            raise ValueError(f"not bihomogeneous of degree {(self.m, self.n)}: {sorted(bd)}")

    @classmethod
    def of(cls, P: SparsePoly) -> "BiPoly":
        bd = bidegrees(P)
        if len(bd) != 1:
            raise ValueError(f"not bihomogeneous: {sorted(bd)}")
        return cls(P, *bd.pop())

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.m, self.n

    def __add__(self, other: "BiPoly") -> "BiPoly":
        return BiPoly(self.poly + other.poly, self.m, self.n)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return BiPoly(self.poly - other.poly, self.m, self.n)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            return BiPoly(self.poly * other.poly, self.m + other.m, self.n + other.n)
        return BiPoly(self.poly.scale(other), self.m, self.n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.poly == other.poly

    def swap(self) -> "BiPoly":
        return BiPoly(swap(self.poly), self.n, self.m)

    def dagger(self) -> "BiPoly":
        return BiPoly(dagger(self.poly), self.n, self.m)

    def __len__(self):
        return len(self.poly)


def swap(P: SparsePoly) -> SparsePoly:
    """f(y; x)."""
    return P.permute([i + 9 for i in range(9)] + list(range(9)))


def _shift_index(i: int, k: int = 1) -> int:
    return 0 if i == 0 else (i - 1 + k) % 8 + 1


def dagger(P: SparsePoly) -> SparsePoly:
    """f(y_0..y_8; -x_0, -x_2, -x_3, ..., -x_8, -x_1)."""
    perm = [i + 9 for i in range(9)] + [_shift_index(i) for i in range(9)]
    signs = [1] * 9 + [-1] * 9
    return P.permute(perm, signs)


def signed_shift(P: SparsePoly) -> SparsePoly:
    """f(tau x; tau y) with tau x = (-x_0, -x_2, ..., -x_8, -x_1); dagger o dagger equals this map."""
    perm = [_shift_index(i) for i in range(9)] + [9 + _shift_index(i) for i in range(9)]
    return P.permute(perm, [-1] * 18)


def cyclic_sum(P: SparsePoly) -> SparsePoly:
    """Sum over the 8 simultaneous cyclic shifts of indices 1..8 in x and y (x_0, y_0 fixed)."""
    out = SparsePoly(BGENS)
    for k in range(8):
        perm = [_shift_index(i, k) for i in range(9)] + [9 + _shift_index(i, k) for i in range(9)]
        out = out + P.permute(perm)
    return out


# ---------------------------------------------------------------------------
# polarization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolarizationFamily:
    """I(lambda x + mu y) = sum lambda^i mu^j I_ij."""

    name: str
    degree: int
    parts: dict

    def __getitem__(self, bd: tuple[int, int]) -> SparsePoly:
        return self.parts.get(tuple(bd), SparsePoly(BGENS))


def polarize_poly(I: SparsePoly) -> dict[tuple[int, int], SparsePoly]:
    g = SparsePoly.generators(BGENS)
    return split_bidegree(I.compose([g[i] + g[i + 9] for i in range(9)]))


@lru_cache(maxsize=None)
def polarize(name: str) -> PolarizationFamily:
    I = invariant(name)
    return PolarizationFamily(name, I.degree(), polarize_poly(I))


# ---------------------------------------------------------------------------
# Hessian matrices and traces
# ---------------------------------------------------------------------------

_OFFSET = {"x": 0, "y": 9}


def hessian(f: SparsePoly, a: str = "x", b: str = "x") -> list[list[SparsePoly]]:
    """H_ab(f)[i][j] = d^2 f / da_i db_j."""
    oa, ob = _OFFSET[a], _OFFSET[b]
    first = [f.derivative(oa + i) for i in range(9)]
    return [[first[i].derivative(ob + j) for j in range(9)] for i in range(9)]


def _rat_mat_mul(R, M: list[list[SparsePoly]]) -> list[list[SparsePoly]]:
    out = []
    for row in R:
        new = []
        for j in range(9):
            acc = SparsePoly(BGENS)
            for k, r in enumerate(row):
                if r:
                    acc = acc + (M[k][j] if r == 1 else M[k][j].scale(r))
            new.append(acc)
        out.append(new)
    return out


def script_hessian(f: SparsePoly, a: str = "x", b: str = "x") -> list[list[SparsePoly]]:
    """H(Q)^-1 H_ab(f)."""
    return _rat_mat_mul(hessian_Q()[1], hessian(f, a, b))


def mat_mul(A, B) -> list[list[SparsePoly]]:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = SparsePoly(BGENS)
            for k in range(n):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def trace_of_product(A, B) -> SparsePoly:
    """tr(A B) without forming A B."""
    acc = SparsePoly(BGENS)
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] and B[j][i]:
                acc = acc + A[i][j] * B[j][i]
    return acc


def trace_chain(*mats) -> SparsePoly:
    M = mats[0]
    for X in mats[1:-1]:
        M = mat_mul(M, X)
    return trace_of_product(M, mats[-1])


# ---------------------------------------------------------------------------
# the symmetric family
# ---------------------------------------------------------------------------


@dataclass
class BasisRecord:
    case: str
    primed: list[SparsePoly]
    labels: list[str]
    matrix: tuple
    basis: list[SparsePoly] = field(default_factory=list)

    def matrix_det(self) -> mpq:
        return rational_det(self.matrix)


def rational_det(M) -> mpq:
    A = [[mpq(x) for x in row] for row in M]
    n = len(A)
    det = mpq(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return mpq(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def rational_inverse(M) -> list[list[mpq]]:
    n = len(M)
    A = [[mpq(x) for x in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _apply_inverse(M, primed: list[SparsePoly]) -> list[SparsePoly]:
    """B with B' = M B, i.e. B = M^-1 B'."""
    out = []
    for row in rational_inverse(M):
        acc = SparsePoly(BGENS)
        for c, P in zip(row, primed):
            if c:
                acc = acc + P.scale(c)
        out.append(acc)
    return out


@lru_cache(maxsize=None)
def hessian_matrices() -> dict[str, list[list[SparsePoly]]]:
    """D_x = H(Q)^-1 H(D_30), D_y = H(Q)^-1 H(D_21), F_xy = H(Q)^-1 H(F_31), all in x-derivatives."""
    D, F = polarize("D"), polarize("F")
    return {
        "D_x": script_hessian(D[3, 0]),
        "D_y": script_hessian(D[2, 1]),
        "F_xy": script_hessian(F[3, 1]),
    }


@lru_cache(maxsize=None)
def build_A_basis() -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
    """A_1 = Q20 Q02, A_2 = Q11^2, A_3 = F22 and A_4 from tr(D_x D_y F_xy) = -16 A_1 + 8 A_2 - 8 A_4."""
    Q, F = polarize("Q"), polarize("F")
    A1 = Q[2, 0] * Q[0, 2]
    A2 = Q[1, 1] * Q[1, 1]
    A3 = F[2, 2]
    A4 = (A1.scale(-16) + A2.scale(8) - ddf_trace()).scale(mpq(1, 8))
    return A1, A2, A3, A4


@lru_cache(maxsize=None)
def ddf_trace() -> SparsePoly:
    h = hessian_matrices()
    return trace_chain(h["D_x"], h["D_y"], h["F_xy"])


def trace_relation_holds() -> bool:
    A1, A2, A3, A4 = build_A_basis()
    return ddf_trace() == A1.scale(-16) + A2.scale(8) - A4.scale(8)


SYMMETRIC_LABELS = [
    "Q11 A2", "Q11 A3", "Q11 A4", "D30 D03", "D21 D12",
    "tr(Dx^3 Dy^3)", "tr(Dx^2 Dy Dx Dy^2)", "tr(Dx^2 Dy^2 Fxy)", "tr(Dx Dy Dx Dy Fxy)",
    "tr(Dx Dy Fxy^2)", "tr(Fxy^3)", "Q11 A1", "Q20 F13 + Q02 F31", "2 nabla F(x) . nabla F(y)",
]


@lru_cache(maxsize=None)
def build_symmetric_B() -> BasisRecord:
    Q, D, F = polarize("Q"), polarize("D"), polarize("F")
    A1, A2, A3, A4 = build_A_basis()
    h = hessian_matrices()
    Dx, Dy, Fxy = h["D_x"], h["D_y"], h["F_xy"]
    Dx2, Dy2 = mat_mul(Dx, Dx), mat_mul(Dy, Dy)
    DxDy = mat_mul(Dx, Dy)
    Q11 = Q[1, 1]
    # 2 grad F(x)^T H(Q)^-1 grad F(y) = 2 nabla F(x) . nabla F(y)
    Hinv = hessian_Q()[1]
    gx = [in_x(g) for g in invariant("F").gradient()]
    gy = [in_y(g) for g in invariant("F").gradient()]
    b14 = SparsePoly(BGENS)
    for i in range(9):
        for j in range(9):
            if Hinv[i][j]:
                b14 = b14 + (gx[i] * gy[j]).scale(2 * Hinv[i][j])
    primed = [
        Q11 * A2,
        Q11 * A3,
        Q11 * A4,
        D[3, 0] * D[0, 3],
        D[2, 1] * D[1, 2],
        trace_of_product(mat_mul(Dx2, Dx), mat_mul(Dy2, Dy)),
        trace_of_product(mat_mul(mat_mul(Dx2, Dy), Dx), Dy2),
        trace_of_product(mat_mul(Dx2, Dy2), Fxy),
        trace_of_product(mat_mul(DxDy, DxDy), Fxy),
        trace_of_product(DxDy, mat_mul(Fxy, Fxy)),
        trace_of_product(mat_mul(Fxy, Fxy), Fxy),
        Q11 * A1,
        Q[2, 0] * F[1, 3] + Q[0, 2] * F[3, 1],
        b14,
    ]
    M = data.SYMMETRIC_CHANGE_OF_BASIS
    return BasisRecord("symmetric", primed, SYMMETRIC_LABELS, M, _apply_inverse(M, primed))


# ---------------------------------------------------------------------------
# the skew family
# ---------------------------------------------------------------------------


def _outside_plus_cyclic(spec: tuple[str, str]) -> SparsePoly:
    outside, inner = spec
    return parse_poly(outside, BGENS) + cyclic_sum(parse_poly(inner, BGENS))


@dataclass
class SkewFamily:
    A: dict
    S31: SparsePoly
    S13: SparsePoly
    P: SparsePoly
    Theta: dict
    Psi: dict
    U: dict
    V: SparsePoly
    record: BasisRecord


SKEW_LABELS = [
    "D30 D03", "P", "Theta12", "Theta13", "Theta22", "Theta23", "Theta33",
    "U2", "U3", "Psi22 + Psi22^dag", "Psi23 + Psi23^dag", "V",
]


@lru_cache(maxsize=None)
def skew_A() -> dict[int, SparsePoly]:
    Q = polarize("Q")
    return {1: Q[2, 0] * Q[0, 2], 2: _outside_plus_cyclic(data.SKEW_A2), 3: _outside_plus_cyclic(data.SKEW_A3)}


@lru_cache(maxsize=None)
def skew_S31() -> SparsePoly:
    return _outside_plus_cyclic(data.SKEW_S31)


@lru_cache(maxsize=None)
def build_skew_family() -> SkewFamily:
    Q, D = polarize("Q"), polarize("D")
    A = skew_A()
    S31 = skew_S31()
    S13 = dagger(S31)
    P = (Q[2, 0] * S13 + Q[0, 2] * S31).scale(2)
    Hxy = {i: script_hessian(A[i], "x", "y") for i in (2, 3)}
    Hyx = {i: script_hessian(A[i], "y", "x") for i in (2, 3)}
    Hd30 = script_hessian(D[3, 0], "x", "x")
    Hd03 = script_hessian(D[0, 3], "y", "y")
    Hs31 = script_hessian(S31, "x", "x")
    Theta = {}
    for i, j in ((1, 2), (1, 3), (2, 2), (2, 3), (3, 3)):
        hxy = Hxy[i] if i in Hxy else script_hessian(A[i], "x", "y")
        Theta[i, j] = trace_chain(Hd30, hxy, Hd03, Hyx[j])
    Psi = {(i, j): trace_chain(Hs31, Hxy[i], Hyx[j]) for i, j in ((2, 2), (2, 3))}
    HP = script_hessian(P, "x", "y")
    U = {i: trace_of_product(HP, Hyx[i]) for i in (2, 3)}
    V = trace_of_product(script_hessian(Theta[1, 2], "x", "y"), Hyx[3])
    primed = [
        D[3, 0] * D[0, 3],
        P,
        Theta[1, 2], Theta[1, 3], Theta[2, 2], Theta[2, 3], Theta[3, 3],
        U[2], U[3],
        Psi[2, 2] + dagger(Psi[2, 2]),
        Psi[2, 3] + dagger(Psi[2, 3]),
        V,
    ]
    M = data.SKEW_CHANGE_OF_BASIS
    rec = BasisRecord("skew", primed, SKEW_LABELS, M, _apply_inverse(M, primed))
    return SkewFamily(A, S31, S13, P, Theta, Psi, U, V, rec)


# ---------------------------------------------------------------------------
# exact invariance under g x g'
# ---------------------------------------------------------------------------


def bi_weights_ok(P: SparsePoly, wx, wy) -> bool:
    """Every monomial has total weight 0 mod 17 (invariance under Diag(zeta^wx) x Diag(zeta^wy))."""
    w = tuple(wx) + tuple(wy)
    for k in P.terms:
        e = unpack(k, 18)
        if sum(a * b for a, b in zip(e, w)) % 17:
            return False
    return True


@lru_cache(maxsize=None)
def _sympow(label: str, d: int) -> np.ndarray:
    g = _generator(label)
    return symmetric_power(SPACE, ZXI, g.N, d)


@lru_cache(maxsize=None)
def _generator(label: str) -> GroupGen:
    M2, M17 = build_generators()
    gens = {"M2": M2, "M17": M17, "M2~": twisted_generator(M2), "M17~": twisted_generator(M17)}
    return gens[label]


def bi_matrix(P: SparsePoly, m: int, n: int) -> tuple[np.ndarray, int]:
    """(C, L): L*P = m_m(x)^T C m_n(y) with C an integer matrix."""
    L = 1
    for c in P.terms.values():
        L = lcm(L, int(mpq(c).denominator))
    xk = SPACE.monomials(m)[1]
    yk = SPACE.monomials(n)[1]
    rows, cols, vals = [], [], []
    for key, c in P.terms.items():
        e = unpack(key, 18)
        rows.append(int(np.dot(e[:9], SPACE.weights)))
        cols.append(int(np.dot(e[9:], SPACE.weights)))
        vals.append(int(mpq(c) * L))
    C = np.zeros((len(xk), len(yk)), dtype=object)
    C[np.searchsorted(xk, rows), np.searchsorted(yk, cols)] = vals
    if not vals or max(abs(v) for v in vals) < 2**62:
        C = C.astype(np.int64)
    return C, L


def is_bi_invariant(P: SparsePoly, g: GroupGen, g2: GroupGen) -> bool:
    """P(g x, g2 y) = P(x, y) exactly."""
    bd = bidegrees(P)
    if not bd:
        return True
    if len(bd) != 1:
        raise ValueError("not bihomogeneous")
    m, n = bd.pop()
    if g.diagonal != g2.diagonal:
        raise ValueError("pair a diagonal generator with a diagonal one")
    if g.diagonal:
        return bi_weights_ok(P, g.weights, g2.weights)
    C, _ = bi_matrix(P, m, n)
    Cz = np.multiply.outer(ZXI.one, C)
    if C.dtype == object:
        Cz = Cz.astype(object)
    Sx = np.transpose(_sympow(g.label, m), (0, 2, 1))
    Sy = _sympow(g2.label, n)
    lhs = ZXI.matmul(ZXI.matmul(Sx, Cz), Sy)
    # P(Nx, N'y) = (s sqrt17)^m (s' sqrt17)^n P(x, y)
    scal = ZXI.mul(g.scalar_power(m), g2.scalar_power(n))
    rhs = ZXI.mul(np.broadcast_to(scal.reshape(8, 1, 1), Cz.shape), Cz)
    return bool(np.all(lhs == rhs))


def generator_pairs(kind: str) -> list[tuple[GroupGen, GroupGen]]:
    """(g, g) for the diagonal action, (g, g~) for the twisted one."""
    if kind == "diagonal":
        return [(_generator("M2"), _generator("M2")), (_generator("M17"), _generator("M17"))]
    return [(_generator("M2"), _generator("M2~")), (_generator("M17"), _generator("M17~"))]


def invariance_report(polys: dict[str, SparsePoly], kind: str) -> list[dict]:
    out = []
    for name, P in polys.items():
        for g, g2 in generator_pairs(kind):
            out.append({"identity": f"{name} o ({g.label} x {g2.label}) = {name}", "ok": is_bi_invariant(P, g, g2)})
    return out


# ---------------------------------------------------------------------------
# verification bundle for the CLI and the acceptance suite
# ---------------------------------------------------------------------------


def verify_bi_invariants(full: bool = False) -> list[dict]:
    """Identity checks; ``full`` adds the degree (3, 3) constructions and their invariance."""
    out = []
    A = build_A_basis()
    out.append({"identity": "tr(Dx Dy Fxy) = -16 A1 + 8 A2 - 8 A4", "ok": trace_relation_holds()})
    out.append({"identity": "A4 not in span(A1, A2, A3)", "ok": rank_of([*A]) == 4})
    for i, a in enumerate(A, 1):
        out.append({"identity": f"A{i} swap-symmetric", "ok": swap(a) == a})
    out += invariance_report({f"A{i}": a for i, a in enumerate(A, 1)}, "diagonal")
    sA = skew_A()
    S31 = skew_S31()
    for i, a in sA.items():
        out.append({"identity": f"skew A{i}^dag = A{i}", "ok": dagger(a) == a})
        out.append({"identity": f"skew A{i}^dag^dag = A{i}", "ok": dagger(dagger(a)) == a})
    out.append({"identity": "S31^dag^dag = S31", "ok": dagger(dagger(S31)) == S31})
    out.append({"identity": "S13 = S31^dag has bidegree (1, 3)", "ok": bidegrees(dagger(S31)) == {(1, 3)}})
    out += invariance_report({**{f"skew A{i}": a for i, a in sA.items()}, "S31": S31}, "twisted")
    Ms, Mk = data.SYMMETRIC_CHANGE_OF_BASIS, data.SKEW_CHANGE_OF_BASIS
    out.append({"identity": "symmetric change of basis invertible", "ok": rational_det(Ms) != 0})
    out.append({"identity": "skew change of basis invertible", "ok": rational_det(Mk) != 0})
    fixed = all(Ms[i - 1] == tuple(int(j == i - 1) for j in range(14)) for i in data.SYMMETRIC_FIXED_SLOTS)
    out.append({"identity": "B_i = B'_i for i in 1, 2, 3, 12, 13, 14", "ok": fixed})
    if full:
        sym = build_symmetric_B()
        out.append({"identity": "symmetric B' bidegree (3, 3)", "ok": all(bidegrees(P) == {(3, 3)} for P in sym.primed)})
        out.append({"identity": "symmetric B' swap-symmetric", "ok": all(swap(P) == P for P in sym.primed)})
        out.append({"identity": "symmetric B' independent", "ok": rank_of(sym.primed) == 14})
        out += invariance_report(dict(zip(sym.labels, sym.primed)), "diagonal")
        sk = build_skew_family().record
        out.append({"identity": "skew B' bidegree (3, 3)", "ok": all(bidegrees(P) == {(3, 3)} for P in sk.primed)})
        out.append({"identity": "skew B' fixed by dagger", "ok": all(dagger(P) == P for P in sk.primed)})
        out.append({"identity": "skew B' independent", "ok": rank_of(sk.primed) == 12})
        out += invariance_report(dict(zip(sk.labels, sk.primed)), "twisted")
    return out


def rank_of(polys: list[SparsePoly], p: int = 1_000_003) -> int:
    """Rank of the coefficient vectors, computed mod a large prime (a lower bound for the rank over Q)."""
    keys = sorted({k for P in polys for k in P.terms})
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for P in polys:
        r = [0] * len(keys)
        for k, c in P.terms.items():
            c = mpq(c)
            r[index[k]] = int(c.numerator) * pow(int(c.denominator), -1, p) % p
        rows.append(r)
    rank = 0
    ncol = len(keys)
    for c in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# quadric intersections and the maps to the Weierstrass fibration
# ---------------------------------------------------------------------------

ZG = ("T", "z_1", "z_2", "z_3", "z_4")
UG = ("T", "u_1", "u_2", "u_3", "u_4")


@lru_cache(maxsize=None)
def bimap_data(case: int) -> dict:
    if case not in data.BIRATIONAL_MAPS:
        raise ValueError("case must be 1 or 3")
    d = data.BIRATIONAL_MAPS[case]
    return {
        "z_quadrics": tuple(parse_poly(t, ZG) for t in d["z_quadrics"]),
        "z_to_u": tuple(parse_poly(t, ZG) for t in d["z_to_u"]),
        "u_quadrics": tuple(parse_poly(t, UG) for t in d["u_quadrics"]),
        "x": tuple(parse_poly(t, UG) for t in d["x"]),
        "y": tuple(parse_poly(t, UG) for t in d["y"]),
    }


def _z_coeffs(P: SparsePoly) -> dict[tuple, SparsePoly]:
    """Coefficients of the z-monomials as polynomials in T."""
    out: dict[tuple, dict] = {}
    for e, c in P.items():
        out.setdefault(e[1:], {})
        out[e[1:]][(e[0],)] = out[e[1:]].get((e[0],), 0) + c
    return {k: SparsePoly.from_dict(("T",), v) for k, v in out.items()}


def quadric_transport(case: int, u_quadrics: tuple[SparsePoly, ...] | None = None) -> dict:
    """Check that each u-quadric composed with z -> u lies in the Q(T)-span of the z-quadrics.

    Writes q_u(L z) = a q_z1 + b q_z2 by Cramer's rule on two monomials and then
    verifies det * q_u(L z) = a' q_z1 + b' q_z2 exactly in Q[T, z].
    """
    md = bimap_data(case)
    zq = md["z_quadrics"]
    uq = u_quadrics if u_quadrics is not None else md["u_quadrics"]
    T = SparsePoly.gen(ZG, 0)
    subs = [T, *md["z_to_u"]]
    c1, c2 = _z_coeffs(zq[0]), _z_coeffs(zq[1])
    mons = sorted(set(c1) | set(c2))
    zero = SparsePoly(("T",))
    pair = None
    for i in range(len(mons)):
        for j in range(i + 1, len(mons)):
            a, b = mons[i], mons[j]
            det = c1.get(a, zero) * c2.get(b, zero) - c1.get(b, zero) * c2.get(a, zero)
            if det:
                pair = (a, b, det)
                break
        if pair:
            break
    if pair is None:
        raise ValueError("z-quadrics are dependent")
    a, b, det = pair
    results = []
    # the linear change itself must be invertible over Q(T)
    lin_ok = _poly_det([[_z_coeffs(L).get(tuple(int(k == j) for k in range(4)), zero) for j in range(4)]
                        for L in md["z_to_u"]]) != 0
    for q in uq:
        comp = q.compose(subs)
        cc = _z_coeffs(comp)
        va, vb = cc.get(a, zero), cc.get(b, zero)
        # Cramer: alpha = (va c2b - vb c2a)/det, beta = (c1a vb - c1b va)/det
        alpha = va * c2.get(b, zero) - vb * c2.get(a, zero)
        beta = c1.get(a, zero) * vb - c1.get(b, zero) * va
        lhs = comp * det.embed(ZG, [0])
        rhs = zq[0] * alpha.embed(ZG, [0]) + zq[1] * beta.embed(ZG, [0])
        results.append({"ok": lhs == rhs, "alpha": f"({alpha})/({det})", "beta": f"({beta})/({det})"})
    return {"case": case, "linear_change_invertible": lin_ok, "quadrics": results,
            "ok": lin_ok and all(r["ok"] for r in results)}


def _poly_det(M) -> SparsePoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        t = M[0][j] * _poly_det(minor)
        t = t if j % 2 == 0 else -t
        acc = t if acc is None else acc + t
    return acc if acc is not None else M[0][0] * 0


# ---- F_p points on the u-model ----


def _padd(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _psub(f, g, p):
    return _padd(f, [(-c) % p for c in g], p)


def _peval(f, x, p):
    v = 0
    for c in reversed(f):
        v = (v * x + c) % p
    return v


def _u3_coeffs(q: SparsePoly, T: int, u1: int, p: int) -> list[list[int]]:
    """q(T, u1, u2, u3, 1) as a list over powers of u3 of polynomials in u2 (mod p)."""
    out: list[list[int]] = [[], [], []]
    for (eT, e1, e2, e3, _e4), c in q.items():
        v = int(mpq(c)) * pow(T, eT, p) * pow(u1, e1, p) % p
        poly = out[e3]
        while len(poly) <= e2:
            poly.append(0)
        poly[e2] = (poly[e2] + v) % p
    return [_trim(c) for c in out]


def _poly_det_p(M, p):
    n = len(M)
    if n == 1:
        return M[0][0]
    acc: list[int] = []
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        t = pmul(M[0][j], _poly_det_p(minor, p), p)
        acc = _padd(acc, t, p) if j % 2 == 0 else _psub(acc, t, p)
    return acc


def _resultant_u3(f: list[list[int]], g: list[list[int]], p: int) -> list[int]:
    """Sylvester resultant in u3 with coefficients in F_p[u2]."""
    df = max((i for i, c in enumerate(f) if c), default=-1)
    dg = max((i for i, c in enumerate(g) if c), default=-1)
    if df < 0 or dg < 0:
        return []
    if df == 0:
        return _ppow(f[0], dg, p)
    if dg == 0:
        return _ppow(g[0], df, p)
    n = df + dg
    rows = []
    for i in range(dg):
        row = [[] for _ in range(n)]
        for k in range(df + 1):
            row[i + k] = f[df - k]
        rows.append(row)
    for i in range(df):
        row = [[] for _ in range(n)]
        for k in range(dg + 1):
            row[i + k] = g[dg - k]
        rows.append(row)
    return _poly_det_p(rows, p)


def _ppow(f, e, p):
    out = [1]
    for _ in range(e):
        out = pmul(out, f, p)
    return out


def fiber_points(quadrics, T: int, u1: int, p: int, rng: random.Random) -> list[tuple[int, int, int, int]]:
    """Points (u1 : u2 : u3 : 1) over F_p on both quadrics, for fixed T and u1."""
    f = _u3_coeffs(quadrics[0], T, u1, p)
    g = _u3_coeffs(quadrics[1], T, u1, p)
    R = _resultant_u3(f, g, p)
    if not R:
        return []
    pts = []
    for u2 in roots_mod_p(R, p, rng):
        fu = _trim([_peval(c, u2, p) for c in f])
        gu = _trim([_peval(c, u2, p) for c in g])
        if not fu and not gu:
            continue
        h = pgcd(fu, gu, p) if fu and gu else (fu or gu)
        if len(h) < 2:
            continue
        for u3 in roots_mod_p(h, p, rng):
            pts.append((u1, u2, u3, 1))
    return pts


def _eval_mod(P: SparsePoly, vals, p: int) -> int:
    total = 0
    for e, c in P.items():
        t = int(mpq(c)) % p
        for v, k in zip(vals, e):
            if k:
                t = t * pow(v, k, p) % p
        total += t
    return total % p


def _weierstrass_mod(T, x, y, p) -> int:
    b = ((T + 1) * (T - 2) * x + T**3) % p
    return (y * y + b * y - (x**3 - x * x)) % p


@dataclass
class BimapReport:
    case: int
    p: int
    trials: int
    seed: int
    nonempty: int = 0
    empty: int = 0
    points: int = 0
    degenerate: int = 0
    failures: list = field(default_factory=list)
    transport: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.failures and (self.transport is None or self.transport["ok"])

    def to_dict(self) -> dict:
        return {
            "case": self.case, "p": self.p, "trials": self.trials, "seed": self.seed,
            "nonempty": self.nonempty, "empty": self.empty, "points": self.points,
            "degenerate": self.degenerate, "failures": self.failures[:20],
            "failure_count": len(self.failures), "transport": self.transport, "ok": self.ok,
        }


def _trial(args) -> dict:
    case, p, entropy, points_per_trial, perturb = args
    rng = random.Random(entropy)
    md = bimap_data(case)
    quadrics = list(md["u_quadrics"])
    if perturb:
        quadrics[0] = quadrics[0] + SparsePoly.monomial(UG, (0, 1, 0, 1, 0))
    while True:
        T = rng.randrange(p)
        if T not in (0, p - 1, 2):
            break
    xn, xd = md["x"]
    yn, yd = md["y"]
    found, degenerate, fails = 0, 0, []
    start = rng.randrange(p)
    for step in range(p):
        u1 = (start + step) % p
        for pt in fiber_points(quadrics, T, u1, p, rng):
            vals = (T,) + pt
            dx, dy = _eval_mod(xd, vals, p), _eval_mod(yd, vals, p)
            if dx == 0 or dy == 0:
                degenerate += 1
                continue
            x = _eval_mod(xn, vals, p) * pow(dx, -1, p) % p
            y = _eval_mod(yn, vals, p) * pow(dy, -1, p) % p
            found += 1
            if _weierstrass_mod(T, x, y, p):
                fails.append({"T": T, "u": list(pt), "x": x, "y": y})
            if found >= points_per_trial:
                return {"T": T, "found": found, "degenerate": degenerate, "failures": fails}
    return {"T": T, "found": found, "degenerate": degenerate, "failures": fails}


def verify_birational_map(
    case: int,
    p: int = 10007,
    trials: int = 100,
    seed: int = 0,
    points_per_trial: int = 3,
    workers: int = 1,
    perturb: bool = False,
    transport: bool = True,
) -> BimapReport:
    """Random F_p points on the u-quadrics, pushed to (x, y), must satisfy the fibration equation.

    Each trial draws T (avoiding 0, -1, 2), fixes u4 = 1 and scans u1 from a
    random start, solving the two quadrics for (u2, u3) by a resultant in u3.
    A trial with no usable point after the whole scan counts as empty.
    ``perturb`` adds u1 u3 to the first quadric (a negative control).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    streams = np.random.SeedSequence(seed).spawn(trials)
    jobs = [(case, p, int(s.generate_state(1)[0]), points_per_trial, perturb) for s in streams]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]
    rep = BimapReport(case, p, trials, seed)
    for r in results:
        if r["found"]:
            rep.nonempty += 1
        else:
            rep.empty += 1
        rep.points += r["found"]
        rep.degenerate += r["degenerate"]
        rep.failures.extend(r["failures"])
    if transport:
        rep.transport = quadric_transport(case)
    return rep
