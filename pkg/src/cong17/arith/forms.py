"""Dense homogeneous forms with integer or Z[xi] coefficients, in numpy.

This is the exact engine behind the invariance identities.  Elements of the
ring Z[xi], xi_k = zeta^k + zeta^-k for zeta a primitive 17th root of unity,
are integer vectors in the period basis xi_1, ..., xi_8 (which is an integral
basis of the real subfield).  A form of degree d in n variables is an int
array of shape (rank, number of monomials), monomials sorted by the packed
key sum e_i base^i.

All matrix products go through ``imatmul``, which proves that int64 cannot
overflow (a bound computed in floating point with a safety factor) and falls
back to exact Python integers otherwise.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .cyclotomic import Cyclotomic17

LIMIT = 2.0**61  # float bound below which int64 sums are certainly exact


def _fold(j: int) -> int:
    j %= 17
    return min(j, 17 - j)


class Ring:
    """A free Z-module of rank r with a bilinear multiplication tensor S[k, l, m]."""

    def __init__(self, name: str, S: np.ndarray, one: np.ndarray):
        self.name = name
        self.S = S.astype(np.int64)
        self.rank = S.shape[0]
        self.one = one.astype(np.int64)
        # M[m][k, l] = S[k, l, m]; used to fold the right factor before a product
        self.M = [self.S[:, :, m] for m in range(self.rank)]

    def zero(self, shape=()) -> np.ndarray:
        return np.zeros((self.rank,) + tuple(shape), dtype=np.int64)

    def scalar(self, c: int, shape=()) -> np.ndarray:
        out = self.zero(shape)
        out += (self.one * c).reshape((self.rank,) + (1,) * len(shape))
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Entrywise ring product of arrays of equal trailing shape."""
        bound = float(np.abs(a).max(initial=0)) * float(np.abs(b).max(initial=0))
        if _is_obj(a) or _is_obj(b) or bound * float(np.abs(self.S).sum(axis=(0, 1)).max()) >= LIMIT:
            a, b = a.astype(object), b.astype(object)
        res = []
        for m in range(self.rank):
            acc = np.zeros(a.shape[1:], dtype=a.dtype)
            for k, l in zip(*np.nonzero(self.S[:, :, m])):
                acc = acc + int(self.S[k, l, m]) * (a[k] * b[l])
            res.append(acc)
        return np.stack(res)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """(r, n, p) x (r, p, q) -> (r, n, q)."""
        r = self.rank
        n, p = A.shape[1:]
        q = B.shape[2]
        Acat = np.concatenate([A[k] for k in range(r)], axis=1)  # n x rp
        outs = []
        for m in range(r):
            Bm = np.concatenate([_lincomb(self.M[m][k], B) for k in range(r)], axis=0)  # rp x q
            outs.append(imatmul(Acat, Bm))
        return _stack(outs)

    def matmul_scalar_left(self, C: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Integer matrix C (n x p) times ring matrix B (r, p, q)."""
        return _stack([imatmul(C, B[k]) for k in range(self.rank)])


def _is_obj(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def _stack(arrs) -> np.ndarray:
    if any(_is_obj(a) for a in arrs):
        return np.stack([a.astype(object) for a in arrs])
    return np.stack(arrs)


def _lincomb(coeffs: np.ndarray, B: np.ndarray):
    """sum_l coeffs[l] * B[l]."""
    acc = None
    for l, c in enumerate(coeffs):
        if c:
            term = B[l] * int(c)
            acc = term if acc is None else acc + term
    if acc is None:
        acc = np.zeros(B.shape[1:], dtype=B.dtype)
    return acc


def imatmul(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Exact integer matrix product."""
    if _is_obj(X) or _is_obj(Y):
        return np.dot(X.astype(object), Y.astype(object))
    mx = float(np.abs(X).max(initial=0))
    my = float(np.abs(Y).max(initial=0))
    if mx * my * max(1, X.shape[-1]) < LIMIT:
        return X @ Y
    # sharper bound with a float product of absolute values
    bound = np.abs(X).astype(np.float64) @ np.abs(Y).astype(np.float64)
    if float(bound.max(initial=0)) * 1.01 < LIMIT:
        return X @ Y
    return np.dot(X.astype(object), Y.astype(object))


def _zxi() -> Ring:
    S = np.zeros((8, 8, 8), dtype=np.int64)
    for k in range(1, 9):
        for l in range(1, 9):
            for j in (_fold(k + l), _fold(k - l)):
                if j == 0:
                    S[k - 1, l - 1, :] -= 2  # xi_0 = 2 = -2 (xi_1 + ... + xi_8)
                else:
                    S[k - 1, l - 1, j - 1] += 1
    return Ring("Z[xi]", S, -np.ones(8, dtype=np.int64))


ZZ = Ring("Z", np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64))
ZXI = _zxi()


def xi_vec(k: int) -> np.ndarray:
    """xi_k in period coordinates (k = 0 gives 2)."""
    k = _fold(k)
    if k == 0:
        return ZXI.one * 2
    v = np.zeros(8, dtype=np.int64)
    v[k - 1] = 1
    return v


def sigma_vec(v: np.ndarray, a: int) -> np.ndarray:
    """Image under zeta -> zeta^a: permutes the periods."""
    out = np.zeros_like(v)
    for k in range(1, 9):
        out[_fold(a * k) - 1] += v[k - 1]
    return out


def to_cyclotomic(v) -> Cyclotomic17:
    return Cyclotomic17.from_periods([int(c) for c in v])


def from_cyclotomic(c: Cyclotomic17) -> np.ndarray:
    return np.array([int(x) for x in c.periods()], dtype=np.int64)


def sqrt17_vec() -> np.ndarray:
    """The Gauss sum sum_k (k|17) zeta^k in period coordinates."""
    squares = {k * k % 17 for k in range(1, 17)}
    return np.array([1 if k in squares else -1 for k in range(1, 9)], dtype=np.int64)


def ring_power(ring: Ring, v: np.ndarray, e: int) -> np.ndarray:
    out = ring.one.copy()
    for _ in range(e):
        out = ring.mul(out, v)
    return out


# ---------------------------------------------------------------------------
# monomials and dense forms
# ---------------------------------------------------------------------------


class FormSpace:
    """Monomial bookkeeping for forms in n variables of degree at most maxdeg."""

    def __init__(self, n: int, maxdeg: int):
        self.n = n
        self.base = maxdeg + 1
        if float(self.base) ** n >= 2.0**62:
            raise ValueError("monomial keys would overflow int64")
        self.weights = np.array([self.base**i for i in range(n)], dtype=np.int64)
        self._mons: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._tables: dict[tuple[int, int], tuple] = {}

    def monomials(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """(exponent matrix nmon x n, sorted keys)."""
        if d not in self._mons:
            exps = np.zeros((comb(self.n + d - 1, d), self.n), dtype=np.int64)
            for r, c in enumerate(combinations_with_replacement(range(self.n), d)):
                for i in c:
                    exps[r, i] += 1
            keys = exps @ self.weights
            order = np.argsort(keys)
            self._mons[d] = (exps[order], keys[order])
        return self._mons[d]

    def size(self, d: int) -> int:
        return comb(self.n + d - 1, d)

    def index(self, d: int, exps) -> int:
        keys = self.monomials(d)[1]
        k = int(np.dot(np.asarray(exps, dtype=np.int64), self.weights))
        i = int(np.searchsorted(keys, k))
        if i >= len(keys) or keys[i] != k:
            raise KeyError(exps)
        return i

    def _table(self, d1: int, d2: int):
        key = (d1, d2)
        if key not in self._tables:
            k1 = self.monomials(d1)[1]
            k2 = self.monomials(d2)[1]
            kt = self.monomials(d1 + d2)[1]
            tgt = np.searchsorted(kt, (k1[:, None] + k2[None, :]).ravel())
            perm = np.argsort(tgt, kind="stable")
            st = tgt[perm]
            starts = np.flatnonzero(np.r_[True, st[1:] != st[:-1]])
            longest = int(np.diff(np.r_[starts, len(st)]).max(initial=0))
            self._tables[key] = (perm, starts, st[starts], longest)
        return self._tables[key]

    def mul(self, ring: Ring, F: "Form", G: "Form") -> "Form":
        return self.mul_sum(ring, [(F, G)])

    def mul_sum(self, ring: Ring, pairs, coeffs=None) -> "Form":
        """sum_i c_i F_i G_i for forms of common degrees (d1, d2)."""
        d1, d2 = pairs[0][0].d, pairs[0][1].d
        coeffs = coeffs or [1] * len(pairs)
        r = ring.rank
        # out_m = [F_i^T ...] (n1 x r*len) @ [c_i M_m G_i ...] (r*len x n2)
        Fcat = np.concatenate([p[0].c.T for p in pairs], axis=1)
        perm, starts, targets, longest = self._table(d1, d2)
        n = self.size(d1 + d2)
        out = []
        for m in range(r):
            Gm = _stack([_lincomb(ring.M[m][k], p[1].c) * c for p, c in zip(pairs, coeffs) for k in range(r)])
            prod = imatmul(Fcat, Gm).ravel()[perm]
            # reduceat adds up to `longest` entries per target; guard that too
            if not _is_obj(prod) and float(np.abs(prod).max(initial=0)) * longest >= LIMIT:
                prod = prod.astype(object)
            vals = np.add.reduceat(prod, starts) if len(prod) else prod
            full = np.zeros(n, dtype=object if _is_obj(vals) else np.int64)
            full[targets] = vals
            out.append(full)
        return Form(d1 + d2, _stack(out))

    def linear(self, ring: Ring, coeffs: np.ndarray) -> "Form":
        """Linear form sum_i coeffs[:, i] x_i (coeffs has shape (rank, n))."""
        exps, _ = self.monomials(1)
        idx = np.argmax(exps, axis=1)  # position of the single 1
        c = ring.zero((self.n,))
        c[:, :] = coeffs[:, idx]
        return Form(1, c)

    def constant(self, ring: Ring, value: np.ndarray) -> "Form":
        return Form(0, np.asarray(value, dtype=np.int64).reshape(ring.rank, 1))

    def from_sparse(self, ring: Ring, P, d: int) -> "Form":
        """An integer-coefficient SparsePoly as a dense form (rank-1 coefficients embedded via one)."""
        from .poly import unpack

        exps = np.array([unpack(k, self.n) for k in P.terms], dtype=np.int64).reshape(-1, self.n)
        if len(exps) and not np.all(exps.sum(axis=1) == d):
            raise ValueError("polynomial is not homogeneous of the stated degree")
        keys = exps @ self.weights
        idx = np.searchsorted(self.monomials(d)[1], keys)
        vals = np.array([int(c) for c in P.terms.values()], dtype=object)
        c = np.zeros((ring.rank, self.size(d)), dtype=object)
        for k in range(ring.rank):
            c[k, idx] = vals * int(ring.one[k])
        return Form(d, _narrow(c))

    def to_terms(self, F: "Form") -> dict:
        """{exponent tuple: coefficient column} for the nonzero monomials."""
        exps, _ = self.monomials(F.d)
        nz = np.flatnonzero(np.any(F.c != 0, axis=0))
        return {tuple(int(e) for e in exps[i]): F.c[:, i] for i in nz}

    def compose(self, ring: Ring, P, subs: list["Form"], d: int) -> "Form":
        """P(subs) for a homogeneous integer SparsePoly P of degree d."""
        from .poly import unpack

        memo: dict[tuple, Form] = {}

        def prod(idx: tuple) -> Form:
            if idx in memo:
                return memo[idx]
            if len(idx) == 1:
                f = subs[idx[0]]
            else:
                f = self.mul(ring, prod(idx[:-1]), subs[idx[-1]])
            memo[idx] = f
            return f

        groups: dict[tuple, list] = {}
        for key, c in P.terms.items():
            e = unpack(key, self.n)
            if sum(e) != d:
                raise ValueError("polynomial is not homogeneous of the stated degree")
            idx = tuple(i for i in range(self.n) for _ in range(e[i]))
            groups.setdefault(idx[:-1], []).append((idx[-1], int(c)))
        out = None
        for head, tail in sorted(groups.items()):
            # sum_c c * subs[last] collected first, then one product with the shared head
            lin = None
            for last, c in tail:
                t = subs[last].scale(c)
                lin = t if lin is None else lin + t
            term = lin if not head else self.mul(ring, prod(head), lin)
            out = term if out is None else out + term
        return out


def _narrow(c: np.ndarray) -> np.ndarray:
    if c.dtype == object and (c.size == 0 or max(abs(int(x)) for x in c.ravel()) < 2**62):
        return c.astype(np.int64)
    return c


class Form:
    __slots__ = ("d", "c")

    def __init__(self, d: int, c: np.ndarray):
        self.d = d
        self.c = c

    def __add__(self, other: "Form") -> "Form":
        if self.d != other.d:
            raise ValueError("degree mismatch")
        return Form(self.d, _add(self.c, other.c))

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, k: int) -> "Form":
        if _is_obj(self.c) or float(np.abs(self.c).max(initial=0)) * abs(k) >= LIMIT:
            return Form(self.d, self.c.astype(object) * int(k))
        return Form(self.d, self.c * int(k))

    def ring_scale(self, ring: Ring, v: np.ndarray) -> "Form":
        """Multiply every coefficient by the ring element v."""
        vv = np.asarray(v).reshape((ring.rank,) + (1,) * (self.c.ndim - 1))
        vv = np.broadcast_to(vv, self.c.shape)
        return Form(self.d, ring.mul(vv, self.c))

    def is_zero(self) -> bool:
        return not np.any(self.c != 0)

    def __eq__(self, other) -> bool:
        return self.d == other.d and self.c.shape == other.c.shape and bool(np.all(self.c == other.c))


def _add(a, b):
    if _is_obj(a) or _is_obj(b):
        return a.astype(object) + b.astype(object)
    if float(np.abs(a).max(initial=0)) + float(np.abs(b).max(initial=0)) < LIMIT:
        return a + b
    return a.astype(object) + b.astype(object)


# ---------------------------------------------------------------------------
# symmetric powers of a 9x9 matrix
# ---------------------------------------------------------------------------


def symmetric_power(space: FormSpace, ring: Ring, g: np.ndarray, d: int) -> np.ndarray:
    """S_d(g) with m_d(g x) = S_d(g) m_d(x); g has shape (rank, n, n); result (rank, N, N)."""
    rows = [space.linear(ring, g[:, i, :]) for i in range(space.n)]
    exps, _ = space.monomials(d)
    out = ring.zero((space.size(d), space.size(d)))
    if d == 0:
        out[:, 0, 0] = ring.one
        return out
    memo: dict[tuple, Form] = {}

    def prod(idx):
        if idx not in memo:
            memo[idx] = rows[idx[0]] if len(idx) == 1 else space.mul(ring, prod(idx[:-1]), rows[idx[-1]])
        return memo[idx]

    obj = False
    cols = []
    for a in range(len(exps)):
        idx = tuple(i for i in range(space.n) for _ in range(int(exps[a, i])))
        col = prod(idx).c
        obj = obj or _is_obj(col)
        cols.append(col)
    if obj:
        out = out.astype(object)
    for a, col in enumerate(cols):
        out[:, a, :] = col
    return out
