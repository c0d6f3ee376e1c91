import random
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from cong17 import data
from cong17.arith.poly import SparsePoly
from cong17.biinv import (
    BGENS,
    UG,
    BiPoly,
    _generator,
    bidegrees,
    bimap_data,
    build_A_basis,
    build_skew_family,
    build_symmetric_B,
    cyclic_sum,
    dagger,
    in_x,
    in_y,
    is_bi_invariant,
    polarize,
    quadric_transport,
    rank_of,
    rational_det,
    rational_inverse,
    signed_shift,
    skew_A,
    skew_S31,
    swap,
    trace_relation_holds,
    verify_bi_invariants,
    verify_birational_map,
)
from cong17.klein import invariant

M2, M17 = _generator("M2"), _generator("M17")
M2t, M17t = _generator("M2~"), _generator("M17~")
GENS = SparsePoly.generators(BGENS)


def _collapse(P):
    """Set y := x."""
    return P.compose(GENS[:9] + GENS[:9])


def _at_e0(P):
    vals = [mpq(0)] * 18
    vals[0] = vals[9] = mpq(1)
    return P.evaluate(vals)


def _random_bipoly(seed, m, n, terms=5):
    rng = random.Random(seed)
    out = SparsePoly(BGENS)
    for _ in range(terms):
        e = [0] * 18
        for _ in range(m):
            e[rng.randrange(9)] += 1
        for _ in range(n):
            e[9 + rng.randrange(9)] += 1
        out = out + SparsePoly.monomial(BGENS, e, mpq(rng.randint(-9, 9), rng.randint(1, 3)))
    return out


def _combine(M, polys):
    out = []
    for row in M:
        acc = SparsePoly(BGENS)
        for c, P in zip(row, polys):
            if c:
                acc = acc + P.scale(c)
        out.append(acc)
    return out


# ---- BiPoly and the involutions ----


def test_bipoly_bidegree():
    x0, y1 = GENS[0], GENS[10]
    f = BiPoly.of(x0 * x0 * y1)
    assert f.bidegree == (2, 1)
    assert f.swap().bidegree == (1, 2) and f.dagger().bidegree == (1, 2)
    assert (f * BiPoly.of(y1)).bidegree == (2, 2)
    with pytest.raises(ValueError):
        BiPoly.of(x0 + y1 * y1)
    with pytest.raises(ValueError):
        BiPoly(x0 * y1, 2, 0)


def test_dagger_formula():
    x, y = GENS[:9], GENS[9:]
    # f = x_1 y_8: f^dag(x; y) = y_1 * (-x_1)
    assert dagger(x[1] * y[8]) == -(y[1] * x[1])
    assert dagger(x[0]) == y[0]
    assert dagger(y[0]) == -x[0]


@settings(max_examples=100)
@given(st.integers(0, 2**32), st.integers(0, 3), st.integers(0, 3))
def test_double_dagger_is_signed_shift(seed, m, n):
    f = _random_bipoly(seed, m, n)
    assert dagger(dagger(f)) == signed_shift(f)
    assert bidegrees(dagger(f)) <= {(n, m)}
    # sixteen daggers give back f
    g = f
    for _ in range(16):
        g = dagger(g)
    assert g == f


@settings(max_examples=50)
@given(st.integers(0, 2**32), st.sampled_from([(1, 1), (2, 2), (3, 1), (1, 3), (3, 3)]))
def test_double_dagger_identity_on_shift_invariants(seed, bd):
    # cyclic sums of even total degree are fixed by (x, y) -> (tau x, tau y)
    f = cyclic_sum(_random_bipoly(seed, *bd))
    assert dagger(dagger(f)) == f


@settings(max_examples=50)
@given(st.integers(0, 2**32), st.integers(0, 3), st.integers(0, 3))
def test_swap_involution(seed, m, n):
    f = _random_bipoly(seed, m, n)
    assert swap(swap(f)) == f


# ---- polarization ----


@pytest.mark.parametrize("name", ["Q", "D", "F"])
def test_polarization_collapses(name):
    I = invariant(name)
    fam = polarize(name)
    d = I.degree()
    Ix = in_x(I)
    assert fam[d, 0] == Ix
    assert fam[0, d] == in_y(I)
    for i in range(d + 1):
        assert bidegrees(fam[i, d - i]) == {(i, d - i)}
        assert _collapse(fam[i, d - i]) == Ix.scale(comb(d, i))


def test_polarization_examples():
    Q = polarize("Q")
    assert _collapse(Q[1, 1]) == in_x(invariant("Q")).scale(2)
    assert bidegrees(polarize("D")[2, 1]) == {(2, 1)}


# ---- the A basis and the symmetric family ----


def test_A_basis():
    A1, A2, A3, A4 = build_A_basis()
    assert trace_relation_holds()
    for A in (A1, A2, A3, A4):
        assert bidegrees(A) == {(2, 2)}
        assert swap(A) == A
        assert is_bi_invariant(A, M2, M2) and is_bi_invariant(A, M17, M17)
    assert rank_of([A1, A2, A3, A4]) == 4
    assert all(mpq(c).denominator == 1 for c in A4.terms.values())


def test_symmetric_basis():
    rec = build_symmetric_B()
    assert len(rec.primed) == len(rec.basis) == 14
    assert rec.matrix_det() != 0
    assert all(bidegrees(P) == {(3, 3)} for P in rec.primed)
    assert all(swap(P) == P for P in rec.primed)
    assert rank_of(rec.primed) == 14
    # B'_i are the rows of the matrix applied to B
    assert _combine(rec.matrix, rec.basis) == rec.primed
    for i in data.SYMMETRIC_FIXED_SLOTS:
        assert rec.matrix[i - 1] == tuple(int(j == i - 1) for j in range(14))
        assert rec.basis[i - 1] == rec.primed[i - 1]


@pytest.mark.parametrize("i", [0, 3, 13])
def test_symmetric_invariance(i):
    P = build_symmetric_B().primed[i]
    assert is_bi_invariant(P, M2, M2) and is_bi_invariant(P, M17, M17)


def test_symmetric_element_not_twisted_invariant():
    # Q11 A2 is not invariant under the twisted action (D30 D03 lies in both families)
    P = build_symmetric_B().primed[0]
    assert not is_bi_invariant(P, M17, M17t)


def test_rational_inverse():
    M = data.SKEW_CHANGE_OF_BASIS
    Mi = rational_inverse(M)
    n = len(M)
    for i in range(n):
        for j in range(n):
            assert sum(mpq(M[i][k]) * Mi[k][j] for k in range(n)) == (1 if i == j else 0)
    with pytest.raises(ZeroDivisionError):
        rational_inverse([[1, 2], [2, 4]])
    assert rational_det([[1, 2], [3, 4]]) == -2


# ---- the skew family ----


def test_skew_values_at_e0():
    A = skew_A()
    assert _at_e0(A[2]) == 4 and _at_e0(A[3]) == 4
    assert _at_e0(skew_S31()) == -16


def test_skew_daggers():
    for a in skew_A().values():
        assert dagger(a) == a
    S31 = skew_S31()
    assert bidegrees(S31) == {(3, 1)}
    assert bidegrees(build_skew_family().S13) == {(1, 3)}


def test_skew_twisted_invariance():
    S31 = skew_S31()
    assert is_bi_invariant(S31, M17, M17t)
    assert is_bi_invariant(S31, M2, M2t)
    assert not is_bi_invariant(S31, M17, M17)
    for a in skew_A().values():
        assert is_bi_invariant(a, M17, M17t) and is_bi_invariant(a, M2, M2t)


def test_skew_basis():
    fam = build_skew_family()
    rec = fam.record
    assert len(rec.primed) == len(rec.basis) == 12
    assert rec.matrix_det() != 0
    assert all(bidegrees(P) == {(3, 3)} for P in rec.primed)
    assert all(dagger(P) == P for P in rec.primed)
    assert rank_of(rec.primed) == 12
    assert _combine(rec.matrix, rec.basis) == rec.primed
    for P in rec.primed[:2]:
        assert is_bi_invariant(P, M17, M17t)


def test_mixing_diagonal_and_full_generators():
    with pytest.raises(ValueError):
        is_bi_invariant(GENS[0] * GENS[9], M2, M17)


def test_non_invariant_detected():
    x0y0 = GENS[0] * GENS[9]
    assert is_bi_invariant(x0y0, M17, M17)
    assert not is_bi_invariant(x0y0, M2, M2)


def test_verify_bundle_basic():
    out = verify_bi_invariants(full=False)
    assert all(r["ok"] for r in out), [r for r in out if not r["ok"]]


# ---- maps to the fibration ----


@pytest.mark.parametrize("case", [1, 3])
def test_quadric_transport(case):
    rep = quadric_transport(case)
    assert rep["ok"] and rep["linear_change_invertible"]
    assert len(rep["quadrics"]) == 2


@pytest.mark.parametrize("case", [1, 3])
def test_quadric_transport_negative_control(case):
    uq = bimap_data(case)["u_quadrics"]
    bad = (uq[0] + SparsePoly.monomial(UG, (0, 1, 0, 1, 0)), uq[1])
    rep = quadric_transport(case, bad)
    assert not rep["ok"] and not rep["quadrics"][0]["ok"] and rep["quadrics"][1]["ok"]


@pytest.mark.parametrize("case", [1, 3])
def test_birational_map_random_points(case):
    rep = verify_birational_map(case, p=10007, trials=30, seed=1)
    assert rep.ok and rep.nonempty == 30 and not rep.failures
    assert rep.points >= 30


def test_birational_map_small_prime():
    rep = verify_birational_map(3, p=101, trials=20, seed=2, transport=False)
    assert rep.ok and rep.nonempty + rep.empty == 20


@pytest.mark.parametrize("case", [1, 3])
def test_birational_map_negative_control(case):
    rep = verify_birational_map(case, p=10007, trials=10, perturb=True, transport=False)
    assert not rep.ok and len(rep.failures) >= 5


def test_birational_map_reproducible():
    a = verify_birational_map(1, trials=8, seed=7, transport=False).to_dict()
    b = verify_birational_map(1, trials=8, seed=7, transport=False, workers=2).to_dict()
    assert a == b


def test_birational_map_arguments():
    with pytest.raises(ValueError):
        bimap_data(2)
    with pytest.raises(ValueError):
        verify_birational_map(1, trials=0)
