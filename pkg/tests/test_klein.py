import random
from itertools import combinations

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from cong17 import data
from cong17.arith.cyclotomic import Cyclotomic17, GaussFieldElem, cyclo_sqrt17
from cong17.arith.poly import SparsePoly
from cong17.klein import (
    INFINITY,
    XGENS,
    GroupGen,
    Indeterminate,
    NotDefinedHere,
    act_on_poly,
    build_generators,
    c4,
    c4_invariance,
    compose,
    covariant_values,
    covariants,
    cyclotomic_det,
    dot,
    eval_mod_p,
    hessian_Q,
    invariant,
    is_covariant,
    is_invariant,
    jmap_value,
    matrix_mod_p,
    nabla_Q,
    pfaffian_matrix,
    pfaffian_quartics,
    phi1,
    phi1_quartic_identities,
    phi2,
    special_point,
    special_point_report,
    sqrt17_sign_check,
    twisted_generator,
    v1,
    verify_invariants,
    verify_invariants_mod_p,
)

M2, M17 = build_generators()
ONE = Cyclotomic17.rational(1)


def _flipped(g):
    return GroupGen(g.label, N=g.N, sign=-g.sign)


def _as_cyclo(P):
    return P.map_coeffs(Cyclotomic17.rational)


def _apply(M, x):
    return [sum((M[i][j] * x[j] for j in range(9)), Cyclotomic17()) for i in range(9)]


def _rand_point(seed, lo=-3, hi=3):
    rng = random.Random(seed)
    return [Cyclotomic17.rational(rng.randint(lo, hi)) for _ in range(9)]


# ---- generators ----


def test_m17_diagonal():
    assert M17.weights == (0, 1, 9, 13, 15, 16, 8, 4, 2)
    assert sum(M17.weights) == 68
    assert cyclotomic_det(M17.matrix()) == ONE


def test_m2_structure():
    M = M2.matrix()
    s = cyclo_sqrt17()
    scalar = -s / 17  # -1/sqrt17
    assert scalar * scalar == Cyclotomic17.rational(mpq(1, 17))
    # rows cycle through the powers of 3 mod 17 (taken up to sign)
    assert data.M2_XI_ROWS[0] == (3, 8, 7, 4, 5, 2, 6, 1)
    for r in range(1, 8):
        assert data.M2_XI_ROWS[r] == data.M2_XI_ROWS[0][r:] + data.M2_XI_ROWS[0][:r]
    for i in range(1, 9):
        for j in range(1, 9):
            assert M[i][j] == scalar * Cyclotomic17.xi(data.M2_XI_ROWS[i - 1][j - 1])
    # the 8x8 xi block is symmetric; the border row 1, 1, ... and column 2, 2, ... are not
    assert all(M[i][j] == M[j][i] for i in range(1, 9) for j in range(1, 9))
    assert M[1][0] == M[0][1] * 2
    d = cyclotomic_det(M)
    assert d**17 == ONE


def test_twisted_generators():
    M17t = twisted_generator(M17)
    assert M17t.weights == tuple(3 * w % 17 for w in M17.weights)
    assert M17t.weights[2] == 10
    assert twisted_generator(M17t).weights == tuple(9 * w % 17 for w in M17.weights)
    M2t = twisted_generator(M2)
    assert M2t.sign == -M2.sign  # sigma_3(sqrt17) = -sqrt17
    A, B = M2.matrix(), M2t.matrix()
    assert all(B[i][j] == A[i][j].sigma(3) for i in range(9) for j in range(9))


# ---- invariance ----


def test_act_on_poly_diagonal():
    Q = invariant("Q")
    assert act_on_poly(M17, Q) == _as_cyclo(Q)
    x0 = SparsePoly.gen(XGENS, 0)
    assert act_on_poly(M17, x0) == _as_cyclo(x0)
    x1 = SparsePoly.gen(XGENS, 1)
    assert act_on_poly(M17, x1) == x1.map_coeffs(lambda c: Cyclotomic17.zeta(1) * c)


@pytest.mark.parametrize("name", ["Q", "D", "F"])
def test_act_on_poly_m2(name):
    P = invariant(name)
    assert act_on_poly(M2, P) == _as_cyclo(P)
    assert act_on_poly(M2, P).degree() == P.degree()


@pytest.mark.parametrize("name", ["Q", "D", "F"])
@pytest.mark.parametrize("g", [M2, M17], ids=["M2", "M17"])
def test_is_invariant(name, g):
    assert is_invariant(g, invariant(name))


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_invariance_by_evaluation(seed):
    # third route: P(M x) = P(x) evaluated in Q(zeta_17) at a random rational point
    x = _rand_point(seed)
    for g in (M2, M17):
        gx = _apply(g.matrix(), x)
        for name in ("Q", "D", "F"):
            P = invariant(name)
            assert P.evaluate(gx, ONE) == P.evaluate(x, ONE)


def test_sign_of_sqrt17():
    assert sqrt17_sign_check(M2) == {"gauss_sum_sign": True, "opposite_sign": False}
    assert not is_invariant(_flipped(M2), invariant("D"))
    # Q and F have even degree and cannot see the sign
    assert is_invariant(_flipped(M2), invariant("Q"))


def test_non_invariant_detected():
    x0 = SparsePoly.gen(XGENS, 0)
    assert not is_invariant(M2, x0**2)
    assert not is_invariant(M17, SparsePoly.gen(XGENS, 1) ** 2)


# ---- covariants ----


def test_nabla_degrees():
    assert nabla_Q(invariant("Q")) == v1()
    cov = covariants()
    assert {p.degree() for p in cov[2]} == {2}
    assert {p.degree() for p in cov[3]} == {3}


def test_hessian_inverse():
    H, Hinv = hessian_Q()
    for i in range(9):
        for j in range(9):
            assert sum(H[i][k] * Hinv[k][j] for k in range(9)) == (1 if i == j else 0)
    assert H[0][0] == 2


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("g", [M2, M17], ids=["M2", "M17"])
def test_covariance(d, g):
    assert is_covariant(g, covariants()[d])


def test_dot_and_compose():
    Q = invariant("Q")
    x = v1()
    assert dot(x, x) == 2 * Q
    cov = covariants()
    assert compose(x, cov[2]) == cov[2]
    assert compose(cov[2], x) == cov[2]
    v4 = compose(cov[2], cov[2])
    assert {p.degree() for p in v4 if p} == {4}
    assert dot(x, cov[2]) == 3 * invariant("D")  # Euler's identity


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_dot_symmetric(seed):
    rng = random.Random(seed)
    v = [mpq(rng.randint(-5, 5)) for _ in range(9)]
    w = [mpq(rng.randint(-5, 5)) for _ in range(9)]
    assert dot(v, w) == dot(w, v)


def test_c4():
    C = c4()
    assert C.degree() == 10 and C.is_homogeneous()
    assert all(isinstance(c, type(mpq(1))) for c in C.terms.values())
    assert is_invariant(M17, C)
    res = c4_invariance(M2)
    assert res == {"c4": True, "c4_rational": True, "v4": True, "v6": True}


@settings(max_examples=5)
@given(st.integers(0, 2**32))
def test_c4_matches_covariant_chain(seed):
    x = [mpq(v.rational_part()) for v in _rand_point(seed)]
    assert c4().evaluate(x) == covariant_values(x)["c4"]


@settings(max_examples=3)
@given(st.integers(0, 2**32))
def test_v4_v6_covariance_by_evaluation(seed):
    x = _rand_point(seed, -2, 2)
    for g in (M2, M17):
        M = g.matrix()
        at_gx = covariant_values(_apply(M, x))
        at_x = covariant_values(x)
        for k in ("v2", "v4", "v6"):
            assert at_gx[k] == _apply(M, at_x[k])
        assert at_gx["c4"] == at_x["c4"]


def test_verify_invariants_bundle():
    out = verify_invariants("both")
    assert len(out) == 14 and all(r["ok"] for r in out)


def test_mod_p_route():
    out = verify_invariants_mod_p(103, "both", trials=3)
    assert all(r["ok"] for r in out)
    with pytest.raises(ValueError):
        verify_invariants_mod_p(101)  # 17 does not divide 100


def test_mod_p_negative_control():
    p = 103
    M = matrix_mod_p(_flipped(M2), p)
    D = invariant("D")
    rng = random.Random(5)
    bad = 0
    for _ in range(5):
        x = [rng.randrange(p) for _ in range(9)]
        gx = [sum(M[i][j] * x[j] for j in range(9)) % p for i in range(9)]
        bad += eval_mod_p(D, gx, p) != eval_mod_p(D, x, p)
    assert bad >= 4


# ---- j-map ----


def test_special_point():
    pt = special_point()
    assert len(pt) == 9 and pt[1:5] == pt[5:9]
    rep = special_point_report(full_c4=True)
    assert rep["Q_zero"] and rep["dF_zero"] and rep["ratio_ok"] and rep["c4_direct_agrees"]
    assert rep["ratio"] == "-27/2"  # -1728 / 2^7
    assert jmap_value(pt) == GaussFieldElem.rational(1728)


def test_jmap_cusp_and_zero():
    cusp = [mpq(v) for v in (0, 0, 1, 0, 1, 1, -1, 0, 1)]
    vals = covariant_values(cusp)
    assert vals["D"] == 0 and vals["c4"] != 0
    assert jmap_value(cusp) == INFINITY
    zero = [mpq(v) for v in (0, 1, 0, 1, 1, 0, -1, 0, 0)]
    assert jmap_value(zero) == 0
    with pytest.raises(Indeterminate):
        jmap_value([mpq(int(i == 0)) for i in range(9)])


def test_jmap_value_formula():
    x = [mpq(v) for v in (1, 1, 0, 0, 0, 1, 0, 0, 0)]
    vals = covariant_values(x)
    assert jmap_value(x) == -(2**7) * vals["c4"] ** 3 / vals["D"] ** 10


# ---- Klein's z-curve ----


def test_pfaffian_matrix():
    m = pfaffian_matrix()
    assert len(m) == 17 and all(len(r) == 17 for r in m)
    for i in range(17):
        assert not m[i][i]
        for j in range(17):
            assert m[i][j] == -m[j][i]


def test_pfaffian_quartics():
    raw = pfaffian_quartics(prune=False)
    assert len(raw) == len(list(combinations(range(17), 4))) == 2380
    pruned = pfaffian_quartics()
    assert 0 < len(pruned) < 2380
    assert all(p.degree() == 4 and p.is_homogeneous() for p in pruned)
    assert len({tuple(sorted(p.terms.items())) for p in pruned}) == len(pruned)


def test_phi1_identities():
    assert phi1_quartic_identities() == (True, True)


@settings(max_examples=50)
@given(st.lists(st.integers(1, 30).map(mpq) | st.integers(-30, -1).map(mpq), min_size=8, max_size=8))
def test_phi1_on_points(z):
    x = phi1(z)
    assert len(x) == 9
    assert x[1] * x[3] * x[5] * x[7] == -x[0] ** 4
    assert x[2] * x[4] * x[6] * x[8] == -x[0] ** 4


def test_phi_undefined():
    z = [mpq(k) for k in range(1, 9)]
    assert len(phi2(z)) == 9
    z[0] = mpq(0)
    with pytest.raises(NotDefinedHere):
        phi1(z)
    with pytest.raises(NotDefinedHere):
        phi2(z)
    with pytest.raises(ValueError):
        phi1([mpq(1)] * 7)
