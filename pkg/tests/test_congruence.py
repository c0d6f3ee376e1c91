import math

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from cong17 import data
from cong17.congruence import (
    EXCEPTIONAL_J,
    InconsistentWitnesses,
    check_congruence,
    mu,
    sturm_data,
    symplectic_type,
)
from cong17.elliptic import EllipticCurveQ, TraceTable, quadratic_twist


def _curve_with_j(j):
    # y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728) has j-invariant j
    k = mpq(j) - 1728
    return EllipticCurveQ([1, 0, 0, -36 / k, -1 / k])


def _projective_line_size(M):
    # independent count of P^1(Z/M): primitive pairs modulo units
    prim = sum(1 for c in range(M) for d in range(M) if math.gcd(math.gcd(c, d), M) == 1)
    phi = sum(1 for u in range(M) if math.gcd(u, M) == 1)
    return prim // phi


@given(st.integers(1, 60))
def test_mu_is_index_of_gamma0(M):
    assert mu(M) == _projective_line_size(M)


def test_sturm_data_antisymplectic(curves):
    sd = sturm_data(curves["E1p"], curves["E2p"])
    assert sd.S == () and sd.M == 47775
    assert sd.mu == 94080 and sd.bound == 15680 == data.STURM_BOUND_ANTISYMPLECTIC


def test_sturm_data_symplectic(curves):
    sd = sturm_data(curves["E1"], curves["E2"])
    assert sd.S == () and sd.M == 3077901970
    assert 1.032 * 2**30 < sd.bound < 1.034 * 2**30


@pytest.mark.parametrize("name", ["E1", "E1p", "E2p"])
def test_sturm_data_same_curve(curves, name):
    sd = sturm_data(curves[name], curves[name])
    assert sd.S == () and sd.M == data.CONDUCTORS[name]


def test_sturm_split_nonsplit_mismatch(curves):
    # twisting by 5 swaps split/nonsplit at primes where 5 is a non-residue
    E = curves["E1p"]
    T = quadratic_twist(E, -1)
    sd = sturm_data(E, T)
    t1, t2 = TraceTable(E), TraceTable(T)
    expected = tuple(
        l for l in sorted(set(t1.local) & set(t2.local)) if {t1.kind(l), t2.kind(l)} == {"split", "nonsplit"}
    )
    assert sd.S == expected
    assert sd.M % math.prod(expected) == 0


def test_full_antisymplectic_congruence(curves):
    rep = check_congruence(curves["E1p"], curves["E2p"], 17, 15680)
    assert rep.status == "full-verified" and rep.failure is None
    assert rep.rules["product"] >= 1
    # the product rule at l = 13: (-3)(1) = -3 = 14 = 13 + 1 mod 17
    t1, t2 = TraceTable(curves["E1p"]), TraceTable(curves["E2p"])
    assert (t1.ap(13), t2.ap(13)) == (-3, 1)
    assert (t1.ap(13) * t2.ap(13) - 14) % 17 == 0


def test_scaled_symplectic_congruence(curves):
    rep = check_congruence(curves["E1"], curves["E2"], 17, 20000)
    assert rep.status == "verified-to-bound" and rep.failure is None
    t1, t2 = TraceTable(curves["E1"]), TraceTable(curves["E2"])
    assert (t1.ap(11), t2.ap(11)) == (-5, 1)
    assert (t1.ap(11) * t2.ap(11) - 12) % 17 == 0


def test_twist_fails_with_witness(curves):
    E1 = curves["E1"]
    rep = check_congruence(E1, quadratic_twist(E1, -1), 17, 100)
    assert rep.status == "failed"
    assert rep.failure["prime"] == 7
    assert (rep.failure["a"], rep.failure["a_prime"]) == (-1, 1)


@pytest.mark.parametrize("name", ["E1", "E2", "E1p", "E2p"])
@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_reflexive(curves, name, p):
    rep = check_congruence(curves[name], curves[name], p, 500)
    assert rep.status in ("verified-to-bound", "full-verified")


@pytest.mark.parametrize("pair", list(data.PAIRS))
def test_symmetric_in_the_curves(curves, pair):
    a, b = (curves[n] for n in data.PAIRS[pair])
    r1, r2 = check_congruence(a, b, 17, 3000), check_congruence(b, a, 17, 3000)
    assert (r1.status, r1.primes_checked, r1.rules) == (r2.status, r2.primes_checked, r2.rules)
    bad = quadratic_twist(b, 2)
    f1 = check_congruence(a, bad, 17, 3000).failure
    f2 = check_congruence(bad, a, 17, 3000).failure
    assert f1["prime"] == f2["prime"] and (f1["a"], f1["a_prime"]) == (f2["a_prime"], f2["a"])


def test_cap_above_bound_is_clamped(curves):
    rep = check_congruence(curves["E1p"], curves["E2p"], 17, 10**6)
    assert rep.clamped and rep.cap == 15680 and rep.warnings
    assert rep.status == "full-verified"


def test_parallel_matches_serial(curves):
    a, b = curves["E1"], curves["E2"]
    r1 = check_congruence(a, b, 17, 30000, workers=1, chunk=7000)
    r2 = check_congruence(a, b, 17, 30000, workers=2, chunk=7000)
    assert r1.to_dict() == r2.to_dict()


def test_exceptional_j_flag(curves):
    for j in EXCEPTIONAL_J:
        E = _curve_with_j(j)
        assert E.j_invariant == j
        rep = check_congruence(E, E, 17, 50)
        assert rep.exceptional_j
    assert not check_congruence(curves["E1p"], curves["E2p"], 17, 50).exceptional_j


@pytest.mark.parametrize("name", ["E1", "E2", "E1p", "E2p"])
def test_printed_traces_below_50(curves, name):
    t = TraceTable(curves[name])
    assert {p: t.ap(p) for p in data.TRACE_PRIMES} == dict(zip(data.TRACE_PRIMES, data.TRACES[name]))


def test_symplectic_verdicts(curves):
    v = symplectic_type(curves["E1"], curves["E2"], 17)
    assert v.verdict == "symplectic" and v.witness == 2 and v.residue == 16
    assert 3 * pow(14, -1, 17) % 17 == 16
    assert [w["prime"] for w in v.witnesses] == [2, 5, 13, 59]
    assert all(w["square"] for w in v.witnesses)
    v = symplectic_type(curves["E1p"], curves["E2p"], 17)
    assert v.verdict == "anti-symplectic" and v.witness == 3 and v.residue == 11
    assert [w["prime"] for w in v.witnesses] == [3]


def test_symplectic_indeterminate():
    # y^2 = x^3 - x (conductor 32) and y^2 = x^3 + 1 (conductor 36) are additive everywhere bad
    a, b = EllipticCurveQ([0, 0, 0, -1, 0]), EllipticCurveQ([0, 0, 0, 0, 1])
    assert symplectic_type(a, b, 17).verdict == "indeterminate"


def test_symplectic_inconsistent(curves):
    # at p = 5 the valuation ratios of (E1, E2) are 3/14 = 2 at l = 2 (non-square)
    # and 1/1 at l = 13 (square): not 5-congruent
    with pytest.raises(InconsistentWitnesses):
        symplectic_type(curves["E1"], curves["E2"], 5)
