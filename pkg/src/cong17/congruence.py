"""Verifying that two elliptic curves over Q have isomorphic mod-p representations.

Two tests are implemented.  The trace test compares a_l(E) and a_l(E') modulo
p for every prime l below the Sturm bound mu(M)/6 (using the product rule
a_l a'_l = l + 1 at primes dividing exactly one conductor once).  The
symplectic test decides whether the congruence respects the Weil pairing from
the discriminant valuations at a prime of multiplicative reduction for both
curves.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .arith.ntheory import factor, legendre, primes_between
from .elliptic import EllipticCurveQ, TraceTable

DEFAULT_CAP = 10**5

# j-invariants of the rational curves with a rational 17-isogeny
EXCEPTIONAL_J = (mpq(-(17**2) * 101**3, 2), mpq(-17 * 373**3, 2**17))


class InconsistentWitnesses(ArithmeticError):
    """Different primes give different symplectic verdicts: the curves are not p-congruent."""


@dataclass(frozen=True)
class SturmData:
    S: tuple[int, ...]
    M: int
    mu: int
    bound: int

    @property
    def bound_is_exact(self) -> bool:
        return self.mu % 6 == 0


@dataclass
class CongruenceReport:
    status: str  # verified-to-bound | full-verified | failed
    p: int
    cap: int
    bound: int
    primes_checked: int
    rules: dict = field(default_factory=dict)
    failure: dict | None = None
    clamped: bool = False
    exceptional_j: bool = False
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SymplecticVerdict:
    verdict: str  # symplectic | anti-symplectic | indeterminate
    p: int
    witness: int | None
    residue: int | None
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def mu(M: int) -> int:
    """Index of Gamma_0(M) in SL_2(Z)."""
    out = M
    for l in factor(M):
        out = out // l * (l + 1)
    return out


def sturm_data(E: EllipticCurveQ, E2: EllipticCurveQ) -> SturmData:
    t1, t2 = TraceTable(E), TraceTable(E2)
    N1, N2 = E.conductor(), E2.conductor()
    S = []
    for l in sorted(set(t1.local) & set(t2.local)):
        k = {t1.kind(l), t2.kind(l)}
        if k == {"split", "nonsplit"}:
            S.append(l)
    M = math.lcm(N1, N2) * math.prod(S)
    m = mu(M)
    return SturmData(tuple(S), M, m, m // 6)


def _check_range(args) -> tuple[int, dict, dict | None]:
    a1, a2, n1, n2, p, lo, hi = args
    t1, t2 = TraceTable(EllipticCurveQ(a1)), TraceTable(EllipticCurveQ(a2))
    rules = {"congruence": 0, "product": 0, "skipped": 0}
    checked = 0
    for l in primes_between(lo, hi):
        v = _v(n1 * n2, l)
        if v >= 2:
            rules["skipped"] += 1
            continue
        x, y = t1.ap(l), t2.ap(l)
        checked += 1
        if v == 0:
            rules["congruence"] += 1
            if (x - y) % p:
                return checked, rules, {"prime": l, "a": x, "a_prime": y, "rule": "congruence"}
        else:
            rules["product"] += 1
            if (x * y - l - 1) % p:
                return checked, rules, {"prime": l, "a": x, "a_prime": y, "rule": "product"}
    return checked, rules, None


def _v(n: int, l: int) -> int:
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def check_congruence(
    E: EllipticCurveQ,
    E2: EllipticCurveQ,
    p: int,
    cap: int | None = None,
    *,
    full: bool = False,
    workers: int = 1,
    chunk: int = 20000,
) -> CongruenceReport:
    """Compare traces of Frobenius mod p at all primes below min(cap, Sturm bound)."""
    E, E2 = E.minimal_model(), E2.minimal_model()
    sd = sturm_data(E, E2)
    warnings = []
    clamped = False
    if full:
        cap = sd.bound
    elif cap is None:
        cap = min(sd.bound, DEFAULT_CAP)
    if cap > sd.bound:
        warnings.append(f"cap {cap} exceeds the Sturm bound {sd.bound}; clamped")
        cap = sd.bound
        clamped = True
    exceptional = any(C.j_invariant in EXCEPTIONAL_J for C in (E, E2))
    if exceptional:
        warnings.append("a curve has a rational 17-isogeny; equal semisimplifications only")
    # primes l < mu/6; when mu/6 is not an integer this includes l = floor(mu/6)
    hi = cap + 1 if (cap == sd.bound and not sd.bound_is_exact) else cap
    n1, n2 = E.conductor(), E2.conductor()
    tasks = [(E.a, E2.a, n1, n2, p, lo, min(lo + chunk, hi)) for lo in range(2, hi, chunk)]
    totals = {"congruence": 0, "product": 0, "skipped": 0}
    checked = 0
    failure = None
    if workers <= 1 or len(tasks) <= 1:
        results = map(_check_range, tasks)
        for c, r, f in results:
            checked += c
            for k in totals:
                totals[k] += r[k]
            if f is not None:
                failure = f
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_check_range, t) for t in tasks]
            for fut in futures:  # in prime order, so the first failure is the smallest
                c, r, f = fut.result()
                checked += c
                for k in totals:
                    totals[k] += r[k]
                if f is not None:
                    failure = f
                    for other in futures:
                        other.cancel()
                    break
    if failure is not None:
        status = "failed"
    elif cap == sd.bound:
        status = "full-verified"
    else:
        status = "verified-to-bound"
    return CongruenceReport(
        status=status,
        p=p,
        cap=cap,
        bound=sd.bound,
        primes_checked=checked,
        rules=totals,
        failure=failure,
        clamped=clamped,
        exceptional_j=exceptional,
        warnings=warnings,
    )


def symplectic_type(E: EllipticCurveQ, E2: EllipticCurveQ, p: int) -> SymplecticVerdict:
    """Symplectic type of an assumed p-congruence, from multiplicative primes.

    At a prime l != p where both curves are multiplicative and p does not
    divide v_l(disc), the congruence is symplectic iff v_l(disc)/v_l(disc')
    is a square mod p.
    """
    E, E2 = E.minimal_model(), E2.minimal_model()
    t1, t2 = TraceTable(E), TraceTable(E2)
    witnesses = []
    for l in sorted(set(t1.local) & set(t2.local)):
        if l == p:
            continue
        d1, d2 = t1.local[l], t2.local[l]
        if not (d1.multiplicative and d2.multiplicative):
            continue
        v1, v2 = d1.disc_valuation, d2.disc_valuation
        if v1 % p == 0:
            continue
        if v2 % p == 0:
            raise InconsistentWitnesses(
                f"v_{l}(disc) = {v1} is prime to {p} but v_{l}(disc') = {v2} is not"
            )
        r = v1 * pow(v2, -1, p) % p
        witnesses.append({"prime": l, "v": v1, "v_prime": v2, "residue": r, "square": legendre(r, p) == 1})
    if not witnesses:
        return SymplecticVerdict("indeterminate", p, None, None, [])
    kinds = {w["square"] for w in witnesses}
    if len(kinds) > 1:
        raise InconsistentWitnesses(f"witnesses disagree: {witnesses}")
    w0 = witnesses[0]
    verdict = "symplectic" if w0["square"] else "anti-symplectic"
    return SymplecticVerdict(verdict, p, w0["prime"], w0["residue"], witnesses)


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)
