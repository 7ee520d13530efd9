"""Acceptance suite: eleven criteria, each at its stated size and tolerance.

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists one
PASS/FAIL line per criterion.  Running this file directly does the same.
"""
import random
import subprocess
import sys
import time
from functools import lru_cache
from math import comb

import pytest
from _support import (
    KRONECKER_B,
    PRINTED_A,
    PRINTED_A_SUPPORT,
    PRINTED_B,
    TRIPLE_B,
    gaussian_by_inversions,
    lp,
    random_bipartite,
    random_skew,
    seed_and_quiver,
    vbar_brute,
)

from qtri.qlaurent import ONE, bar_poly, deg, in_vZv, is_symmetric, is_unimodal, qbinom
from qtri.qtorus import TorusElem, torus_bar
from qtri.seedkit import WVector, bipartite_parts, mutate, principal_seed, w_of_a
from qtri.stratdata import chi_M, dim_F, dim_Ftilde, f_bound, support_region, vbar
from qtri.tribasis import (
    e_star,
    e_star_closed_form,
    e_star_full_reduction,
    e_star_reduce,
    expand_in_std_tprime,
    triangular_basis,
    x_prime,
    xtprime_expansion_check,
)

criterion = pytest.mark.criterion


def _printed_diffs(C, printed):
    got = {e: c for e, c in C.torus_form.items()}
    want = {e: lp(c) for e, c in printed.items()}
    diffs = []
    for e in sorted(set(got) | set(want)):
        if got.get(e) != want.get(e):
            diffs.append(f"X^{e}: computed {got.get(e)}, printed {want.get(e)}")
    return diffs


@criterion(1, "golden rank-2 expansion: 10 printed terms and support, under 10 s")
def test_golden_rank_two():
    s, q = seed_and_quiver(KRONECKER_B)
    t0 = time.perf_counter()
    C = triangular_basis(s, q, (9, -4, 0, 0))
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    assert set(C.ev_table) == PRINTED_A_SUPPORT
    diffs = _printed_diffs(C, PRINTED_A)
    assert not diffs, "; ".join(diffs)


@criterion(2, "golden rank-3 expansion: 20 printed terms and support, under 60 s")
def test_golden_rank_three():
    s, q = seed_and_quiver(TRIPLE_B)
    t0 = time.perf_counter()
    C = triangular_basis(s, q, (4, 3, -3, 0, 0, 0))
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    assert len(C.ev_table) == 20
    assert C.torus_form.support() == set(PRINTED_B)
    diffs = _printed_diffs(C, PRINTED_B)
    assert not diffs, "; ".join(diffs)


@lru_cache(maxsize=None)
def _bounds_sweep():
    rng = random.Random(20240301)
    out = []
    for _ in range(200):
        B = random_bipartite(rng, 4, 3)
        s, q = seed_and_quiver(B)
        a = tuple(rng.randint(-4, 4) for _ in range(s.m))
        out.append((B, a, triangular_basis(s, q, a)))
    return out


@criterion(3, "coefficient bounds on 200 random instances (n<=4, |b|<=3, |a|<=4)")
def test_bounds_sweep():
    failures = []
    for B, a, C in _bounds_sweep():
        q = bipartite_parts(B)
        region = set(support_region(q, a))
        for v, c in C.ev_table.items():
            ok = is_symmetric(c) and is_unimodal(c) and deg(c) <= f_bound(q, a, v) and v in region
            if not ok:
                failures.append((B, a, v, str(c)))
    assert not failures, failures[:5]


@criterion(4, "f(v) = 2d - d~ on every nonempty (v, a) of the bounds sweep")
def test_f_identity():
    checked = 0
    for B, a, _ in _bounds_sweep():
        q = bipartite_parts(B)
        w = w_of_a(q, a)
        for v in support_region(q, a):
            assert f_bound(q, a, v) == 2 * dim_F(q, v, w) - dim_Ftilde(q, v, w), (B, a, v)
            checked += 1
    assert checked >= 200


def _random_w(rng, n, top):
    return WVector.from_pairs([(rng.randint(0, top), rng.randint(0, top)) for _ in range(n)])


@criterion(5, "E* product = closed form = bar(chi_M) on 100 random w (n<=3, entries<=3)")
def test_e_star_keystone():
    rng = random.Random(505)
    for _ in range(100):
        s, q = seed_and_quiver(random_bipartite(rng, 3, 3))
        w = _random_w(rng, s.n, 3)
        prod = e_star(s, q, w)
        assert prod == e_star_closed_form(s, q, w), (s.B, w)
        assert prod == torus_bar(chi_M(q, s, w)), (s.B, w)


@criterion(6, "E* recursion recombines with p >= 1 on 200 reducible w; full reduction unitriangular")
def test_recursion_suite():
    rng = random.Random(606)
    done = 0
    while done < 200:
        s, q = seed_and_quiver(random_bipartite(rng, 3, 3))
        w = _random_w(rng, s.n, 3)
        if all(min(p) == 0 for p in w.pairs()):
            continue
        done += 1
        frozen = tuple(rng.randint(-2, 2) for _ in range(s.n))
        steps = e_star_reduce(s, q, w, frozen)
        assert all(st.power >= 1 for st in steps[1:])
        rhs = TorusElem.zero(s.lam)
        for st in steps:
            rhs = rhs + e_star(s, q, st.w, st.frozen).scale_by(lp({st.power: 1}))
        assert e_star(s, q, w, frozen) == rhs, (s.B, w, frozen)
        red = e_star_full_reduction(s, q, w)
        lead = tuple(y - x for x, y in zip(w.w, w.wp)) + (0,) * s.n
        assert red.get(lead) == ONE
        assert all(in_vZv(c) for b, c in red.items() if b != lead)
        assert expand_in_std_tprime(s, q, e_star(s, q, w)).entries == red


@criterion(7, "vbar formula = brute-force maximum on 500 random (v, w), n<=4, entries<=5")
def test_vbar_oracle():
    rng = random.Random(707)
    for _ in range(500):
        q = bipartite_parts(random_bipartite(rng, 4, 3))
        w = _random_w(rng, q.n, 5)
        v = tuple(rng.randint(0, 5) for _ in range(q.n))
        assert vbar(q, v, w) == vbar_brute(q, v, w), (q, v, w)


@criterion(8, "mutation is involutive and keeps compatibility along 100 sequences of length <= 8")
def test_mutation_suite():
    rng = random.Random(808)
    for _ in range(100):
        s = principal_seed(random_skew(rng, 4, 3))
        assert s.is_compatible()
        for _ in range(rng.randint(1, 8)):
            k = rng.randrange(s.n)
            t = mutate(s, k)
            assert mutate(t, k) == s
            assert t.is_compatible()
            s = t


@criterion(9, "tie-order independence on 50 instances; C at -e_k is the cluster variable X'_k")
def test_uniqueness():
    rng = random.Random(909)
    for _ in range(50):
        B = random_bipartite(rng, 4, 3)
        s, q = seed_and_quiver(B)
        a = tuple(rng.randint(-3, 3) for _ in range(s.m))
        lex = triangular_basis(s, q, a, tie="lex")
        rev = triangular_basis(s, q, a, tie="revlex")
        assert lex.torus_form == rev.torus_form and lex.ev_table == rev.ev_table
        for k in range(s.n):
            minus_ek = tuple(-1 if i == k else 0 for i in range(s.m))
            assert triangular_basis(s, q, minus_ek, index="std").torus_form == x_prime(s, k)


@criterion(10, "X(t')^u expansion on 100 random u for the rank-3 quiver")
def test_xtprime_identity():
    s, q = seed_and_quiver(TRIPLE_B)
    rng = random.Random(1010)
    for _ in range(100):
        u = tuple(rng.randint(0, 3) if i in q.sources else rng.randint(-3, 3) for i in range(s.m))
        assert xtprime_expansion_check(s, q, u), u


@criterion(11, "q-binomials for n <= 12: symmetric, bar-invariant, unimodal, binomial at v=1")
def test_qbinomial_suite():
    for n in range(13):
        for k in range(n + 1):
            p = qbinom(n, k)
            assert is_symmetric(p) and bar_poly(p) == p
            assert is_unimodal(p)
            assert p.evaluate(1) == comb(n, k)
            assert p == gaussian_by_inversions(n, k)


if __name__ == "__main__":
    # a fresh interpreter, so pytest can rewrite asserts in modules imported above
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", __file__]))
