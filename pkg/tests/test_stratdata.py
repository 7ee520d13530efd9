import random
from math import comb

import pytest
from _support import (
    KRONECKER_B,
    PRINTED_A_SUPPORT,
    TRIPLE_B,
    bipartite_matrices,
    grassmannian_poincare,
    lp,
    random_bipartite,
    vbar_brute,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from qtri.qlaurent import ONE, bar_poly
from qtri.qtorus import TorusElem
from qtri.seedkit import WVector, bipartite_parts, principal_seed, w_of_a
from qtri.stratdata import (
    chi_M,
    dim_F,
    dim_Ftilde,
    dom_set,
    f_bound,
    is_l_dominant,
    is_nonempty_F,
    nonempty_vs,
    poincare_F,
    support_region,
    support_rows,
    vbar,
)

Q_A = bipartite_parts(KRONECKER_B)
S_A = principal_seed(KRONECKER_B)
Q_B = bipartite_parts(TRIPLE_B)
W_A = WVector.from_pairs([(9, 0), (4, 0)])


def test_nonempty_examples():
    assert is_nonempty_F(Q_A, (0, 0), W_A)
    assert is_nonempty_F(Q_A, (1, 2), W_A)
    assert not is_nonempty_F(Q_A, (1, 0), W_A)
    assert not is_nonempty_F(Q_A, (0, 5), W_A)
    assert not is_nonempty_F(Q_A, (-1, 0), W_A)


def test_dominance_examples():
    assert is_l_dominant(Q_A, (1, 3), W_A)
    assert is_l_dominant(Q_A, (0, 0), WVector.zero(2))
    assert dom_set(Q_A, WVector.from_pairs([(0, 9), (4, 0)])) == [(0, 0)]


def test_vbar_examples():
    assert vbar(Q_A, (2, 3), WVector.from_pairs([(0, 9), (4, 0)])) == (0, 0)
    assert vbar(Q_A, (2, 3), W_A) == (2, 3)


def test_vbar_against_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        q = bipartite_parts(random_bipartite(rng, 4, 3))
        w = WVector.from_pairs([(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(q.n)])
        v = tuple(rng.randint(0, 5) for _ in range(q.n))
        assert vbar(q, v, w) == vbar_brute(q, v, w)


@settings(max_examples=60)
@given(bipartite_matrices(), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3))
def test_dom_set_fixed_by_vbar(B, pairs):
    q = bipartite_parts(B)
    w = WVector.from_pairs(pairs[: q.n])
    dom = dom_set(q, w)
    assert set(dom) <= set(nonempty_vs(q, w))
    for v in dom:
        assert vbar(q, v, w) == v


def test_dims_examples():
    assert (dim_F(Q_A, (1, 2), W_A), dim_Ftilde(Q_A, (1, 2), W_A)) == (9, 18)
    assert (dim_F(Q_A, (0, 2), W_A), dim_Ftilde(Q_A, (0, 2), W_A)) == (4, 4)
    assert (dim_F(Q_A, (0, 0), W_A), dim_Ftilde(Q_A, (0, 0), W_A)) == (0, 0)
    with pytest.raises(ValueError):
        dim_F(Q_A, (1, 0), W_A)


def test_poincare_matches_schubert_cells():
    # v=(0,2): F is Gr(2, 4)
    assert poincare_F(Q_A, (0, 2), W_A) == grassmannian_poincare(2, 4)
    assert poincare_F(Q_A, (0, 2), W_A) == lp({8: 1, 6: 1, 4: 2, 2: 1, 0: 1})
    assert poincare_F(Q_A, (0, 0), W_A) == ONE


def test_poincare_shape():
    rng = random.Random(9)
    for _ in range(100):
        q = bipartite_parts(random_bipartite(rng, 3, 3))
        w = WVector.from_pairs([(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(q.n)])
        for v in nonempty_vs(q, w):
            p = poincare_F(q, v, w)
            assert all(d % 2 == 0 and d >= 0 for d, _ in p.items())
            assert max(d for d, _ in p.items()) == 2 * dim_F(q, v, w)
            # Poincaré duality for the smooth projective fibre
            assert p.shift(-dim_F(q, v, w)) == bar_poly(p.shift(-dim_F(q, v, w)))


def test_euler_characteristic():
    v = (1, 2)
    assert poincare_F(Q_A, v, W_A).evaluate(1) == comb(0 + 3 * 2, 1) * comb(4, 2)


def test_chi_M_examples():
    assert chi_M(Q_A, S_A, WVector.zero(2)) == TorusElem.one(S_A.lam)
    x = chi_M(Q_A, S_A, WVector.from_pairs([(0, 1), (0, 0)]))
    assert x == TorusElem(S_A.lam, {(-1, 0, 0, 0): ONE, (-1, 3, 1, 0): ONE})
    y = chi_M(Q_A, S_A, WVector.from_pairs([(1, 1), (0, 0)]))
    assert y == TorusElem(S_A.lam, {(0, 0, 0, 0): ONE, (0, 3, 1, 0): lp({-1: 1})})


def test_f_bound_formula():
    a = (9, -4, 0, 0)
    for v1 in range(6):
        for v2 in range(6):
            assert f_bound(Q_A, a, (v1, v2)) == -v1 * v1 + 3 * v1 * v2 - v2 * v2 - 9 * v1 + 4 * v2
    assert f_bound(Q_A, a, (3, 4)) == 0
    assert f_bound(Q_A, a, (0, 2)) == 4
    assert f_bound(Q_A, a, (0, 0)) == 0


def test_support_region_contains_printed_support():
    region = set(support_region(Q_A, (9, -4, 0, 0)))
    assert PRINTED_A_SUPPORT <= region
    assert (1, 0) not in region


def test_f_identity_sweep():
    rng = random.Random(17)
    for _ in range(200):
        q = bipartite_parts(random_bipartite(rng, 4, 3))
        a = tuple(rng.randint(-4, 4) for _ in range(q.n)) + (0,) * q.n
        w = w_of_a(q, a)
        for v in support_region(q, a):
            assert f_bound(q, a, v) == 2 * dim_F(q, v, w) - dim_Ftilde(q, v, w)


def test_support_rows_cover_region_plus_margin():
    a = (9, -4, 0, 0)
    rows = support_rows(Q_A, a, support=PRINTED_A_SUPPORT)
    by_v = {r[0]: r for r in rows}
    assert (5, 5) in by_v and (6, 6) not in by_v
    assert by_v[(3, 4)][1:] == (0, True, True)
    assert by_v[(1, 0)][2] is False
    assert all(r[3] is None for r in support_rows(Q_A, a))
