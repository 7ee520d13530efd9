import json

import pytest
from _support import KRONECKER_B, lp
from hypothesis import given
from hypothesis import strategies as st

from qtri.qlaurent import ONE, LaurentPoly, qbinom
from qtri.qtorus import (
    SkewForm,
    TorusElem,
    coeff_at,
    from_json,
    is_bar_invariant,
    lambda_eval,
    normalizing_power,
    ordered_product,
    support,
    to_json,
    torus_bar,
    torus_mul,
    torus_pow,
    torus_scale,
)
from qtri.seedkit import principal_seed
from qtri.tribasis import x_prime

LAM = principal_seed(KRONECKER_B).lam


def mono(e, c=ONE):
    return TorusElem.monomial(LAM, e, c)


exps = st.tuples(*[st.integers(-3, 3)] * 4)
elems = st.dictionaries(
    exps, st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=3).map(LaurentPoly), max_size=3
).map(lambda d: TorusElem(LAM, d))


def test_lambda_eval_examples():
    assert lambda_eval(LAM, (0, 0, 1, 0), (1, 0, 0, 0)) == 1
    assert lambda_eval(LAM, (1, 0, 0, 0), (0, 0, 1, 0)) == -1
    with pytest.raises(ValueError):
        lambda_eval(LAM, (1, 0), (0, 1))


def test_monomial_product():
    assert mono((0, 0, 1, 0)) * mono((1, 0, 0, 0)) == mono((1, 0, 1, 0), lp({1: 1}))


def test_skew_form_validation():
    with pytest.raises(ValueError):
        SkewForm([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SkewForm([[0, 1]])


@given(elems, elems, elems)
def test_associative_and_distributive(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(elems, elems)
def test_bar_reverses_products(f, g):
    assert torus_bar(f * g) == torus_bar(g) * torus_bar(f)
    assert torus_bar(torus_bar(f)) == f


@given(exps, exps, st.integers(0, 6))
def test_quasi_commuting_binomial(e, f, m):
    if e == f:
        return
    lam = lambda_eval(LAM, e, f)
    lhs = torus_pow(mono(e) + mono(f), m)
    rhs = TorusElem(LAM)
    for j in range(m + 1):
        c = {}
        for d, x in qbinom(m, j).items():
            c[d * lam] = c.get(d * lam, 0) + x
        rhs = rhs + mono(tuple(j * x + (m - j) * y for x, y in zip(e, f)), LaurentPoly(c))
    assert lhs == rhs


def test_square_of_mutated_variable():
    s = principal_seed(KRONECKER_B)
    sq = torus_pow(x_prime(s, 1), 2)
    assert coeff_at(sq, (3, -2, 0, 1)) == lp({1: 1, -1: 1})
    assert len(sq) == 3


def test_mismatched_forms_rejected():
    other = principal_seed([[0, 1], [-1, 0]]).lam
    with pytest.raises(ValueError):
        mono((0, 0, 0, 0)) + TorusElem.one(other)
    with pytest.raises(ValueError):
        mono((0, 0, 0, 0)) * TorusElem.one(other)


def test_exponent_length_checked():
    with pytest.raises(ValueError):
        TorusElem(LAM, {(1, 0): ONE})


def test_scale_and_support():
    f = mono((1, 0, 0, 0)) + mono((0, 1, 0, 0), lp({2: 1}))
    assert support(torus_scale(f, 3)) == {(1, 0, 0, 0), (0, 1, 0, 0)}
    assert coeff_at(torus_scale(f, 3), (0, 1, 0, 0)) == lp({5: 1})
    assert coeff_at(f, (9, 9, 9, 9)) == LaurentPoly()


def test_normalizing_power_makes_bar_invariant():
    fs = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 1)]
    k = normalizing_power(LAM, fs)
    prod = torus_scale(ordered_product(LAM, [mono(f) for f in fs]), k)
    assert prod == mono((1, 1, 1, 1))
    assert is_bar_invariant(prod)


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        torus_pow(mono((1, 0, 0, 0)), -1)


@given(elems)
def test_json_round_trip(f):
    assert from_json(LAM, json.loads(json.dumps(to_json(f)))) == f


def test_mul_wrapper():
    a, b = mono((1, 0, 0, 0)), mono((0, 0, 1, 0))
    assert torus_mul(a, b) == a * b
    assert torus_mul(a, b) != torus_mul(b, a)
