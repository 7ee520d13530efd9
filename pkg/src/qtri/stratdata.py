"""Dimension-vector combinatorics of graded quiver varieties.

Everything here is closed-form: the varieties themselves never appear, only
their nonemptiness conditions, dimensions, Poincaré polynomials and the
generating series χ(M(w)) in the quantum torus.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .qlaurent import ONE, LaurentPoly, qbinom
from .qtorus import TorusElem
from .seedkit import BipartiteQuiver, Seed, WVector, phi, w_of_a


def _source_bound(q: BipartiteQuiver, beta: int, v: Sequence[int], w: WVector) -> int:
    return w.wp[beta] + sum(c * v[a] for a, c in q.out_arrows(beta))


def is_nonempty_F(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> bool:
    if any(x < 0 for x in v):
        return False
    for a in q.sinks:
        if v[a] > w.w[a]:
            return False
    for b in q.sources:
        if v[b] > _source_bound(q, b, v, w):
            return False
    return True


def is_l_dominant(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> bool:
    """w - C_q v >= 0."""
    if any(x < 0 for x in v):
        return False
    for i in range(q.n):
        if w.w[i] < v[i]:
            return False
        if w.wp[i] < v[i] - sum(c * v[j] for j, c in q.neighbours(i)):
            return False
    return True


def _enumerate_sinks_then_sources(q: BipartiteQuiver, sink_bound, source_bound) -> Iterator[tuple]:
    # sinks are bounded outright; each source bound depends on the sink values
    sinks = sorted(q.sinks)
    sources = sorted(q.sources)
    for sv in itertools.product(*(range(sink_bound(a) + 1) for a in sinks)):
        v = [0] * q.n
        for a, x in zip(sinks, sv):
            v[a] = x
        ranges = [range(source_bound(b, v) + 1) for b in sources]
        for bv in itertools.product(*ranges):
            for b, x in zip(sources, bv):
                v[b] = x
            yield tuple(v)


def dom_set(q: BipartiteQuiver, w: WVector) -> list:
    """Dom(w), sorted lexicographically."""

    def src(b, v):
        return min(w.w[b], _source_bound(q, b, v, w))

    out = [v for v in _enumerate_sinks_then_sources(q, lambda a: w.w[a], src) if is_l_dominant(q, v, w)]
    return sorted(out)


def vbar(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> tuple:
    """The componentwise-largest l-dominant vector below v."""
    m = [min(v[i], w.w[i]) for i in range(q.n)]
    return tuple(
        min(v[i], w.w[i], w.wp[i] + sum(c * m[j] for j, c in q.neighbours(i))) for i in range(q.n)
    )


def _require_nonempty(q, v, w):
    if not is_nonempty_F(q, v, w):
        raise ValueError(f"F_(v,w) is empty for v={tuple(v)}, w={w.pairs()}")


def _arrow_term(q: BipartiteQuiver, v: Sequence[int]) -> int:
    return sum(c * v[b] * v[a] for b, a, c in q.arrows)


def dim_F(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> int:
    _require_nonempty(q, v, w)
    return (
        sum(w.w[a] * v[a] for a in q.sinks)
        + sum(w.wp[b] * v[b] for b in q.sources)
        - sum(x * x for x in v)
        + _arrow_term(q, v)
    )


def dim_Ftilde(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> int:
    return dim_F(q, v, w) + sum(v[a] * w.wp[a] for a in q.sinks) + sum(v[b] * w.w[b] for b in q.sources)


def _grassmann_product(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> LaurentPoly:
    out = ONE
    for b in sorted(q.sources):
        out = out * qbinom(_source_bound(q, b, v, w), v[b])
    for a in sorted(q.sinks):
        out = out * qbinom(w.w[a], v[a])
    return out


def poincare_F(q: BipartiteQuiver, v: Sequence[int], w: WVector) -> LaurentPoly:
    """Σ dim H^i(F_{v,w}) v^i, as an iterated Grassmannian bundle."""
    return _grassmann_product(q, v, w).shift(dim_F(q, v, w))


def nonempty_vs(q: BipartiteQuiver, w: WVector) -> list:
    """All v with F_{v,w} nonempty (finite), sorted."""
    return sorted(
        _enumerate_sinks_then_sources(q, lambda a: w.w[a], lambda b, v: _source_bound(q, b, v, w))
    )


def _btilde_v(s: Seed, v: Sequence[int]) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(s.n)) for row in s.btilde)


def chi_M(q: BipartiteQuiver, s: Seed, w: WVector) -> TorusElem:
    base = phi(q, w)
    terms = {}
    for v in nonempty_vs(q, w):
        c = _grassmann_product(q, v, w).shift(dim_F(q, v, w) - dim_Ftilde(q, v, w))
        e = tuple(x + y for x, y in zip(base, _btilde_v(s, v)))
        if e in terms:
            raise AssertionError(f"repeated exponent {e} in chi_M")
        terms[e] = c
    return TorusElem(s.lam, terms)


def f_bound(q: BipartiteQuiver, a: Sequence[int], v: Sequence[int]) -> int:
    """f(v) = -Σ_i (a_i + v_i) v_i + Σ_h v_{s(h)} v_{t(h)}."""
    return -sum((a[i] + v[i]) * v[i] for i in range(q.n)) + _arrow_term(q, v)


def support_region(q: BipartiteQuiver, a: Sequence[int]) -> list:
    """{v >= 0 : F_{v, w(a)} nonempty}."""
    return nonempty_vs(q, w_of_a(q, a))


def support_rows(q: BipartiteQuiver, a: Sequence[int], support: set | None = None, margin: int = 1) -> list:
    """Rows (v, f(v), in_region, in_support) over the region's bounding box plus a margin."""
    region = support_region(q, a)
    rset = set(region)
    hi = [max(v[i] for v in region) + margin for i in range(q.n)]
    rows = []
    for v in itertools.product(*(range(h + 1) for h in hi)):
        rows.append((v, f_bound(q, a, v), v in rset, None if support is None else v in support))
    return rows
