"""Quantum seeds, mutation and the bipartite quiver attached to B.

Vertices are 0-based here; the CLI speaks 1-based labels.  Throughout, the
quiver is the one whose arrows realise the positive entries of B: there are
``b[i][j]`` arrows ``j -> i`` whenever ``b[i][j] > 0``.  Sources (I1) emit
arrows, sinks (I0) receive them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .qtorus import SkewForm


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _check_skew(B: Sequence[Sequence[int]]) -> tuple:
    B = tuple(tuple(int(x) for x in row) for row in B)
    n = len(B)
    if n == 0:
        raise ValueError("B must be nonempty")
    for i, row in enumerate(B):
        if len(row) != n:
            raise ValueError(f"B must be square; row {i + 1} has length {len(row)}")
    for i in range(n):
        for j in range(n):
            if B[i][j] != -B[j][i]:
                raise ValueError(f"B is not skew-symmetric at ({i + 1}, {j + 1})")
    return B


@dataclass(frozen=True)
class Seed:
    """A quantum seed (Λ, B̃).  ``btilde`` is 2n x n, stored row-major."""

    lam: SkewForm
    btilde: tuple

    @property
    def n(self) -> int:
        return len(self.btilde[0])

    @property
    def m(self) -> int:
        return len(self.btilde)

    @property
    def B(self) -> tuple:
        return self.btilde[: self.n]

    def column(self, k: int) -> tuple:
        return tuple(row[k] for row in self.btilde)

    def compatibility(self) -> list:
        """The n x 2n matrix Λ(b_k, e_j); the principal seed gives [I | 0]."""
        out = []
        for k in range(self.n):
            out.append(list(self.lam.row_image(self.column(k))))
        return out

    def is_compatible(self) -> bool:
        n, m = self.n, self.m
        C = self.compatibility()
        return all(C[k][j] == (1 if j == k else 0) for k in range(n) for j in range(m))

    def to_json(self) -> dict:
        return {"lambda": [list(r) for r in self.lam.rows], "btilde": [list(r) for r in self.btilde]}


def principal_seed(B: Sequence[Sequence[int]]) -> Seed:
    """B̃ = [B; I_n] and Λ = [[0, -I], [I, -B]]."""
    B = _check_skew(B)
    n = len(B)
    lam = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        lam[i][n + i] = -1
        lam[n + i][i] = 1
        for j in range(n):
            lam[n + i][n + j] = -B[i][j]
    bt = [list(r) for r in B] + [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return Seed(SkewForm(lam), tuple(tuple(r) for r in bt))


def mutate(s: Seed, k: int) -> Seed:
    """Seed mutation in direction k (0-based)."""
    n, m = s.n, s.m
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for rank {n}")
    b = s.btilde
    nb = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _pos(b[i][k]) * _pos(b[k][j]) - _pos(-b[i][k]) * _pos(-b[k][j]))
        nb.append(tuple(row))
    # Λ'(e_k, e_j) = Λ(-e_k + [b_k]_+, e_j); other entries unchanged
    bk = [_pos(x) for x in s.column(k)]
    bk[k] -= 1
    rowk = s.lam.row_image(bk)
    lam = [list(r) for r in s.lam.rows]
    for j in range(m):
        if j != k:
            lam[k][j] = rowk[j]
            lam[j][k] = -rowk[j]
    lam[k][k] = 0
    return Seed(SkewForm(lam), tuple(nb))


def mutate_sequence(s: Seed, ks: Iterable[int]) -> Seed:
    for k in ks:
        s = mutate(s, k)
    return s


@dataclass(frozen=True)
class BipartiteQuiver:
    """Sinks I0, sources I1 and arrow classes {(source, sink): multiplicity}."""

    n: int
    sinks: frozenset
    sources: frozenset
    arrows: tuple  # ((beta, alpha, mult), ...) sorted

    def mult(self, beta: int, alpha: int) -> int:
        for b, a, c in self.arrows:
            if b == beta and a == alpha:
                return c
        return 0

    def neighbours(self, i: int) -> list:
        """[(j, multiplicity)] for arrows with endpoint i, either orientation."""
        out = []
        for b, a, c in self.arrows:
            if b == i:
                out.append((a, c))
            elif a == i:
                out.append((b, c))
        return out

    def out_arrows(self, beta: int) -> list:
        return [(a, c) for b, a, c in self.arrows if b == beta]

    def in_arrows(self, alpha: int) -> list:
        return [(b, c) for b, a, c in self.arrows if a == alpha]

    def acyclic_order(self) -> list:
        """Sources in increasing index, then sinks: b_ij <= 0 when i precedes j."""
        return sorted(self.sources) + sorted(self.sinks)


def bipartite_parts(B: Sequence[Sequence[int]]) -> BipartiteQuiver:
    B = _check_skew(B)
    n = len(B)
    sinks, sources = set(), set()
    for i in range(n):
        has_pos = any(x > 0 for x in B[i])
        has_neg = any(x < 0 for x in B[i])
        if has_pos and has_neg:
            raise ValueError(f"B is not bipartite: vertex {i + 1} both emits and receives arrows")
        (sources if has_neg else sinks).add(i)
    arrows = tuple(
        (beta, alpha, B[alpha][beta]) for beta in sorted(sources) for alpha in sorted(sinks) if B[alpha][beta] > 0
    )
    return BipartiteQuiver(n, frozenset(sinks), frozenset(sources), arrows)


@dataclass(frozen=True)
class WVector:
    """Dimension vector w = (w_i, w'_i)_i; ``w`` and ``wp`` hold the two halves."""

    w: tuple
    wp: tuple

    def __post_init__(self):
        if len(self.w) != len(self.wp):
            raise ValueError("w and w' must have equal length")
        if any(x < 0 for x in self.w + self.wp):
            raise ValueError(f"w has a negative entry: {self.pairs()}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> WVector:
        pairs = [tuple(p) for p in pairs]
        return cls(tuple(int(p[0]) for p in pairs), tuple(int(p[1]) for p in pairs))

    @classmethod
    def zero(cls, n: int) -> WVector:
        return cls((0,) * n, (0,) * n)

    def pairs(self) -> list:
        return [(a, b) for a, b in zip(self.w, self.wp)]

    @property
    def n(self) -> int:
        return len(self.w)

    def __add__(self, other: WVector) -> WVector:
        return WVector(
            tuple(x + y for x, y in zip(self.w, other.w)), tuple(x + y for x, y in zip(self.wp, other.wp))
        )


def cq_apply(q: BipartiteQuiver, v: Sequence[int]) -> list:
    """C_q v = (u_i, u'_i)_i with u_i = v_i and u'_i = v_i - Σ_{h: i-j} v_j."""
    out = []
    for i in range(q.n):
        adj = sum(c * v[j] for j, c in q.neighbours(i))
        out.append((v[i], v[i] - adj))
    return out


def phi(q: BipartiteQuiver, w: WVector) -> tuple:
    """Φ(w): w_β - w'_β on sources, w'_α - w_α on sinks, zeros on frozen slots."""
    head = []
    for i in range(q.n):
        if i in q.sources:
            head.append(w.w[i] - w.wp[i])
        else:
            head.append(w.wp[i] - w.w[i])
    return tuple(head) + (0,) * q.n


def w_of_a(q: BipartiteQuiver, a: Sequence[int]) -> WVector:
    """Inverse of Φ on its image with w_i w'_i = 0; reads a[:n] only."""
    w, wp = [], []
    for i in range(q.n):
        x = a[i]
        if i in q.sources:
            w.append(_pos(x))
            wp.append(_pos(-x))
        else:
            w.append(_pos(-x))
            wp.append(_pos(x))
    return WVector(tuple(w), tuple(wp))


def split_w(w: WVector) -> tuple:
    """w = fw + φw with fw_i = fw'_i = min(w_i, w'_i)."""
    f = tuple(min(x, y) for x, y in zip(w.w, w.wp))
    fw = WVector(f, f)
    pw = WVector(tuple(x - y for x, y in zip(w.w, f)), tuple(x - y for x, y in zip(w.wp, f)))
    return fw, pw


def mu_I1(s: Seed, q: BipartiteQuiver) -> Seed:
    """Mutate at every source; sources are pairwise non-adjacent so order is irrelevant."""
    return mutate_sequence(s, sorted(q.sources))


def order_is_acyclic(s: Seed, order: Sequence[int]) -> bool:
    pos = {k: i for i, k in enumerate(order)}
    n = s.n
    if sorted(order) != list(range(n)):
        return False
    return all(s.btilde[i][j] <= 0 for i in range(n) for j in range(n) if pos[i] < pos[j])


def seed_from_json(obj: dict) -> tuple:
    """{"B": [[...]]} -> (principal seed, quiver); rejects non-bipartite B."""
    if "B" not in obj:
        raise ValueError('seed JSON needs a "B" field')
    q = bipartite_parts(obj["B"])
    return principal_seed(obj["B"]), q
