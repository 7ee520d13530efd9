"""The based quantum torus with X^e X^f = v^{Λ(e,f)} X^{e+f}.

A :class:`TorusElem` is a finite sum of monomials X^e with Laurent polynomial
coefficients.  Every element carries its skew form; forms are compared before
elements are combined.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .qlaurent import ONE, LaurentPoly, bar_poly

ExpVec = tuple  # tuple[int, ...] of length 2n


class SkewForm:
    """An integer skew-symmetric matrix, shared by handle between elements."""

    __slots__ = ("rows", "dim", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("skew form must be square")
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")
        self.rows = rows
        self.dim = m
        self._hash = hash(rows)

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SkewForm({[list(r) for r in self.rows]})"

    def __call__(self, e: Sequence[int], f: Sequence[int]) -> int:
        return lambda_eval(self, e, f)

    def row_image(self, e: Sequence[int]) -> tuple:
        """e^T Λ as a vector, so that Λ(e, f) = dot(row_image(e), f)."""
        out = [0] * self.dim
        for i, x in enumerate(e):
            if x:
                r = self.rows[i]
                for j in range(self.dim):
                    out[j] += x * r[j]
        return tuple(out)


def lambda_eval(lam: SkewForm, e: Sequence[int], f: Sequence[int]) -> int:
    """e^T Λ f."""
    if len(e) != lam.dim or len(f) != lam.dim:
        raise ValueError(f"expected vectors of length {lam.dim}, got {len(e)} and {len(f)}")
    total = 0
    for i, x in enumerate(e):
        if x:
            r = lam.rows[i]
            total += x * sum(r[j] * y for j, y in enumerate(f) if y)
    return total


def _vadd(e, f):
    return tuple(x + y for x, y in zip(e, f))


class TorusElem:
    """An element of the quantum torus attached to a skew form."""

    __slots__ = ("lam", "_terms")

    def __init__(self, lam: SkewForm, terms: Mapping[Sequence[int], LaurentPoly] | None = None):
        self.lam = lam
        t: dict[tuple, LaurentPoly] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != lam.dim:
                    raise ValueError(f"exponent {e} has wrong length for a {lam.dim}-dim torus")
                if c:
                    t[e] = t[e] + c if e in t else c
                    if not t[e]:
                        del t[e]
        self._terms = t

    @classmethod
    def _raw(cls, lam, terms):
        x = cls.__new__(cls)
        x.lam = lam
        x._terms = terms
        return x

    @classmethod
    def monomial(cls, lam: SkewForm, e: Sequence[int], coeff: LaurentPoly = ONE) -> TorusElem:
        return cls(lam, {tuple(e): coeff})

    @classmethod
    def one(cls, lam: SkewForm) -> TorusElem:
        return cls._raw(lam, {(0,) * lam.dim: ONE})

    @classmethod
    def zero(cls, lam: SkewForm) -> TorusElem:
        return cls._raw(lam, {})

    # access ---------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        """Terms in lexicographic exponent order."""
        return sorted(self._terms.items())

    def coeff_at(self, e: Sequence[int]) -> LaurentPoly:
        return self._terms.get(tuple(e), LaurentPoly())

    def support(self) -> set:
        return set(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.lam == other.lam and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*X^{list(e)}" for e, c in self.items())

    def _check(self, other):
        if not isinstance(other, TorusElem):
            raise TypeError(f"cannot combine TorusElem with {type(other).__name__}")
        if self.lam is not other.lam and self.lam != other.lam:
            raise ValueError("torus elements live over different skew forms")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            if e in t:
                s = t[e] + c
                if s:
                    t[e] = s
                else:
                    del t[e]
            else:
                t[e] = c
        return TorusElem._raw(self.lam, t)

    def __neg__(self):
        return TorusElem._raw(self.lam, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scale_by(other)
        self._check(other)
        lam = self.lam
        acc: dict[tuple, dict[int, int]] = {}
        right = list(other._terms.items())
        for e, c in self._terms.items():
            row = lam.row_image(e)
            for f, d in right:
                k = sum(r * y for r, y in zip(row, f) if y)
                g = _vadd(e, f)
                bucket = acc.setdefault(g, {})
                for d1, x1 in c.items():
                    for d2, x2 in d.items():
                        dd = d1 + d2 + k
                        bucket[dd] = bucket.get(dd, 0) + x1 * x2
        out = {}
        for g, bucket in acc.items():
            p = LaurentPoly._raw({dd: x for dd, x in bucket.items() if x})
            if p:
                out[g] = p
        return TorusElem._raw(lam, out)

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scale_by(other)
        return NotImplemented

    def scale_by(self, p) -> TorusElem:
        """Multiply every coefficient by the central scalar p."""
        if isinstance(p, int):
            p = LaurentPoly.const(p)
        if not p:
            return TorusElem.zero(self.lam)
        return TorusElem._raw(self.lam, {e: c * p for e, c in self._terms.items()})

    def __pow__(self, m: int):
        return torus_pow(self, m)


def torus_add(f: TorusElem, g: TorusElem) -> TorusElem:
    return f + g


def torus_mul(f: TorusElem, g: TorusElem) -> TorusElem:
    return f * g


def torus_scale(f: TorusElem, k: int) -> TorusElem:
    """Multiply by v^k."""
    return TorusElem._raw(f.lam, {e: c.shift(k) for e, c in f._terms.items()})


def torus_pow(f: TorusElem, m: int) -> TorusElem:
    if m < 0:
        raise ValueError("torus_pow takes a nonnegative exponent")
    out = TorusElem.one(f.lam)
    for _ in range(m):
        out = out * f
    return out


def torus_bar(f: TorusElem) -> TorusElem:
    """The bar involution: v -> v^-1 on coefficients, X^e fixed."""
    return TorusElem._raw(f.lam, {e: bar_poly(c) for e, c in f._terms.items()})


def is_bar_invariant(f: TorusElem) -> bool:
    return all(bar_poly(c) == c for c in f._terms.values())


def coeff_at(f: TorusElem, e: Sequence[int]) -> LaurentPoly:
    return f.coeff_at(e)


def support(f: TorusElem) -> set:
    return f.support()


def ordered_product(lam: SkewForm, factors: Iterable[TorusElem]) -> TorusElem:
    out = TorusElem.one(lam)
    for x in factors:
        out = out * x
    return out


def normalizing_power(lam: SkewForm, exps: Sequence[Sequence[int]]) -> int:
    """The k making v^k X^{f_1} X^{f_2} ... X^{f_r} bar-invariant.

    Since X^{f_1} ... X^{f_r} = v^{Σ_{i<j} Λ(f_i, f_j)} X^{Σ f}, k is minus that sum.
    """
    total = 0
    acc = [0] * lam.dim
    for f in exps:
        # Λ(acc, f) with acc the sum of earlier factors
        total += lambda_eval(lam, acc, f)
        acc = [x + y for x, y in zip(acc, f)]
    return -total


def to_json(f: TorusElem) -> list:
    return [{"exp": list(e), "coeff": c.to_json()} for e, c in f.items()]


def from_json(lam: SkewForm, obj: list) -> TorusElem:
    return TorusElem(lam, {tuple(t["exp"]): LaurentPoly.from_json(t["coeff"]) for t in obj})
