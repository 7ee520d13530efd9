"""Laurent polynomials in one variable ``v`` with integer coefficients.

Elements of Z[v, v^-1] are stored sparsely as ``{degree: coefficient}`` with
no zero entries, so structural equality is polynomial equality.  Python ints
give arbitrary precision for free.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping


class LaurentPoly:
    """An immutable element of Z[v, v^-1]."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for d, x in coeffs.items():
                if x:
                    c[int(d)] = int(x)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> LaurentPoly:
        # trusted constructor: c already canonical
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> LaurentPoly:
        return cls._raw({degree: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls.monomial(0, c)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, d: int) -> int:
        return self._c.get(d, 0)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        c = dict(self._c)
        for d, x in other._c.items():
            y = c.get(d, 0) + x
            if y:
                c[d] = y
            else:
                c.pop(d, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({d: -x for d, x in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({d: x * other for d, x in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._c) * len(other._c) > _KRONECKER_MIN:
            return _kronecker_mul(self._c, other._c)
        c: dict[int, int] = {}
        for d1, x1 in self._c.items():
            for d2, x2 in other._c.items():
                d = d1 + d2
                c[d] = c.get(d, 0) + x1 * x2
        return LaurentPoly._raw({d: x for d, x in c.items() if x})

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = ONE
        for _ in range(m):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({d + k: x for d, x in self._c.items()})

    def evaluate(self, x=1):
        if x == 1:
            return sum(self._c.values())
        return sum(c * x**d for d, c in self._c.items())

    # display --------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"

    def to_str(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d in sorted(self._c, reverse=True):
            x = self._c[d]
            sign = "-" if x < 0 else "+"
            ax = abs(x)
            if d == 0:
                body = str(ax)
            else:
                mono = "v" if d == 1 else f"v^{d}"
                body = mono if ax == 1 else f"{ax}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = to_str

    # JSON -----------------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {str(d): str(self._c[d]) for d in sorted(self._c)}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> LaurentPoly:
        return cls({int(d): int(x) for d, x in obj.items()})


_KRONECKER_MIN = 64


def _kronecker_mul(a: dict, b: dict) -> LaurentPoly:
    # pack into big ints at 2^bits, multiply once, unpack signed digits
    alo, blo = min(a), min(b)
    bound = min(len(a), len(b)) * max(map(abs, a.values())) * max(map(abs, b.values()))
    bits = bound.bit_length() + 2
    x = sum(c << (bits * (d - alo)) for d, c in a.items())
    y = sum(c << (bits * (d - blo)) for d, c in b.items())
    z = x * y
    neg = z < 0
    if neg:
        z = -z
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = {}
    d = alo + blo
    while z:
        r = z & mask
        z >>= bits
        if r >= half:
            r -= 1 << bits
            z += 1
        if r:
            out[d] = -r if neg else r
        d += 1
    return LaurentPoly._raw(out)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({1: 1})


def poly_arith(p: LaurentPoly, q: LaurentPoly | None, op: str) -> LaurentPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown op {op!r}")


def bar_poly(p: LaurentPoly) -> LaurentPoly:
    """The substitution v -> v^-1."""
    return LaurentPoly._raw({-d: x for d, x in p.items()})


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """[n] = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n < 0:
        raise ValueError("qint takes a nonnegative integer")
    return LaurentPoly._raw({d: 1 for d in range(1 - n, n, 2)})


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Balanced Gaussian binomial, built from the q-Pascal rule

        [n, k] = v^-k [n-1, k] + v^(n-k) [n-1, k-1].
    """
    if n < 0:
        raise ValueError("qbinom needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinom(n - 1, k).shift(-k) + qbinom(n - 1, k - 1).shift(n - k)


def qfactorial(n: int) -> LaurentPoly:
    out = ONE
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


def exact_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[v^±]; raises ArithmeticError if q does not divide p."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    qtop, qlow = max(q._c), min(q._c)
    qlead = q._c[qtop]
    rem = dict(p._c)
    plow = min(rem) if rem else 0
    quo: dict[int, int] = {}
    while rem:
        d = max(rem)
        s = d - qtop
        if s + qlow < plow or rem[d] % qlead:
            raise ArithmeticError(f"{q} does not divide {p}")
        t = rem[d] // qlead
        quo[s] = t
        for e, y in q._c.items():
            z = rem.get(s + e, 0) - t * y
            if z:
                rem[s + e] = z
            else:
                rem.pop(s + e, None)
    return LaurentPoly._raw(quo)


def deg(p: LaurentPoly) -> int:
    if not p:
        raise ValueError("degree of the zero polynomial is undefined")
    return max(p._c)


def is_symmetric(p: LaurentPoly) -> bool:
    return bar_poly(p) == p


def is_unimodal(p: LaurentPoly) -> bool:
    """Coefficients weakly increase up to degree 0, then weakly decrease.

    When every exponent has the same parity the walk steps by 2 through that
    parity class; otherwise it steps by 1.  Gaps inside the walk count as zero
    coefficients, so ``v^2 + v^-2`` is not unimodal while ``v^2 + 1 + v^-2`` is.
    """
    if not p:
        return True
    lo, hi = min(p._c), max(p._c)
    step = 2 if len({d % 2 for d in p._c}) == 1 else 1
    # the walk always reaches the centre of its parity class
    c = lo % 2 if step == 2 else 0
    lo, hi = min(lo, -c), max(hi, c)
    seq = [(d, p[d]) for d in range(lo, hi + 1, step)]
    prev = None
    for d, x in seq:
        if d > 0:
            break
        if prev is not None and x < prev:
            return False
        prev = x
    prev = None
    for d, x in seq:
        if d < 0:
            continue
        if prev is not None and x > prev:
            return False
        prev = x
    return True


def positive_part(p: LaurentPoly) -> LaurentPoly:
    """The unique q in vZ[v] with q - bar(q) = p, for bar-anti-invariant p."""
    if bar_poly(p) != -p:
        raise ValueError(f"not bar-anti-invariant: {p}")
    return LaurentPoly._raw({d: x for d, x in p.items() if d > 0})


def in_vZv(p: LaurentPoly) -> bool:
    """True when every exponent is positive (p lies in vZ[v])."""
    return all(d > 0 for d, _ in p.items())


def lsum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    c: dict[int, int] = {}
    for p in polys:
        for d, x in p.items():
            c[d] = c.get(d, 0) + x
    return LaurentPoly._raw({d: x for d, x in c.items() if x})
