"""Exact rational polynomials, Sturm chains and real-root isolation.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable dense
coefficient tuples, lowest degree first.  Nothing in this module uses
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "Poly",
    "Interval",
    "X",
    "ONE",
    "ZERO",
    "as_fraction",
    "poly_gcd",
    "squarefree_part",
    "sturm_chain",
    "count_roots",
    "root_bound",
    "isolate_roots",
    "refine_root",
    "sign",
    "int_sign_at",
    "SturmChain",
]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact code paths.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to Fraction")


def sign(v) -> int:
    return (v > 0) - (v < 0)


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are stripped so
    the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = ONE
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # ring operations

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, s) -> "Poly":
        s = as_fraction(s)
        return Poly(c * s for c in self.coeffs)

    def shift(self) -> "Poly":
        """Multiply by x."""
        if not self.coeffs:
            return ZERO
        return Poly((Fraction(0),) + self.coeffs)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return ZERO, self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            quot[i - dq] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * oc
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def primitive(self) -> tuple[int, ...]:
        """Integer coefficients equal to a positive multiple of ``self``."""
        if not self.coeffs:
            return ()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return tuple(i // g for i in ints)

    # value semantics

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append(("- " if neg else "+ ") + body)
        return " ".join(terms)


ZERO = Poly()
ONE = Poly((1,))
X = Poly((0, 1))


@dataclass(frozen=True)
class Interval:
    """Open rational interval ``(lo, hi)``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def disjoint(self, other: "Interval") -> bool:
        return self.hi <= other.lo or other.hi <= self.lo


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p // g


# Sturm machinery runs on integer-coefficient polynomials: every chain element
# is rescaled by a positive constant, which leaves sign variations unchanged.

def _int_rem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    r = Poly(a) % Poly(b)
    return r.primitive()


def int_sign_at(c: Sequence[int], x: Fraction) -> int:
    """Sign of the integer polynomial ``c`` at the rational ``x``."""
    a, b = x.numerator, x.denominator
    # b**d * p(a/b) by homogeneous Horner; b > 0 so the sign is preserved
    acc = 0
    bp = 1
    for ci in reversed(c):
        acc = acc * a + ci * bp
        bp *= b
    return sign(acc)


class SturmChain:
    """Sturm sequence of the squarefree part of a polynomial."""

    def __init__(self, p: Poly):
        if p.is_zero():
            raise ValueError("Sturm chain of the zero polynomial")
        self.poly = p
        self.squarefree = squarefree_part(p)
        f0 = self.squarefree.primitive()
        chain = [f0]
        if len(f0) > 1:
            chain.append(Poly(f0).derivative().primitive())
            while len(chain[-1]) > 1:
                r = _int_rem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append(tuple(-ci for ci in r))
        self.chain: tuple[tuple[int, ...], ...] = tuple(chain)

    def polys(self) -> list[Poly]:
        return [Poly(c) for c in self.chain]

    def variations_at(self, x) -> int:
        signs = [int_sign_at(c, as_fraction(x)) for c in self.chain]
        return _variations(signs)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for c in self.chain:
            s = sign(c[-1])
            if not positive and (len(c) - 1) % 2:
                s = -s
            signs.append(s)
        return _variations(signs)

    def count(self, lo=None, hi=None) -> int:
        """Distinct real roots in ``(lo, hi)``; ``None`` means infinite."""
        va = self.variations_at_infinity(False) if lo is None else self.variations_at(lo)
        vb = self.variations_at_infinity(True) if hi is None else self.variations_at(hi)
        return va - vb


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for u, v in zip(nz, nz[1:]) if u != v)


def sturm_chain(p: Poly) -> SturmChain:
    return SturmChain(p)


def count_roots(p, iv: Interval | None = None) -> int:
    """Number of distinct real roots of ``p`` in ``iv`` (whole line if None).

    ``p`` may be a :class:`Poly` or a prebuilt :class:`SturmChain`.  Raises
    ``ValueError`` when an endpoint is itself a root.
    """
    chain = p if isinstance(p, SturmChain) else SturmChain(p)
    if iv is None:
        return chain.count()
    for end in (iv.lo, iv.hi):
        if chain.poly(end) == 0:
            raise ValueError(f"interval endpoint {end} is a root")
    return chain.count(iv.lo, iv.hi)


def root_bound(p: Poly) -> int:
    """Integer Cauchy bound: every root satisfies ``|z| < bound``."""
    if p.degree < 1:
        return 1
    lead = abs(p.lead)
    m = max(abs(c) for c in p.coeffs[:-1]) / lead
    return math.ceil(1 + m)


# split points tried in order when the midpoint happens to be a root
_SPLITS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5), Fraction(3, 5))


def _split_point(f: tuple[int, ...], lo: Fraction, hi: Fraction) -> Fraction:
    for t in _SPLITS:
        m = lo + (hi - lo) * t
        if int_sign_at(f, m) != 0:
            return m
    # a squarefree polynomial cannot vanish at all five points of one interval
    # unless it has five roots there; these are handled by the next denominators
    k = 7
    while True:
        m = lo + (hi - lo) * Fraction(k // 2, k)
        if int_sign_at(f, m) != 0:
            return m
        k += 2


def isolate_roots(p: Poly, max_width=1) -> list[Interval]:
    """Sorted disjoint isolating intervals, one per distinct real root.

    Intervals wider than ``max_width`` are bisected further (``None`` keeps the
    raw Sturm bisection output).
    """
    chain = p if isinstance(p, SturmChain) else SturmChain(p)
    f = chain.chain[0]
    if len(f) <= 1:
        return []
    bound = Fraction(root_bound(Poly(f)))
    out: list[Interval] = []
    stack = [(-bound, bound, chain.count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(Interval(lo, hi))
            continue
        m = _split_point(f, lo, hi)
        nl = chain.count(lo, m)
        stack.append((m, hi, n - nl))
        stack.append((lo, m, nl))
    out.sort(key=lambda iv: iv.lo)
    if max_width is not None:
        out = [iv if iv.width <= max_width else refine_root(chain, iv, max_width) for iv in out]
    return out


def refine_root(p: Poly, iv: Interval, width) -> Interval:
    """Bisect an isolating interval down to ``width`` or less.

    Uses endpoint sign changes of the squarefree part, so ``iv`` must
    isolate a single root of ``p``.
    """
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    f = squarefree_part(p).primitive() if isinstance(p, Poly) else p.chain[0]
    lo, hi = iv.lo, iv.hi
    slo = int_sign_at(f, lo)
    if slo == 0 or int_sign_at(f, hi) == 0:
        raise ValueError("interval endpoint is a root")
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = int_sign_at(f, m)
        if sm == 0:
            eps = min(width, hi - lo) / 4
            return Interval(m - eps, m + eps)
        if sm == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)
