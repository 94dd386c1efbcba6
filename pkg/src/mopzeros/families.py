"""The seven classical families of multiple orthogonal polynomials.

Each family is a frozen dataclass holding rational parameters.  It acts as a
coefficient provider for :mod:`mopzeros.lattice` and additionally knows

* its closed-form nearest-neighbour coefficients (written exactly as
  published, without algebraic simplification),
* an explicit multi-sum for ``P_n`` that does not use the recurrence,
* the normalised power moments of each of its ``r`` weights.

Moments are normalised to total mass one, so Gaussian and negative-binomial
mass factors never leave the rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Sequence

from .exact import ONE, X, Poly, as_fraction
from .lattice import MultiIndex, NNCoefficients, as_index


class InvalidParameters(ValueError):
    """Raised when a family is built from parameters violating its constraints."""

    def __init__(self, family: str, violations: list[str]):
        self.family = family
        self.violations = violations
        super().__init__(f"{family}: " + "; ".join(violations))


class DomainError(ValueError):
    """A multi-index or direction outside where the family's formulas apply."""


# small exact helpers


def pochhammer(y: Poly, m: int) -> Poly:
    """Rising factorial ``(y)_m = y (y+1) ... (y+m-1)`` of a polynomial ``y``."""
    out = ONE
    for i in range(m):
        out = out * (y + Poly.constant(i))
    return out


def rising(y: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out *= y + i
    return out


def falling(y: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out *= y - i
    return out


def gbinom(y: Fraction, k: int) -> Fraction:
    """Generalised binomial coefficient for rational ``y``."""
    return falling(y, k) / math.factorial(k)


@lru_cache(maxsize=None)
def stirling2(k: int, i: int) -> int:
    """Stirling numbers of the second kind by the triangle recurrence."""
    if k == i:
        return 1
    if i == 0 or i > k:
        return 0
    return i * stirling2(k - 1, i) + stirling2(k - 1, i - 1)


def factorial_to_power(fm: Sequence[Fraction]) -> list[Fraction]:
    """Power moments from factorial moments ``E[x(x-1)...(x-i+1)]``."""
    return [sum((stirling2(k, i) * fm[i] for i in range(k + 1)), Fraction(0)) for k in range(len(fm))]


_HERMITE: list[Poly] = [ONE, Poly((0, 2))]


def hermite(m: int) -> Poly:
    """Physicists' Hermite polynomial ``H_m``."""
    while len(_HERMITE) <= m:
        i = len(_HERMITE) - 1
        _HERMITE.append(_HERMITE[i].shift().scale(2) - _HERMITE[i - 1].scale(2 * i))
    return _HERMITE[m]


def _box(n: MultiIndex):
    return itertools.product(*(range(v + 1) for v in n))


def _binoms(n: MultiIndex, k: Sequence[int]) -> int:
    return math.prod(math.comb(nj, kj) for nj, kj in zip(n, k))


def _distinct(vals: Sequence[Fraction]) -> bool:
    return len(set(vals)) == len(vals)


def _noninteger_differences(vals: Sequence[Fraction]) -> bool:
    return all((u - v).denominator != 1 for u, v in itertools.combinations(vals, 2))


def _fracs(vals) -> tuple[Fraction, ...]:
    if isinstance(vals, (str, int, Fraction)):
        vals = [vals]
    return tuple(as_fraction(v) for v in vals)


# MeixnerI formulas are shared with Krawtchouk through the substitution
# beta = -N, c_i = p_i / (p_i - 1).


def meixner1_coefficients(beta: Fraction, c: Sequence[Fraction], n: MultiIndex, k: int) -> NNCoefficients:
    ln = sum(n)
    b = (ln + beta) * c[k - 1] / (1 - c[k - 1]) + sum(Fraction(ni) / (1 - ci) for ni, ci in zip(n, c))
    a = tuple(cj * nj * (beta + ln - 1) / (1 - cj) ** 2 for nj, cj in zip(n, c))
    return NNCoefficients(b, a)


def meixner1_explicit(beta: Fraction, c: Sequence[Fraction], n: MultiIndex) -> Poly:
    ln = sum(n)
    minus_x = Poly((0, -1))
    beta_x = Poly((beta, 1))
    out = Poly()
    for k in _box(n):
        lk = sum(k)
        w = Fraction(_binoms(n, k))
        for nj, kj, cj in zip(n, k, c):
            w *= cj ** (nj - kj) / (cj - 1) ** nj
        if w:
            out = out + (pochhammer(minus_x, lk) * pochhammer(beta_x, ln - lk)).scale(w)
    return out


@dataclass(frozen=True)
class FamilySpec:
    """Base for the family records; subclasses declare their parameter fields."""

    name: ClassVar[str] = ""
    max_length: ClassVar[int | None] = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.type in ("int",):
                continue
            object.__setattr__(self, f.name, _fracs(v) if f.metadata.get("vector") else as_fraction(v))
        bad = self.violations()
        if bad:
            raise InvalidParameters(self.name, bad)

    @property
    def r(self) -> int:
        raise NotImplementedError

    def violations(self) -> list[str]:
        raise NotImplementedError

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def describe(self) -> str:
        parts = []
        for key, v in self.params().items():
            if isinstance(v, tuple):
                parts.append(f"{key}=({','.join(str(x) for x in v)})")
            else:
                parts.append(f"{key}={v}")
        return " ".join(parts)

    def check_index(self, n: Sequence[int]) -> MultiIndex:
        n = as_index(n)
        if len(n) != self.r:
            raise DomainError(f"{self.name}: multi-index {n} needs {self.r} entries")
        return n

    def nn_coefficients(self, n: Sequence[int], k: int) -> NNCoefficients:
        n = self.check_index(n)
        if not 1 <= k <= self.r:
            raise DomainError(f"{self.name}: direction k={k} outside 1..{self.r}")
        c = self._coefficients(n, k)
        # a_j multiplies P_{n-e_j}, which is zero when n_j = 0
        a = tuple(aj if nj else Fraction(0) for aj, nj in zip(c.a, n))
        return NNCoefficients(c.b, a)

    def explicit(self, n: Sequence[int]) -> Poly:
        return self._explicit(self.check_index(n))

    def moments(self, j: int, K: int) -> list[Fraction]:
        """Normalised power moments ``m_0..m_K`` of the ``j``-th weight (1-based)."""
        if not 1 <= j <= self.r:
            raise DomainError(f"{self.name}: measure j={j} outside 1..{self.r}")
        if K < 0:
            raise ValueError("K must be non-negative")
        return self._moments(j - 1, K)

    def _coefficients(self, n: MultiIndex, k: int) -> NNCoefficients:
        raise NotImplementedError

    def _explicit(self, n: MultiIndex) -> Poly:
        raise NotImplementedError

    def _moments(self, j: int, K: int) -> list[Fraction]:
        raise NotImplementedError


def _vec():
    return field(metadata={"vector": True})


@dataclass(frozen=True)
class Hermite(FamilySpec):
    """Weights ``exp(-x^2 + c_j x)`` on the real line."""

    c: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "hermite"

    @property
    def r(self) -> int:
        return len(self.c)

    def violations(self) -> list[str]:
        out = []
        if not self.c:
            out.append("c must be non-empty")
        if not _distinct(self.c):
            out.append("c_i must be distinct")
        return out

    def _coefficients(self, n, k):
        return NNCoefficients(self.c[k - 1] / 2, tuple(Fraction(nj, 2) for nj in n))

    def _explicit(self, n):
        ln = sum(n)
        out = Poly()
        for k in _box(n):
            lk = sum(k)
            w = Fraction(_binoms(n, k) * (-1) ** lk)
            for nj, kj, cj in zip(n, k, self.c):
                w *= cj ** (nj - kj)
            if w:
                out = out + hermite(lk).scale(w)
        return out.scale(Fraction((-1) ** ln, 2 ** ln))

    def _moments(self, j, K):
        mean = self.c[j] / 2
        m = [Fraction(1), mean]
        for k in range(1, K):
            m.append(mean * m[k] + Fraction(k, 2) * m[k - 1])
        return m[: K + 1]


@dataclass(frozen=True)
class Charlier(FamilySpec):
    """Poisson weights ``sum a_j^k / k! delta_k``."""

    a: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "charlier"

    @property
    def r(self) -> int:
        return len(self.a)

    def violations(self):
        out = []
        if not self.a:
            out.append("a must be non-empty")
        if any(v <= 0 for v in self.a):
            out.append("a_i must be positive")
        if not _distinct(self.a):
            out.append("a_i must be distinct")
        return out

    def _coefficients(self, n, k):
        ln = sum(n)
        return NNCoefficients(self.a[k - 1] + ln, tuple(aj * nj for aj, nj in zip(self.a, n)))

    def _explicit(self, n):
        minus_x = Poly((0, -1))
        out = Poly()
        for k in _box(n):
            lk = sum(k)
            w = Fraction(_binoms(n, k) * (-1) ** lk)
            for nj, kj, aj in zip(n, k, self.a):
                w *= (-aj) ** (nj - kj)
            out = out + pochhammer(minus_x, lk).scale(w)
        return out

    def _moments(self, j, K):
        return factorial_to_power([self.a[j] ** i for i in range(K + 1)])


@dataclass(frozen=True)
class MeixnerI(FamilySpec):
    """Negative binomial weights ``(beta)_k c_j^k / k!`` sharing ``beta``."""

    beta: Fraction
    c: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "meixner1"

    @property
    def r(self) -> int:
        return len(self.c)

    def violations(self):
        out = []
        if not self.c:
            out.append("c must be non-empty")
        if self.beta <= 0:
            out.append("beta must be positive")
        if any(not 0 < v < 1 for v in self.c):
            out.append("c_i must lie in (0,1)")
        if not _distinct(self.c):
            out.append("c_i must be distinct")
        return out

    def _coefficients(self, n, k):
        return meixner1_coefficients(self.beta, self.c, n, k)

    def _explicit(self, n):
        return meixner1_explicit(self.beta, self.c, n)

    def _moments(self, j, K):
        q = self.c[j] / (1 - self.c[j])
        return factorial_to_power([rising(self.beta, i) * q ** i for i in range(K + 1)])


@dataclass(frozen=True)
class Krawtchouk(FamilySpec):
    """Binomial weights ``C(N,k) p_j^k (1-p_j)^(N-k)``; defined for ``|n| <= N``."""

    p: tuple[Fraction, ...] = _vec()
    N: int = 1
    name: ClassVar[str] = "krawtchouk"

    def __post_init__(self):
        N = self.N
        if isinstance(N, str):
            N = Fraction(N)
        if isinstance(N, Fraction) and N.denominator == 1:
            N = int(N)
        object.__setattr__(self, "N", N)
        super().__post_init__()

    @property
    def r(self) -> int:
        return len(self.p)

    @property
    def max_length(self) -> int:
        return self.N

    def violations(self):
        out = []
        if not self.p:
            out.append("p must be non-empty")
        if any(not 0 < v < 1 for v in self.p):
            out.append("p_i must lie in (0,1)")
        if not _distinct(self.p):
            out.append("p_i must be distinct")
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            out.append("N must be a positive integer")
        return out

    def check_index(self, n):
        n = super().check_index(n)
        if sum(n) > self.N:
            raise DomainError(f"krawtchouk: |n|={sum(n)} exceeds N={self.N}")
        return n

    def meixner_parameters(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        return Fraction(-self.N), tuple(p / (p - 1) for p in self.p)

    def _coefficients(self, n, k):
        N, ln = self.N, sum(n)
        b = (N - ln) * self.p[k - 1] + sum(ni * (1 - pi) for ni, pi in zip(n, self.p))
        a = tuple(pj / (pj - 1) * nj * (ln - N - 1) / (Fraction(-1) / (pj - 1)) ** 2
                  for nj, pj in zip(n, self.p))
        return NNCoefficients(b, a)

    def simplified_a(self, n: Sequence[int], j: int) -> Fraction:
        n = self.check_index(n)
        pj = self.p[j - 1]
        return pj * (1 - pj) * n[j - 1] * (self.N + 1 - sum(n))

    def _explicit(self, n):
        beta, c = self.meixner_parameters()
        return meixner1_explicit(beta, c, n)

    def _moments(self, j, K):
        p = self.p[j]
        # the binomial and Meixner parametrisations must agree; use the binomial one
        return factorial_to_power([falling(Fraction(self.N), i) * p ** i for i in range(K + 1)])


@dataclass(frozen=True)
class LaguerreII(FamilySpec):
    """Weights ``x^alpha exp(-c_j x)`` on ``[0, inf)``."""

    alpha: Fraction
    c: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "laguerre2"

    @property
    def r(self) -> int:
        return len(self.c)

    def violations(self):
        out = []
        if not self.c:
            out.append("c must be non-empty")
        if self.alpha <= -1:
            out.append("alpha must exceed -1")
        if any(v <= 0 for v in self.c):
            out.append("c_i must be positive")
        if not _distinct(self.c):
            out.append("c_i must be distinct")
        return out

    def _coefficients(self, n, k):
        ln, al = sum(n), self.alpha
        b = (ln + 1 + al) / self.c[k - 1] + sum(Fraction(nj) / cj for nj, cj in zip(n, self.c))
        a = tuple(nj / cj ** 2 * (ln + al) for nj, cj in zip(n, self.c))
        return NNCoefficients(b, a)

    def _explicit(self, n):
        ln = sum(n)
        coeffs = [Fraction(0)] * (ln + 1)
        for k in _box(n):
            lk = sum(k)
            w = _binoms(n, k) * gbinom(ln + self.alpha, lk) * math.factorial(lk) * (-1) ** lk
            for kj, cj in zip(k, self.c):
                w /= cj ** kj
            coeffs[ln - lk] += w
        return Poly(coeffs)

    def _moments(self, j, K):
        return [rising(self.alpha + 1, i) / self.c[j] ** i for i in range(K + 1)]


@dataclass(frozen=True)
class LaguerreI(FamilySpec):
    """Weights ``x^alpha_j exp(-x)`` on ``[0, inf)``."""

    alpha: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "laguerre1"

    @property
    def r(self) -> int:
        return len(self.alpha)

    def violations(self):
        out = []
        if not self.alpha:
            out.append("alpha must be non-empty")
        if any(v <= -1 for v in self.alpha):
            out.append("alpha_i must exceed -1")
        if not _noninteger_differences(self.alpha):
            out.append("alpha_i - alpha_j must not be an integer")
        return out

    def _coefficients(self, n, k):
        al = self.alpha
        b = sum(n) + 1 + n[k - 1] + al[k - 1]
        a = []
        for j in range(self.r):
            v = Fraction(n[j]) * (n[j] + al[j])
            for i in range(self.r):
                if i == j:
                    continue
                den = n[i] + al[i] - n[j] - al[j]
                if den == 0:
                    raise DomainError(f"laguerre1: vanishing denominator at n={n}, i={i + 1}, j={j + 1}")
                v *= (al[i] - n[j] - al[j]) / den
            a.append(v)
        return NNCoefficients(b, tuple(a))

    def _explicit(self, n):
        ln, r = sum(n), self.r
        coeffs = [Fraction(0)] * (ln + 1)
        for k in _box(n):
            lk = sum(k)
            w = Fraction(_binoms(n, k) * (-1) ** lk)
            for j in range(r):
                top = n[j] + self.alpha[j] + sum(n[i] - k[i] for i in range(j + 1, r))
                w *= gbinom(top, k[j]) * math.factorial(k[j])
            coeffs[ln - lk] += w
        return Poly(coeffs)

    def _moments(self, j, K):
        return [rising(self.alpha[j] + 1, i) for i in range(K + 1)]


@dataclass(frozen=True)
class MeixnerII(FamilySpec):
    """Negative binomial weights ``(beta_j)_k c^k / k!`` sharing ``c``."""

    c: Fraction
    beta: tuple[Fraction, ...] = _vec()
    name: ClassVar[str] = "meixner2"

    @property
    def r(self) -> int:
        return len(self.beta)

    def violations(self):
        out = []
        if not self.beta:
            out.append("beta must be non-empty")
        if not 0 < self.c < 1:
            out.append("c must lie in (0,1)")
        if any(v <= 0 for v in self.beta):
            out.append("beta_i must be positive")
        if not _noninteger_differences(self.beta):
            out.append("beta_i - beta_j must not be an integer")
        return out

    def _coefficients(self, n, k):
        c, be, ln = self.c, self.beta, sum(n)
        b = ln / (1 - c) + (n[k - 1] + be[k - 1]) * c / (1 - c)
        a = []
        for j in range(self.r):
            v = c * n[j] * (be[j] + n[j] - 1) / (1 - c) ** 2
            for i in range(self.r):
                if i == j:
                    continue
                den = n[i] + be[i] - n[j] - be[j]
                if den == 0:
                    raise DomainError(f"meixner2: vanishing denominator at n={n}, i={i + 1}, j={j + 1}")
                v *= (be[i] - n[j] - be[j]) / den
            a.append(v)
        return NNCoefficients(b, tuple(a))

    def _explicit(self, n):
        c, ln = self.c, sum(n)
        minus_x = Poly((0, -1))
        out = Poly()
        for k in _box(n):
            lk = sum(k)
            w = _binoms(n, k) * c ** (ln - lk) / (c - 1) ** ln
            term = pochhammer(minus_x, lk)
            shift = 0
            for j in range(self.r):
                term = term * pochhammer(Poly((self.beta[j] - shift, 1)), n[j] - k[j])
                shift += k[j]
            out = out + term.scale(w)
        return out

    def _moments(self, j, K):
        q = self.c / (1 - self.c)
        return factorial_to_power([rising(self.beta[j], i) * q ** i for i in range(K + 1)])


FAMILIES: dict[str, type[FamilySpec]] = {
    cls.name: cls for cls in (Hermite, Charlier, MeixnerI, Krawtchouk, LaguerreII, LaguerreI, MeixnerII)
}

# fixed test parameters used by the acceptance suite and ``verify``
DEFAULT_PARAMS: dict[str, dict] = {
    "hermite": {"c": ("1", "-1")},
    "charlier": {"a": ("1", "2")},
    "meixner1": {"beta": "1", "c": ("1/2", "1/3")},
    "krawtchouk": {"p": ("1/3", "2/3"), "N": 12},
    "laguerre2": {"alpha": "1/2", "c": ("1", "2")},
    "laguerre1": {"alpha": ("0", "1/2")},
    "meixner2": {"c": "1/2", "beta": ("1", "3/2")},
}

# r = 1 specialisations of the above
CLASSICAL_PARAMS: dict[str, dict] = {
    "hermite": {"c": ("1",)},
    "charlier": {"a": ("1",)},
    "meixner1": {"beta": "1", "c": ("1/2",)},
    "krawtchouk": {"p": ("1/3",), "N": 12},
    "laguerre2": {"alpha": "1/2", "c": ("1",)},
    "laguerre1": {"alpha": ("0",)},
    "meixner2": {"c": "1/2", "beta": ("1",)},
}

# families whose a-coefficients are all positive
POSITIVE_FAMILIES = ("hermite", "charlier", "meixner1", "krawtchouk", "laguerre2")
SIGN_CHANGING_FAMILIES = ("laguerre1", "meixner2")


def make_family(name: str, **params) -> FamilySpec:
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    return cls(**params)


def default_family(name: str, classical: bool = False) -> FamilySpec:
    table = CLASSICAL_PARAMS if classical else DEFAULT_PARAMS
    return make_family(name, **table[name])


def validate(name: str, **params) -> list[str]:
    """Violated constraints for ``name`` with ``params``; empty when valid."""
    try:
        make_family(name, **params)
    except InvalidParameters as exc:
        return list(exc.violations)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        return [str(exc)]
    return []


def nn_coefficients(spec: FamilySpec, n: Sequence[int], k: int) -> NNCoefficients:
    return spec.nn_coefficients(n, k)


def explicit_polynomial(spec: FamilySpec, n: Sequence[int]) -> Poly:
    return spec.explicit(n)


def normalized_moments(spec: FamilySpec, j: int, K: int) -> list[Fraction]:
    return spec.moments(j, K)
