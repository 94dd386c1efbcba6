"""Type II multiple orthogonal polynomials over the multi-index lattice.

Polynomials are generated from the nearest-neighbour recurrence

    x P_n = P_{n+e_k} + b_{n,k} P_n + sum_j a_{n,j} P_{n-e_j}

rearranged as ``P_{m+e_k} = (x - b_{m,k}) P_m - sum_j a_{m,j} P_{m-e_j}``, with
``P_m = 0`` when any coordinate of ``m`` is negative and ``P_0 = 1``.

A *provider* is any object with an integer attribute ``r`` and a method
``nn_coefficients(n, k) -> NNCoefficients``; the family classes in
:mod:`mopzeros.families` are providers.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Protocol, Sequence

from .exact import ONE, Poly

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class NNCoefficients:
    """Recurrence coefficients at one lattice point for one direction ``k``.

    ``a[j]`` is zero whenever ``n[j] == 0``.
    """

    b: Fraction
    a: tuple[Fraction, ...]


class CoefficientProvider(Protocol):
    r: int

    def nn_coefficients(self, n: MultiIndex, k: int) -> NNCoefficients: ...


class StructuralError(ArithmeticError):
    """The step-line recurrence left a nonzero residual."""


# multi-index helpers; directions are 1-based to match the usual notation


def as_index(n: Sequence[int]) -> MultiIndex:
    n = tuple(int(v) for v in n)
    if not n:
        raise ValueError("multi-index must have at least one entry")
    if any(v < 0 for v in n):
        raise ValueError(f"negative entry in multi-index {n}")
    return n


def length(n: MultiIndex) -> int:
    return sum(n)


def plus(n: MultiIndex, k: int) -> MultiIndex:
    return n[: k - 1] + (n[k - 1] + 1,) + n[k:]


def minus(n: MultiIndex, k: int) -> MultiIndex | None:
    """``n - e_k``, or ``None`` if that leaves the lattice."""
    if n[k - 1] == 0:
        return None
    return n[: k - 1] + (n[k - 1] - 1,) + n[k:]


def lattice(r: int, max_len: int) -> list[MultiIndex]:
    """All multi-indices with ``|n| <= max_len``, ordered by length, deterministic."""
    out = []
    for total in range(max_len + 1):
        for combo in itertools.combinations_with_replacement(range(r), total):
            n = [0] * r
            for i in combo:
                n[i] += 1
            out.append(tuple(n))
    return out


def canonical_direction(m: MultiIndex) -> int:
    """Last step of the coordinate-major path into ``m``: its highest nonzero coordinate."""
    for k in range(len(m), 0, -1):
        if m[k - 1]:
            return k
    raise ValueError("the zero index has no incoming step")


def recurrence_step(provider: CoefficientProvider, m: MultiIndex, k: int,
                    get: Callable[[MultiIndex], Poly]) -> Poly:
    """``P_{m+e_k}`` from ``P_m`` and its lower neighbours obtained through ``get``."""
    c = provider.nn_coefficients(m, k)
    p = get(m)
    out = p.shift() - p.scale(c.b)
    for j in range(1, len(m) + 1):
        lower = minus(m, j)
        if lower is None or c.a[j - 1] == 0:
            continue
        out = out - get(lower).scale(c.a[j - 1])
    return out


def build_polynomial(provider: CoefficientProvider, n: Sequence[int],
                     cache: dict[MultiIndex, Poly] | None = None) -> Poly:
    """Monic ``P_n`` built along the coordinate-major path, memoised in ``cache``."""
    n = as_index(n)
    if len(n) != provider.r:
        raise ValueError(f"multi-index {n} has length {len(n)}, family has r={provider.r}")
    limit = getattr(provider, "max_length", None)
    if limit is not None and length(n) > limit:
        raise ValueError(f"|n|={length(n)} exceeds the family's limit {limit}")
    if cache is None:
        cache = {}
    zero = (0,) * provider.r
    cache.setdefault(zero, ONE)

    def get(m: MultiIndex) -> Poly:
        hit = cache.get(m)
        if hit is not None:
            return hit
        k = canonical_direction(m)
        p = recurrence_step(provider, minus(m, k), k, get)
        cache[m] = p
        return p

    return get(n)


class Lattice:
    """A provider bundled with its own polynomial cache."""

    def __init__(self, provider: CoefficientProvider):
        self.provider = provider
        self.r = provider.r
        self.cache: dict[MultiIndex, Poly] = {(0,) * provider.r: ONE}

    def __call__(self, n: Sequence[int]) -> Poly:
        return build_polynomial(self.provider, n, self.cache)

    def coefficients(self, n: Sequence[int], k: int) -> NNCoefficients:
        return self.provider.nn_coefficients(as_index(n), k)


# path independence


def path_count(n: MultiIndex) -> int:
    out = math.factorial(sum(n))
    for v in n:
        out //= math.factorial(v)
    return out


def monotone_paths(n: MultiIndex) -> Iterator[tuple[int, ...]]:
    """Every ordering of the steps ``e_k`` (as 1-based directions) from 0 to ``n``."""
    r = len(n)

    def rec(rem: list[int], prefix: list[int]):
        if not any(rem):
            yield tuple(prefix)
            return
        for k in range(r):
            if rem[k]:
                rem[k] -= 1
                prefix.append(k + 1)
                yield from rec(rem, prefix)
                prefix.pop()
                rem[k] += 1

    yield from rec(list(n), [])


def random_path(n: MultiIndex, rng: random.Random) -> tuple[int, ...]:
    steps = [k + 1 for k, v in enumerate(n) for _ in range(v)]
    rng.shuffle(steps)
    return tuple(steps)


def build_along_path(provider: CoefficientProvider, path: Sequence[int]) -> Poly:
    """Build the endpoint of ``path`` with a fresh cache.

    Points on the path are entered through the path's own step; lower
    neighbours off the path use the coordinate-major rule.
    """
    r = provider.r
    entry: dict[MultiIndex, int] = {}
    m = (0,) * r
    for k in path:
        m = plus(m, k)
        entry[m] = k
    cache: dict[MultiIndex, Poly] = {(0,) * r: ONE}

    def get(q: MultiIndex) -> Poly:
        hit = cache.get(q)
        if hit is not None:
            return hit
        k = entry.get(q) or canonical_direction(q)
        p = recurrence_step(provider, minus(q, k), k, get)
        cache[q] = p
        return p

    return get(m)


def check_path_independence(provider: CoefficientProvider, n: Sequence[int],
                            threshold: int = 100, seed: int = 0) -> bool:
    """True iff every monotone path from 0 to ``n`` yields the same polynomial.

    All paths are tried when there are at most ``threshold`` of them, otherwise
    ``threshold`` paths are sampled with a seeded RNG.
    """
    n = as_index(n)
    if path_count(n) <= threshold:
        paths: Iterator[tuple[int, ...]] = monotone_paths(n)
    else:
        rng = random.Random(seed)
        paths = (random_path(n, rng) for _ in range(threshold))
    reference = build_polynomial(provider, n)
    return all(build_along_path(provider, p) == reference for p in paths)


def compatibility_identity(provider: CoefficientProvider, n: Sequence[int], k: int, l: int,
                           cache: dict[MultiIndex, Poly] | None = None) -> bool:
    """Check ``P_{n+e_k} - P_{n+e_l} == (b_{n,l} - b_{n,k}) P_n`` exactly."""
    if k == l:
        raise ValueError("directions must differ")
    n = as_index(n)
    cache = {} if cache is None else cache
    lhs = build_polynomial(provider, plus(n, k), cache) - build_polynomial(provider, plus(n, l), cache)
    bk = provider.nn_coefficients(n, k).b
    bl = provider.nn_coefficients(n, l).b
    return lhs == build_polynomial(provider, n, cache).scale(bl - bk)


# step-line


def step_line_index(step: int, r: int) -> MultiIndex:
    """Step-line multi-index of length ``step``: ``q+1`` repeated ``s`` times, then ``q``."""
    q, s = divmod(step, r)
    return (q + 1,) * s + (q,) * (r - s)


def step_line_sequence(provider: CoefficientProvider, m: int,
                       cache: dict[MultiIndex, Poly] | None = None) -> list[Poly]:
    """``[P_0, ..., P_m]`` along the step-line."""
    if m < 0:
        raise ValueError("m must be non-negative")
    cache = {} if cache is None else cache
    return [build_polynomial(provider, step_line_index(i, provider.r), cache) for i in range(m + 1)]


def extract_step_line_coefficients(polys: Sequence[Poly], r: int) -> list[tuple[Fraction, ...]]:
    """Row ``n`` holds ``(a_{n,n}, a_{n,n-1}, ..., a_{n,n-r})`` for ``n < len(polys) - 1``.

    ``x P_n - P_{n+1}`` is reduced against ``P_n, ..., P_{n-r}`` by leading
    coefficient elimination; any leftover means the sequence does not obey an
    ``r+2`` term recurrence and raises :class:`StructuralError`.
    """
    for i, p in enumerate(polys):
        if not p.is_monic() or p.degree != i:
            raise ValueError(f"entry {i} is not monic of degree {i}")
    rows = []
    for n in range(len(polys) - 1):
        rem = polys[n].shift() - polys[n + 1]
        row = []
        for t in range(n, n - r - 1, -1):
            if t < 0:
                row.append(Fraction(0))
                continue
            c = rem.coeff(t)
            row.append(c)
            rem = rem - polys[t].scale(c)
        if not rem.is_zero():
            raise StructuralError(f"nonzero residual {rem} at step {n}")
        rows.append(tuple(row))
    return rows


def run_step_line(rows: Sequence[Sequence[Fraction]]) -> list[Poly]:
    """Regenerate ``[P_0, ..., P_len(rows)]`` from step-line coefficient rows."""
    polys = [ONE]
    for n, row in enumerate(rows):
        nxt = polys[n].shift()
        for j, c in enumerate(row):
            if n - j >= 0 and c:
                nxt = nxt - polys[n - j].scale(c)
        polys.append(nxt)
    return polys


__all__ = [
    "MultiIndex",
    "NNCoefficients",
    "CoefficientProvider",
    "StructuralError",
    "Lattice",
    "as_index",
    "length",
    "plus",
    "minus",
    "lattice",
    "canonical_direction",
    "build_polynomial",
    "build_along_path",
    "check_path_independence",
    "compatibility_identity",
    "monotone_paths",
    "path_count",
    "step_line_index",
    "step_line_sequence",
    "extract_step_line_coefficients",
    "run_step_line",
]
