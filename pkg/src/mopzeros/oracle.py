"""Ground truth from the orthogonality conditions themselves.

Everything here goes through normalised moments only: ``P_n`` is the monic
solution of ``int x^k P_n dmu_j = 0`` (``0 <= k < n_j``), found by exact
Gaussian elimination, and recurrence coefficients are recovered from
integrals or from coefficient comparison.  No recurrence coefficients from
:mod:`mopzeros.families` are consulted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Poly
from .families import FamilySpec
from .lattice import MultiIndex, as_index


class NotNormal(ArithmeticError):
    """The moment system of a multi-index is singular."""


def integrate(P: Poly, moments: Sequence[Fraction], power: int = 0) -> Fraction:
    """``int x^power P(x) dmu`` for a mass-one measure given by its moments."""
    return sum((c * moments[i + power] for i, c in enumerate(P.coeffs)), Fraction(0))


def _moment_rows(spec: FamilySpec, n: MultiIndex) -> list[list[Fraction]]:
    """Augmented rows ``[M | -rhs]`` of the stacked conditions ``(j, k)``."""
    N = sum(n)
    rows = []
    for j, nj in enumerate(n, start=1):
        if not nj:
            continue
        m = spec.moments(j, N + nj - 1)
        for k in range(nj):
            rows.append([m[k + i] for i in range(N)] + [-m[k + N]])
    return rows


def moment_matrix(spec: FamilySpec, n: Sequence[int]) -> list[list[Fraction]]:
    """Square moment matrix; unlike the polynomial builders it ignores degree limits."""
    n = as_index(n)
    if len(n) != spec.r:
        raise ValueError(f"multi-index {n} needs {spec.r} entries")
    return [row[:-1] for row in _moment_rows(spec, n)]


def solve_linear(rows: list[list[Fraction]]) -> list[Fraction]:
    """Solve a square augmented system in place; first nonzero pivot."""
    n = len(rows)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            raise NotNormal(f"singular moment matrix at column {col}")
        rows[col], rows[piv] = rows[piv], rows[col]
        pr = rows[col]
        inv = 1 / pr[col]
        for i in range(col + 1, n):
            f = rows[i][col]
            if f:
                f *= inv
                ri = rows[i]
                for c in range(col, n + 1):
                    ri[c] -= f * pr[c]
    sol = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = rows[i][n] - sum((rows[i][c] * sol[c] for c in range(i + 1, n)), Fraction(0))
        sol[i] = s / rows[i][i]
    return sol


def determinant(matrix: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[i][c] -= f * a[col][c]
    return det


def solve_from_moments(spec: FamilySpec, n: Sequence[int]) -> Poly:
    """The unique monic type II polynomial for ``n``; raises :class:`NotNormal`."""
    n = spec.check_index(n)
    N = sum(n)
    if N == 0:
        return Poly((1,))
    coeffs = solve_linear(_moment_rows(spec, n))
    return Poly(coeffs + [Fraction(1)])


def verify_orthogonality(spec: FamilySpec, n: Sequence[int], P: Poly) -> bool:
    n = spec.check_index(n)
    if P.degree != sum(n):
        return False
    for j, nj in enumerate(n, start=1):
        if not nj:
            continue
        m = spec.moments(j, P.degree + nj - 1)
        if any(integrate(P, m, k) != 0 for k in range(nj)):
            return False
    return True


def check_normality(spec: FamilySpec, n: Sequence[int]) -> bool:
    m = moment_matrix(spec, n)
    return not m or determinant(m) != 0


def a_from_integrals(spec: FamilySpec, n: Sequence[int], j: int, P_n: Poly, P_lower: Poly) -> Fraction:
    """``a_{n,j}`` as the ratio ``int x^{n_j} P_n dmu_j / int x^{n_j-1} P_{n-e_j} dmu_j``."""
    n = spec.check_index(n)
    nj = n[j - 1]
    if nj < 1:
        raise ValueError(f"a_(n,{j}) needs n_{j} >= 1")
    m = spec.moments(j, P_n.degree + nj)
    den = integrate(P_lower, m, nj - 1)
    if den == 0:
        raise NotNormal(f"vanishing normalising integral for n={n}, j={j}")
    return integrate(P_n, m, nj) / den


def b_from_polynomials(P_n: Poly, P_up: Poly) -> Fraction:
    """Coefficient of ``x^{|n|}`` in ``x P_n - P_{n+e_k}``."""
    d = P_n.degree
    if P_up.degree != d + 1 or not (P_n.is_monic() and P_up.is_monic()):
        raise ValueError("need monic polynomials of consecutive degree")
    return (P_n.shift() - P_up).coeff(d)
