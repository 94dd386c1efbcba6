"""Cross-oracle verification of one family over a finite lattice.

Used by the ``verify`` subcommand.  Checks run in a fixed order and each
reports the first offending index, so a corrupted coefficient is traced to
the first identity it breaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .families import FamilySpec, Krawtchouk, meixner1_coefficients
from .lattice import (CoefficientProvider, Lattice, NNCoefficients, check_path_independence,
                      compatibility_identity, extract_step_line_coefficients, lattice, minus,
                      path_count, plus, run_step_line, step_line_sequence)
from .oracle import (a_from_integrals, b_from_polynomials, check_normality, solve_from_moments,
                     verify_orthogonality)
from .zeros import induction_trace, theorem2_scan


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class CorruptedProvider:
    """Wraps a provider and perturbs ``b`` at one multi-index (negative control)."""

    def __init__(self, inner: CoefficientProvider, at: tuple[int, ...], delta: Fraction = Fraction(1)):
        self.inner = inner
        self.r = inner.r
        self.max_length = getattr(inner, "max_length", None)
        self.at = at
        self.delta = delta

    def nn_coefficients(self, n, k) -> NNCoefficients:
        c = self.inner.nn_coefficients(n, k)
        if tuple(n) == self.at:
            return NNCoefficients(c.b + self.delta, c.a)
        return c


def verify_family(spec: FamilySpec, max_len: int, provider: CoefficientProvider | None = None,
                  seed: int = 0, stop_on_failure: bool = False) -> list[CheckResult]:
    """Run every identity for ``spec`` on ``|n| <= max_len``.

    ``provider`` drives the recurrence build (defaults to ``spec``); the
    explicit sums, moments and closed forms always come from ``spec``.
    """
    provider = spec if provider is None else provider
    limit = spec.max_length
    if limit is not None:
        max_len = min(max_len, limit)
    # neighbour checks need P_{n+e_k} to exist
    top = max_len if limit is None else min(max_len, limit - 1)
    lat = Lattice(provider)
    indices = lattice(spec.r, max_len)
    results: list[CheckResult] = []

    def check(name: str, body: Callable[[], str | None]) -> bool:
        try:
            bad = body()
        except (ArithmeticError, ValueError) as exc:
            bad = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bad is None, bad or ""))
        return bad is None

    def first(pred, items):
        for it in items:
            msg = pred(it)
            if msg:
                return msg
        return None

    def monic(n):
        P = lat(n)
        if not P.is_monic() or P.degree != sum(n):
            return f"P_{n} is not monic of degree {sum(n)}"

    def triple(n):
        P, E, M = lat(n), spec.explicit(n), solve_from_moments(spec, n)
        if not P == E == M:
            return f"n={n}: recurrence {P} / explicit {E} / moments {M}"

    def orth(n):
        if not verify_orthogonality(spec, n, lat(n)):
            return f"n={n}: orthogonality conditions violated"

    def normal(n):
        if not check_normality(spec, n):
            return f"n={n}: singular moment matrix"

    def a_closure(n):
        for j in range(1, spec.r + 1):
            if n[j - 1] == 0:
                continue
            got = a_from_integrals(spec, n, j, lat(n), lat(minus(n, j)))
            want = spec.nn_coefficients(n, 1).a[j - 1]
            if got != want:
                return f"n={n}, j={j}: integrals give {got}, closed form {want}"

    def b_closure(n):
        if sum(n) > top:
            return None
        for k in range(1, spec.r + 1):
            got = b_from_polynomials(lat(n), lat(plus(n, k)))
            want = spec.nn_coefficients(n, k).b
            if got != want:
                return f"n={n}, k={k}: polynomials give {got}, closed form {want}"

    def paths(n):
        if sum(n) >= 2 and not check_path_independence(provider, n, seed=seed):
            return f"n={n}: paths disagree ({path_count(n)} paths)"

    def compat(n):
        if sum(n) > top:
            return None
        for k in range(1, spec.r + 1):
            for l in range(k + 1, spec.r + 1):
                if not compatibility_identity(provider, n, k, l, lat.cache):
                    return f"n={n}, k={k}, l={l}"

    checks = [
        ("monic degree", monic),
        ("triple equivalence", triple),
        ("orthogonality", orth),
        ("normality", normal),
        ("a closure", a_closure),
        ("b closure", b_closure),
        ("path independence", paths),
        ("compatibility identity", compat),
    ]
    for name, pred in checks:
        ok = check(name, lambda pred=pred: first(pred, indices))
        if not ok and stop_on_failure:
            return results

    def step_line():
        m = max_len
        polys = step_line_sequence(provider, m, lat.cache)
        rows = extract_step_line_coefficients(polys, spec.r)
        if run_step_line(rows) != polys:
            return "step-line coefficients do not regenerate the sequence"

    check("step-line round trip", step_line)

    scan = theorem2_scan(spec, top, Lattice(provider))

    def zeros_ok():
        bad = [r for r in scan.rows if r.real_simple is False]
        if bad:
            return f"n={bad[0].n}: zeros not real and simple"
        if scan.errors:
            return scan.errors[0]

    def interlacing():
        bad = [r for r in scan.rows if r.verdict != "interlace"]
        if bad:
            return f"n={bad[0].n}, k={bad[0].k}: {bad[0].verdict} {bad[0].detail}"

    def sums():
        if not scan.sums_positive:
            return "some sum of a-coefficients is not positive"

    check("real simple zeros", zeros_ok)
    check("neighbour interlacing", interlacing)
    check("sum of a positive", sums)
    if scan.positivity_holds:

        def traces():
            for n in lattice(spec.r, top):
                if sum(n) == 0:
                    continue
                for k in range(1, spec.r + 1):
                    tr = induction_trace(spec, n, k, lat)
                    if not tr.alternates:
                        return f"n={n}, k={k}: sign {tr.signs} vs {tr.expected}"

        check("induction sign pattern", traces)

    if isinstance(spec, Krawtchouk):

        def krawtchouk():
            beta, c = spec.meixner_parameters()
            for n in indices:
                for k in range(1, spec.r + 1):
                    got = spec.nn_coefficients(n, k)
                    via = meixner1_coefficients(beta, c, n, k)
                    if got.b != via.b or any(g != v for g, v, nj in zip(got.a, via.a, n) if nj):
                        return f"n={n}, k={k}: printed {got} vs substitution {via}"
                for j in range(1, spec.r + 1):
                    if got.a[j - 1] != spec.simplified_a(n, j):
                        return f"n={n}, j={j}: printed a differs from p(1-p)n_j(N+1-|n|)"

        check("krawtchouk identity", krawtchouk)
    return results


__all__ = ["CheckResult", "CorruptedProvider", "verify_family"]
