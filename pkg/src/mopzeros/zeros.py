"""Exact decisions about zeros: reality, simplicity and interlacing.

Verdicts come from Sturm counts and bisection on rational intervals; no
floating point is involved.  Two polynomials ``P`` (degree d) and ``Q``
(degree d+1) interlace when their zeros satisfy
``y_1 < x_1 < y_2 < ... < x_d < y_{d+1}`` with ``x`` the zeros of ``P``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Interval, Poly, SturmChain, int_sign_at, isolate_roots, poly_gcd, squarefree_part
from .families import DomainError, FamilySpec
from .lattice import Lattice, MultiIndex, lattice, plus


@dataclass(frozen=True)
class ZeroSet:
    poly: Poly
    intervals: tuple[Interval, ...]
    squarefree: bool

    @property
    def real_simple(self) -> bool:
        return self.squarefree and len(self.intervals) == self.poly.degree


def zero_set(P: Poly) -> ZeroSet:
    if P.is_zero():
        raise ValueError("zero polynomial has no zero set")
    simple = poly_gcd(P, P.derivative()).degree <= 0
    return ZeroSet(P, tuple(isolate_roots(P)), simple)


class Verdict(str, enum.Enum):
    INTERLACE = "interlace"
    FAIL = "fail"
    SHARED_ROOT = "shared_root"


@dataclass(frozen=True)
class InterlacingReport:
    verdict: Verdict
    # merged isolating intervals in increasing order, labelled "P" or "Q"
    witness: tuple[tuple[str, Interval], ...] = ()
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.INTERLACE


class _Roots:
    """Isolating intervals of a squarefree polynomial that can be shrunk on demand."""

    def __init__(self, P: Poly, intervals: Sequence[Interval]):
        self.f = squarefree_part(P).primitive()
        self.ivs = list(intervals)
        self.lo_signs = [int_sign_at(self.f, iv.lo) for iv in self.ivs]

    def halve(self, i: int) -> None:
        iv, s_lo = self.ivs[i], self.lo_signs[i]
        m = iv.mid
        sm = int_sign_at(self.f, m)
        if sm == 0:
            q = iv.width / 4
            iv = Interval(m - q, m + q)
            s_lo = int_sign_at(self.f, iv.lo)
        elif sm == s_lo:
            iv = Interval(m, iv.hi)
        else:
            iv = Interval(iv.lo, m)
        self.ivs[i] = iv
        self.lo_signs[i] = s_lo


def separate(P: Poly, p_ivs: Sequence[Interval], Q: Poly, q_ivs: Sequence[Interval]):
    """Shrink both interval lists until no P interval meets a Q interval.

    Terminates only if ``P`` and ``Q`` share no root; callers check the gcd.
    """
    rp, rq = _Roots(P, p_ivs), _Roots(Q, q_ivs)
    while True:
        clash = False
        for i in range(len(rp.ivs)):
            for j in range(len(rq.ivs)):
                if not rp.ivs[i].disjoint(rq.ivs[j]):
                    rp.halve(i)
                    rq.halve(j)
                    clash = True
        if not clash:
            return rp.ivs, rq.ivs


def interlace(P: Poly, Q: Poly) -> InterlacingReport:
    """Decide whether the zeros of ``P`` and ``Q`` strictly interlace."""
    if Q.degree != P.degree + 1:
        raise ValueError(f"need deg Q = deg P + 1, got {P.degree} and {Q.degree}")
    zp, zq = zero_set(P), zero_set(Q)
    if not zp.real_simple or not zq.real_simple:
        which = "P" if not zp.real_simple else "Q"
        return InterlacingReport(Verdict.FAIL, detail=f"zeros of {which} are not real and simple")
    g = poly_gcd(P, Q)
    if g.degree > 0:
        return InterlacingReport(Verdict.SHARED_ROOT, detail=f"common factor {g}")
    p_ivs, q_ivs = separate(P, zp.intervals, Q, zq.intervals)
    merged = sorted([("P", iv) for iv in p_ivs] + [("Q", iv) for iv in q_ivs], key=lambda t: t[1].lo)
    for pos, (label, _) in enumerate(merged):
        want = "Q" if pos % 2 == 0 else "P"
        if label != want:
            return InterlacingReport(Verdict.FAIL, tuple(merged),
                                     f"position {pos}: expected a zero of {want}, found {label}")
    return InterlacingReport(Verdict.INTERLACE, tuple(merged))


# sign pattern used in the induction argument


@dataclass(frozen=True)
class SignTrace:
    signs: tuple[int, ...]
    expected: tuple[int, ...]
    intervals: tuple[Interval, ...]
    mismatch: int | None

    @property
    def alternates(self) -> bool:
        return self.mismatch is None


def sign_at_roots(P: Poly, Q: Poly) -> tuple[list[int], list[Interval]]:
    """Exact sign of ``Q`` at each real zero of ``P``, zeros in increasing order."""
    if poly_gcd(P, Q).degree > 0:
        raise ValueError("P and Q share a root; signs there are zero")
    chain_q = SturmChain(Q)
    roots = _Roots(P, isolate_roots(P))
    fq = chain_q.chain[0]
    signs = []
    for i in range(len(roots.ivs)):
        while True:
            iv = roots.ivs[i]
            if (int_sign_at(fq, iv.lo) and int_sign_at(fq, iv.hi)
                    and chain_q.count(iv.lo, iv.hi) == 0):
                break
            roots.halve(i)
        signs.append(int_sign_at(fq, roots.ivs[i].lo))
    return signs, roots.ivs


def expected_signs(m: int) -> list[int]:
    """Signs of ``P_{n+e_k}`` at the zeros ``x_1 < ... < x_m`` of ``P_n``, ``|n| = m``.

    ``(-1)^(i+1)`` for even ``m`` and ``(-1)^i`` for odd ``m``: negative at the
    largest zero and alternating downwards.
    """
    return [(-1) ** (i + 1) if m % 2 == 0 else (-1) ** i for i in range(1, m + 1)]


def sign_trace(P: Poly, Q: Poly) -> SignTrace:
    signs, ivs = sign_at_roots(P, Q)
    exp = expected_signs(P.degree)
    if len(signs) != len(exp):
        return SignTrace(tuple(signs), tuple(exp), tuple(ivs), min(len(signs), len(exp)))
    bad = next((i for i, (s, e) in enumerate(zip(signs, exp)) if s != e), None)
    return SignTrace(tuple(signs), tuple(exp), tuple(ivs), bad)


def induction_trace(spec: FamilySpec, n: Sequence[int], k: int, lat: Lattice | None = None) -> SignTrace:
    """Signs of ``P_{n+e_k}`` at the zeros of ``P_n`` against the alternating pattern.

    Requires ``P_n`` real-simple and all ``a_{n,j} >= 0`` with one positive.
    """
    lat = Lattice(spec) if lat is None else lat
    n = spec.check_index(n)
    P = lat(n)
    if not zero_set(P).real_simple:
        raise ValueError(f"P_{n} does not have real simple zeros")
    a = spec.nn_coefficients(n, k).a
    if any(v < 0 for v in a) or not any(v > 0 for v in a):
        raise ValueError(f"a-coefficients at {n} are not non-negative with one positive: {a}")
    return sign_trace(P, lat(plus(n, k)))


# lattice scans


@dataclass
class ScanRow:
    n: MultiIndex
    k: int
    b: Fraction | None
    a: tuple[Fraction, ...]
    sum_a: Fraction
    real_simple: bool | None
    verdict: str
    detail: str = ""


@dataclass
class ScanReport:
    family: str
    params: str
    max_len: int
    rows: list[ScanRow] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def _coefficient_rows(self):
        seen = set()
        for row in self.rows:
            if row.n in seen or row.b is None:
                continue
            seen.add(row.n)
            yield row

    @property
    def negative_a(self) -> list[tuple[MultiIndex, int, Fraction]]:
        return [(row.n, j + 1, v) for row in self._coefficient_rows()
                for j, v in enumerate(row.a) if row.n[j] > 0 and v < 0]

    @property
    def positivity_holds(self) -> bool:
        """Every ``a_{n,j}`` with ``n_j > 0`` is strictly positive."""
        return all(v > 0 for row in self._coefficient_rows()
                   for j, v in enumerate(row.a) if row.n[j] > 0)

    @property
    def sums_positive(self) -> bool:
        return all(row.sum_a > 0 for row in self._coefficient_rows() if any(row.n))

    @property
    def all_real_simple(self) -> bool:
        return all(row.real_simple for row in self.rows if row.real_simple is not None)

    @property
    def interlacing_all(self) -> bool:
        """All tested neighbour pairs interlace; pairs beyond a family's degree limit are skipped."""
        tested = [row for row in self.rows if row.verdict != "domain_error"]
        return bool(tested) and all(row.verdict == Verdict.INTERLACE.value for row in tested)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for row in self.rows:
            out[row.verdict] = out.get(row.verdict, 0) + 1
        return out


def theorem2_scan(spec: FamilySpec, max_len: int, lat: Lattice | None = None) -> ScanReport:
    """Coefficient signs and neighbour interlacing for every ``|n| <= max_len``.

    One row per ``(n, k)``; per-index failures are recorded rather than raised.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    limit = spec.max_length
    if limit is not None and max_len > limit:
        raise DomainError(f"{spec.name}: max_len={max_len} would exceed N={limit}")
    lat = Lattice(spec) if lat is None else lat
    report = ScanReport(spec.name, spec.describe(), max_len)
    if max_len == 0:
        return report
    for n in lattice(spec.r, max_len):
        try:
            P = lat(n)
            simple = zero_set(P).real_simple if P.degree > 0 else True
        except (ArithmeticError, ValueError) as exc:
            report.errors.append(f"{n}: {exc}")
            continue
        for k in range(1, spec.r + 1):
            try:
                c = spec.nn_coefficients(n, k)
            except (ArithmeticError, ValueError) as exc:
                report.errors.append(f"{n}, k={k}: {exc}")
                report.rows.append(ScanRow(n, k, None, (), Fraction(0), simple, "domain_error", str(exc)))
                continue
            sum_a = sum(c.a, Fraction(0))
            if limit is not None and sum(n) + 1 > limit:
                report.rows.append(ScanRow(n, k, c.b, c.a, sum_a, simple, "domain_error",
                                           f"|n+e_k| exceeds N={limit}"))
                continue
            try:
                rep = interlace(P, lat(plus(n, k)))
                report.rows.append(ScanRow(n, k, c.b, c.a, sum_a, simple, rep.verdict.value, rep.detail))
            except (ArithmeticError, ValueError) as exc:
                report.errors.append(f"{n}, k={k}: {exc}")
                report.rows.append(ScanRow(n, k, c.b, c.a, sum_a, simple, "error", str(exc)))
    return report


__all__ = [
    "ZeroSet",
    "zero_set",
    "Verdict",
    "InterlacingReport",
    "interlace",
    "separate",
    "SignTrace",
    "sign_at_roots",
    "sign_trace",
    "expected_signs",
    "induction_trace",
    "ScanRow",
    "ScanReport",
    "theorem2_scan",
]
