"""Acceptance criteria 1-9, all decided by exact rational equality.

Run through pytest (one PASS/FAIL line per criterion appears in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time

import pytest

from mopzeros.families import (FAMILIES, POSITIVE_FAMILIES, SIGN_CHANGING_FAMILIES, Krawtchouk,
                               default_family, meixner1_coefficients)
from mopzeros.lattice import (Lattice, check_path_independence, compatibility_identity,
                              extract_step_line_coefficients, lattice, minus, plus, run_step_line,
                              step_line_sequence)
from mopzeros.oracle import a_from_integrals, b_from_polynomials, solve_from_moments, verify_orthogonality
from mopzeros.zeros import interlace, theorem2_scan

MAX_LEN = 8
RESULTS: dict[int, tuple[bool, str]] = {}
_LATTICES: dict[str, Lattice] = {}


def _lat(name: str) -> Lattice:
    if name not in _LATTICES:
        _LATTICES[name] = Lattice(default_family(name))
    return _LATTICES[name]


def _fits(spec, n) -> bool:
    return spec.max_length is None or sum(n) <= spec.max_length


def criterion_1():
    start, checked = time.perf_counter(), 0
    for name in FAMILIES:
        lat = _lat(name)
        spec = lat.provider
        for n in lattice(2, MAX_LEN):
            P, E, M = lat(n), spec.explicit(n), solve_from_moments(spec, n)
            if not (P == E == M):
                return False, f"{name} n={n}: recurrence/explicit/moments differ"
            checked += 1
    elapsed = time.perf_counter() - start
    if elapsed > 120:
        return False, f"took {elapsed:.1f}s (> 120s)"
    return True, f"{checked} polynomials identical in {elapsed:.1f}s"


def criterion_2():
    conditions = 0
    for name in FAMILIES:
        lat = _lat(name)
        for n in lattice(2, MAX_LEN):
            if not verify_orthogonality(lat.provider, n, lat(n)):
                return False, f"{name} n={n}: nonzero integral"
            conditions += sum(n)
    return True, f"{conditions} integrals exactly zero"


def criterion_3():
    count = 0
    for name in FAMILIES:
        lat = _lat(name)
        spec = lat.provider
        for n in lattice(2, MAX_LEN):
            P = lat(n)
            for j in (1, 2):
                if n[j - 1]:
                    got = a_from_integrals(spec, n, j, P, lat(minus(n, j)))
                    if got != spec.nn_coefficients(n, 1).a[j - 1]:
                        return False, f"{name} n={n} j={j}: a={got}"
                    count += 1
                up = plus(n, j)
                if _fits(spec, up):
                    got = b_from_polynomials(P, lat(up))
                    if got != spec.nn_coefficients(n, j).b:
                        return False, f"{name} n={n} k={j}: b={got}"
                    count += 1
    return True, f"{count} coefficients reproduced"


def criterion_4():
    pairs = 0
    for name in POSITIVE_FAMILIES:
        spec = _lat(name).provider
        top = MAX_LEN if spec.max_length is None else min(MAX_LEN, spec.max_length)
        rep = theorem2_scan(spec, top, _lat(name))
        if not rep.positivity_holds:
            return False, f"{name}: non-positive a at {rep.negative_a[:1]}"
        bad = [r for r in rep.rows if r.verdict not in ("interlace", "domain_error")]
        if bad or rep.errors:
            return False, f"{name}: {bad[0].n if bad else rep.errors[0]}"
        pairs += sum(r.verdict == "interlace" for r in rep.rows)
    return True, f"{pairs} neighbour pairs interlace, all a > 0"


def criterion_5():
    notes = []
    for name in SIGN_CHANGING_FAMILIES:
        rep = theorem2_scan(_lat(name).provider, 6, _lat(name))
        if not rep.negative_a:
            return False, f"{name}: no negative a found"
        if not rep.sums_positive:
            return False, f"{name}: some sum of a is not positive"
        if not rep.interlacing_all or rep.errors:
            return False, f"{name}: interlacing fails"
        n, j, v = rep.negative_a[0]
        notes.append(f"{name} n={n} j={j} a={v}")
    if ((1, 1), 1, -1) not in theorem2_scan(_lat("laguerre1").provider, 6, _lat("laguerre1")).negative_a:
        return False, "laguerre1 witness a_(1,1),1 = -1 missing"
    return True, "; ".join(notes)


def criterion_6():
    paths = compat = 0
    for name in FAMILIES:
        lat = _lat(name)
        spec = lat.provider
        for n in lattice(2, MAX_LEN):
            if sum(n) >= 2:
                if not check_path_independence(spec, n, threshold=100, seed=0):
                    return False, f"{name} n={n}: path dependence"
                paths += 1
            if _fits(spec, plus(n, 1)) and _fits(spec, plus(n, 2)):
                if not compatibility_identity(spec, n, 1, 2, lat.cache):
                    return False, f"{name} n={n}: compatibility identity"
                compat += 1
    return True, f"{paths} path checks, {compat} compatibility checks"


def criterion_7():
    for name in FAMILIES:
        lat = _lat(name)
        polys = step_line_sequence(lat.provider, 10, lat.cache)
        if run_step_line(extract_step_line_coefficients(polys, 2)) != polys:
            return False, f"{name}: step-line sequence not regenerated"
    return True, f"{len(FAMILIES)} families, m <= 10"


def criterion_8():
    for name in FAMILIES:
        spec = default_family(name, classical=True)
        lat = Lattice(spec)
        for d in range(10):
            if not interlace(lat((d,)), lat((d + 1,))).ok:
                return False, f"{name}: degrees {d}, {d + 1} do not interlace"
    return True, f"{len(FAMILIES)} families, n <= 10"


def criterion_9():
    spec = default_family("krawtchouk")
    assert isinstance(spec, Krawtchouk)
    beta, c = spec.meixner_parameters()
    count = 0
    for n in lattice(2, min(MAX_LEN, spec.N)):
        for k in (1, 2):
            got = spec.nn_coefficients(n, k)
            via = meixner1_coefficients(beta, c, n, k)
            if got.b != via.b:
                return False, f"n={n} k={k}: b {got.b} vs {via.b}"
            for j in (1, 2):
                if n[j - 1] and not (got.a[j - 1] == via.a[j - 1] == spec.simplified_a(n, j)):
                    return False, f"n={n} j={j}: a mismatch"
            count += 1
    return True, f"{count} (n, k) points agree"


CRITERIA = {
    1: ("oracle triple equivalence", criterion_1),
    2: ("orthogonality conditions vanish", criterion_2),
    3: ("a and b recovered from oracles", criterion_3),
    4: ("positivity implies interlacing", criterion_4),
    5: ("sign-changing families still interlace", criterion_5),
    6: ("path independence and compatibility", criterion_6),
    7: ("step-line round trip", criterion_7),
    8: ("classical r=1 interlacing", criterion_8),
    9: ("krawtchouk coefficient identities", criterion_9),
}


def evaluate(i: int) -> tuple[bool, str]:
    try:
        RESULTS[i] = CRITERIA[i][1]()
    except Exception as exc:  # a crash is a failure, reported rather than hidden
        RESULTS[i] = (False, f"{type(exc).__name__}: {exc}")
    return RESULTS[i]


def report_line(i: int) -> str:
    ok, detail = RESULTS[i]
    return f"{'PASS' if ok else 'FAIL'}  criterion {i} ({CRITERIA[i][0]}): {detail}"


@pytest.mark.parametrize("i", sorted(CRITERIA))
def test_criterion(i):
    ok, detail = evaluate(i)
    assert ok, detail


if __name__ == "__main__":
    for i in sorted(CRITERIA):
        evaluate(i)
        print(report_line(i), flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
