from fractions import Fraction as F

import pytest
import sympy as sp

from mopzeros.exact import ONE, Poly
from mopzeros.families import (CLASSICAL_PARAMS, DEFAULT_PARAMS, FAMILIES, POSITIVE_FAMILIES,
                               SIGN_CHANGING_FAMILIES, DomainError, InvalidParameters, Krawtchouk,
                               default_family, explicit_polynomial, factorial_to_power, make_family,
                               meixner1_coefficients, nn_coefficients, normalized_moments, stirling2,
                               validate)
from mopzeros.lattice import Lattice, build_polynomial, lattice
from mopzeros.oracle import integrate

R3 = {
    "hermite": {"c": ("1", "0", "-1")},
    "charlier": {"a": ("1", "2", "3")},
    "meixner1": {"beta": "1", "c": ("1/2", "1/3", "1/4")},
    "krawtchouk": {"p": ("1/4", "1/2", "3/4"), "N": 9},
    "laguerre2": {"alpha": "1/2", "c": ("1", "2", "3")},
    "laguerre1": {"alpha": ("0", "1/3", "2/3")},
    "meixner2": {"c": "1/2", "beta": ("1", "4/3", "5/3")},
}


def coefficient_rows(spec, max_len):
    for n in lattice(spec.r, max_len):
        if spec.max_length is not None and sum(n) + 1 > spec.max_length:
            continue
        for k in range(1, spec.r + 1):
            yield n, k, spec.nn_coefficients(n, k)


def test_coefficient_examples():
    c = nn_coefficients(default_family("hermite"), (2, 1), 1)
    assert (c.b, c.a) == (F(1, 2), (1, F(1, 2)))
    c = nn_coefficients(default_family("charlier"), (1, 1), 2)
    assert (c.b, c.a) == (4, (1, 2))
    assert nn_coefficients(default_family("laguerre1"), (1, 1), 1).a == (-1, F(9, 2))
    c = nn_coefficients(default_family("meixner1"), (1, 0), 1)
    assert (c.b, c.a) == (4, (2, 0))


def test_a_vanishes_on_empty_direction():
    for name in FAMILIES:
        spec = default_family(name)
        assert spec.nn_coefficients((3, 0), 1).a[1] == 0
        assert spec.nn_coefficients((0, 2), 2).a[0] == 0


def test_explicit_examples():
    assert explicit_polynomial(default_family("hermite"), (1, 1)) == Poly(("-3/4", 0, 1))
    assert explicit_polynomial(default_family("charlier"), (1, 0)) == Poly((-1, 1))
    for name in FAMILIES:
        assert explicit_polynomial(default_family(name), (0, 0)) == ONE


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_explicit_matches_recurrence(name, lattices):
    lat = lattices[name]
    for n in lattice(2, 8):
        assert lat.provider.explicit(n) == lat(n)


@pytest.mark.parametrize("name", sorted(R3))
def test_explicit_matches_recurrence_r3(name):
    spec = make_family(name, **R3[name])
    lat = Lattice(spec)
    for n in lattice(3, 5):
        assert spec.explicit(n) == lat(n)


def test_moment_examples():
    assert normalized_moments(make_family("charlier", a=("2",)), 1, 2) == [1, 2, 6]
    assert normalized_moments(make_family("hermite", c=("0",)), 1, 2) == [1, 0, F(1, 2)]
    m = normalized_moments(make_family("laguerre2", alpha="0", c=("1",)), 1, 6)
    assert m == [1, 1, 2, 6, 24, 120, 720]


def test_stirling_conversion():
    assert [stirling2(4, i) for i in range(5)] == [0, 1, 7, 6, 1]
    # Poisson(1): factorial moments all 1, power moments are Bell numbers
    assert factorial_to_power([F(1)] * 6) == [1, 1, 2, 5, 15, 52]


x = sp.Symbol("x", real=True)
kk = sp.Symbol("k", integer=True, nonnegative=True)


def _sympy_moments(name, params, j, K):
    """Power moments from the raw weights, integrated or summed by sympy."""
    q = lambda v: sp.Rational(str(v))
    if name == "hermite":
        w, lo, hi, var = sp.exp(-x**2 + q(params["c"][j]) * x), -sp.oo, sp.oo, x
    elif name == "laguerre2":
        w, lo, hi, var = x**q(params["alpha"]) * sp.exp(-q(params["c"][j]) * x), 0, sp.oo, x
    elif name == "laguerre1":
        w, lo, hi, var = x**q(params["alpha"][j]) * sp.exp(-x), 0, sp.oo, x
    elif name == "charlier":
        a = q(params["a"][j])
        w, lo, hi, var = a**kk / sp.factorial(kk), 0, sp.oo, kk
    elif name == "krawtchouk":
        N, p = params["N"], q(params["p"][j])
        w, lo, hi, var = sp.binomial(N, kk) * p**kk * (1 - p)**(N - kk), 0, N, kk
    elif name in ("meixner1", "meixner2"):
        beta = q(params["beta"]) if name == "meixner1" else q(params["beta"][j])
        c = q(params["c"][j]) if name == "meixner1" else q(params["c"])
        w, lo, hi, var = sp.rf(beta, kk) * c**kk / sp.factorial(kk), 0, sp.oo, kk
    op = sp.integrate if var is x else sp.summation
    mass = op(w, (var, lo, hi))
    return [sp.nsimplify(sp.simplify(op(var**i * w, (var, lo, hi)) / mass)) for i in range(K + 1)]


@pytest.mark.parametrize("name", ["laguerre2", "laguerre1", "charlier", "krawtchouk"])
def test_moments_against_sympy(name):
    params = DEFAULT_PARAMS[name]
    spec = default_family(name)
    for j in (1, 2):
        want = _sympy_moments(name, params, j - 1, 4)
        got = spec.moments(j, 4)
        assert [sp.Rational(g.numerator, g.denominator) for g in got] == want


def test_discrete_moments_by_direct_sum():
    # Krawtchouk with finite support: direct binomial sum
    spec = default_family("krawtchouk")
    from math import comb
    for j, p in enumerate(spec.p, start=1):
        N = spec.N
        w = [comb(N, t) * p**t * (1 - p)**(N - t) for t in range(N + 1)]
        assert sum(w) == 1
        want = [sum(wt * F(t)**i for t, wt in enumerate(w)) for i in range(7)]
        assert spec.moments(j, 6) == want


def test_hermite_moments_by_quadrature():
    import mpmath
    mpmath.mp.dps = 40
    spec = default_family("hermite")
    for j, c in enumerate(spec.c, start=1):
        cc = mpmath.mpf(c.numerator) / c.denominator
        w = lambda t: mpmath.exp(-t * t + cc * t)
        mass = mpmath.quad(w, [-mpmath.inf, mpmath.inf])
        for i, m in enumerate(spec.moments(j, 5)):
            approx = mpmath.quad(lambda t: t**i * w(t), [-mpmath.inf, mpmath.inf]) / mass
            assert abs(approx - mpmath.mpf(m.numerator) / m.denominator) < mpmath.mpf(10) ** -30


def test_meixner_moments_against_truncated_sums():
    # partial sums of the negative binomial series converge; compare to 30 digits
    import mpmath
    mpmath.mp.dps = 40
    for name in ("meixner1", "meixner2"):
        spec = default_family(name)
        for j in (1, 2):
            beta = spec.beta if name == "meixner1" else spec.beta[j - 1]
            c = spec.c[j - 1] if name == "meixner1" else spec.c
            b, cc = mpmath.mpf(beta.numerator) / beta.denominator, mpmath.mpf(c.numerator) / c.denominator
            w = lambda t: mpmath.rf(b, t) * cc**t / mpmath.factorial(t)
            mass = mpmath.nsum(w, [0, mpmath.inf])
            for i, m in enumerate(spec.moments(j, 4)):
                approx = mpmath.nsum(lambda t: t**i * w(t), [0, mpmath.inf]) / mass
                assert abs(approx - mpmath.mpf(m.numerator) / m.denominator) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_moments_normalised_and_nonnegative(name):
    spec = default_family(name)
    for j in (1, 2):
        m = spec.moments(j, 8)
        assert m[0] == 1
        if name != "hermite":
            assert all(v >= 0 for v in m)


def test_validate_examples():
    assert any("distinct" in v for v in validate("charlier", a=("1", "1")))
    assert any("c" in v for v in validate("meixner1", beta="1", c=("1/2", "3/2")))
    assert any("integer" in v for v in validate("laguerre1", alpha=("0", "1")))
    for name, params in DEFAULT_PARAMS.items():
        assert validate(name, **params) == []
    with pytest.raises(InvalidParameters) as err:
        make_family("charlier", a=("1", "1"))
    assert err.value.violations


def test_validate_never_raises():
    assert validate("charlier", a=("1", "x/y"))
    assert validate("krawtchouk", p=("1/2", "1/3"), N=-1)
    assert validate("hermite", c=(0.5, 1))  # floats refused


def test_unknown_family():
    with pytest.raises(ValueError):
        make_family("jacobi", a=1)


def test_krawtchouk_domain():
    spec = default_family("krawtchouk")
    assert spec.max_length == 12
    spec.nn_coefficients((6, 6), 1)
    with pytest.raises(DomainError):
        spec.nn_coefficients((7, 6), 1)
    with pytest.raises(ValueError, match="exceeds"):
        build_polynomial(spec, (7, 6))


@pytest.mark.parametrize("name", POSITIVE_FAMILIES)
def test_positivity_r2(name):
    spec = default_family(name)
    for n, _, c in coefficient_rows(spec, 10):
        assert all(v > 0 for v, nj in zip(c.a, n) if nj)


@pytest.mark.parametrize("name", POSITIVE_FAMILIES)
def test_positivity_r3(name):
    spec = make_family(name, **R3[name])
    for n, _, c in coefficient_rows(spec, 6):
        assert all(v > 0 for v, nj in zip(c.a, n) if nj)


@pytest.mark.parametrize("name", SIGN_CHANGING_FAMILIES)
def test_sign_violation_and_sum_positivity(name):
    spec = default_family(name)
    rows = list(coefficient_rows(spec, 6))
    assert any(v < 0 for n, _, c in rows for v, nj in zip(c.a, n) if nj)
    assert all(sum(c.a) > 0 for n, _, c in rows if any(n))


def test_sum_positivity_r3():
    for name in SIGN_CHANGING_FAMILIES:
        spec = make_family(name, **R3[name])
        assert all(sum(c.a) > 0 for n, _, c in coefficient_rows(spec, 6) if any(n))


@pytest.mark.parametrize("params", [{"p": ("1/3", "2/3"), "N": 12}, {"p": ("1/5", "1/2"), "N": 7}])
def test_krawtchouk_as_meixner(params):
    spec = Krawtchouk(**params)
    beta, c = spec.meixner_parameters()
    assert beta == -spec.N
    for n in lattice(2, spec.N - 1):
        for k in (1, 2):
            got = spec.nn_coefficients(n, k)
            via = meixner1_coefficients(beta, c, n, k)
            assert got.b == via.b
            for j in (1, 2):
                if n[j - 1]:
                    assert got.a[j - 1] == via.a[j - 1] == spec.simplified_a(n, j)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_classical_orthogonality(name):
    spec = default_family(name, classical=True)
    lat = Lattice(spec)
    m = spec.moments(1, 12)
    polys = [lat((d,)) for d in range(7)]
    for i, P in enumerate(polys):
        for l, Q in enumerate(polys):
            norm = integrate(P * Q, m)
            assert (norm == 0) == (i != l)


def test_classical_hermite_matches_textbook():
    spec = make_family("hermite", c=("0",))
    # monic Hermite for weight e^{-x^2}: x^3 - 3/2 x
    assert build_polynomial(spec, (3,)) == Poly((0, "-3/2", 0, 1))
    assert CLASSICAL_PARAMS.keys() == DEFAULT_PARAMS.keys()
