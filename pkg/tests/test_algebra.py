from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_lambda, polynomials, rationals, series
from sympseries import (
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    check_symplectic,
    ratfun_expand_at,
    ratfun_substitute,
    series_add,
    series_compose,
    series_mul,
    series_valuation,
)
from sympseries.algebra import as_fraction, parse_rational
from sympseries.errors import DegenerateSubstitution, InputError, NonpositiveValuation, PoleOrderExceeded


def ts(coeffs, N):
    return TruncatedSeries(coeffs, N)


def geometric_tail(N, start=2):
    """x**start/(1-x) through x**N."""
    return ts([0] * start + [1] * (N - start + 1), N)


# --- scalars -------------------------------------------------------------

def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(InputError):
        parse_rational("1/0")
    with pytest.raises(InputError):
        as_fraction(0.5)


# --- series arithmetic ---------------------------------------------------

def test_add_examples():
    assert series_add(ts([1, 1], 5), ts([], 5)) == ts([1, 1], 5)
    s = series_add(ts([0, 0, 1], 3), ts([0, 0, 0], 2))
    assert s.truncation == 2 and s.coeffs == (0, 0, 1)
    assert series_add(geometric_tail(9), -geometric_tail(9)) == TruncatedSeries.zero(9)


def test_mul_examples():
    assert series_mul(ts([1, 1], 4), ts([1, -1], 4)) == ts([1, 0, -1], 4)
    assert series_mul(geometric_tail(6), geometric_tail(6)) == ts([0, 0, 0, 0, 1, 2, 3], 6)


def _naive_mul(f, g):
    N = min(f.truncation, g.truncation)
    out = [Fraction(0)] * (N + 1)
    for i, j in product(range(N + 1), repeat=2):
        if i + j <= N:
            out[i + j] += f[i] * g[j]
    return out


@given(series(), series())
def test_mul_matches_convolution(f, g):
    h = f * g
    assert h.truncation == min(f.truncation, g.truncation)
    assert list(h.coeffs) == _naive_mul(f, g)


@given(series(max_trunc=8), series(max_trunc=8), series(max_trunc=8))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == TruncatedSeries.zero(f.truncation)


@given(series(max_trunc=10).filter(lambda f: f[0] != 0))
def test_division_inverts_multiplication(f):
    assert (f * f.reciprocal()).agrees_with(TruncatedSeries.one(f.truncation))


# --- composition ---------------------------------------------------------

def _naive_compose(outer, inner):
    """Expand sum a_k inner**k as exact polynomials, then cut."""
    p_inner = Polynomial(inner.coeffs)
    total = Polynomial()
    for k, a in enumerate(outer.coeffs):
        total = total + p_inner ** k * a
    v = inner.valuation() or 1
    N = min(inner.truncation, v * outer.truncation + v - 1)
    return list(total.coeffs[: N + 1]) + [0] * max(0, N + 1 - len(total.coeffs)), N


def test_compose_examples():
    minus_geom = ts([0] + [-1] * 8, 8)
    assert series_compose(ts([0, 1], 8), minus_geom) == minus_geom
    composite = series_compose(ts([1] * 9, 8), geometric_tail(17))
    assert check_symplectic(composite).ok
    with pytest.raises(NonpositiveValuation):
        series_compose(ts([1, 1], 4), ts([1, 1], 4))


@given(series(max_trunc=6), st.integers(1, 2).flatmap(lambda v: series(max_trunc=10, valuation=v)))
def test_compose_matches_brute_force(outer, inner):
    if inner.valuation() is None:
        return
    expected, N = _naive_compose(outer, inner)
    got = outer.compose(inner)
    assert got.truncation == N
    assert list(got.coeffs) == [Fraction(c) for c in expected]


@given(st.integers(1, 6))
def test_moebius_powers(n):
    N = 12
    image = ts([0, 1], N).compose(ts([0] + [-1] * N, N)) ** n
    # (x/(x-1))**n = (-x)**n (1-x)**(-n)
    expected = [0] * n + [(-1) ** n * comb(n - 1 + j, j) for j in range(N - n + 1)]
    assert list(image.coeffs) == expected


def test_valuation():
    assert series_valuation(ts([0, 0, 1, 1], 3)) == 2
    assert series_valuation(TruncatedSeries.zero(10)) is None
    assert series_valuation(geometric_tail(20) ** 3) == 6


# --- polynomials and rational functions ----------------------------------

@given(polynomials(), polynomials().filter(bool))
def test_polynomial_division(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or len(r.coeffs) < len(b.coeffs)


@given(polynomials(3), polynomials(3).filter(bool), polynomials(2).filter(bool))
def test_canonical_form(p, q, r):
    assert RationalFunction(p * r, q * r) == RationalFunction(p, q)
    f = RationalFunction(p * r, q * r)
    if not f.is_zero():
        assert f.den.leading == 1


def test_substitute_examples():
    t2 = RationalFunction(Polynomial.monomial(2))
    got = ratfun_substitute(t2, Polynomial.monomial(1), Polynomial((-1, 1)))
    assert got == RationalFunction(Polynomial.monomial(2), Polynomial((-1, 1)) ** 2)
    core = RationalFunction(Polynomial.monomial(2), Polynomial((1, -1)))
    assert ratfun_substitute(core, Polynomial.monomial(1), Polynomial((-1, 1))) == core
    with pytest.raises(DegenerateSubstitution):
        ratfun_substitute(
            RationalFunction(Polynomial.constant(1), Polynomial((1, -1))),
            Polynomial((0, -1)),
            Polynomial((0, -1)),
        )


def test_expand_at_examples():
    one_minus_t = Polynomial((1, -1))
    e = ratfun_expand_at(RationalFunction(1, one_minus_t ** 2), 1, 2, 6)
    assert e.series == TruncatedSeries.one(6)
    psi = RationalFunction(Polynomial((1, 0, 1)), Polynomial((1, 0, -1)) ** 2)
    g = ratfun_expand_at(psi, 1, 2, 4).gammas
    assert g[0] == Fraction(1, 2) and g[1] == 0
    with pytest.raises(PoleOrderExceeded):
        ratfun_expand_at(RationalFunction(1, one_minus_t ** 3), 1, 2, 4)


def _f_lambda_laurent(lam, k):
    return -lam * (lam ** (k + 1) - (-1) ** (k + 1)) / ((lam ** 2 - 1) * (lam - 1) ** (k + 1))


@given(nonzero_lambda())
def test_f_lambda_laurent_coefficients(lam):
    f = RationalFunction(1, Polynomial((1, -lam)) * Polynomial((1, -1 / lam)))
    g = ratfun_expand_at(f, 1, 2, 12).gammas
    # g[i] multiplies (1-t)**(i-2); f is analytic at t = 1 so g[0] = 0.
    assert g[0] == 0
    for k in range(-1, 11):
        assert g[k + 2] == _f_lambda_laurent(lam, k)


@given(polynomials(4), polynomials(3).filter(bool), rationals)
def test_expand_matches_substitution_route(p, q, a):
    psi = RationalFunction(p, q)
    if psi.is_zero() or psi.den(a) == 0:
        return
    e = ratfun_expand_at(psi, a, 0, 10).series
    shifted = ratfun_substitute(psi, Polynomial((a, -1)), Polynomial.constant(1))
    assert e == shifted.taylor(10)
