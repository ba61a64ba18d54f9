from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from sympseries import Polynomial, bernoulli, bracket, bracket_table, check_symplectic, euler_polynomial, genocchi
from sympseries.euler import (
    BracketTable,
    bracket_bernoulli,
    bracket_genocchi,
    genocchi_from_bernoulli,
    lambda_series,
    psi_series,
    psi_series_from_brackets,
    verify_cubic_identity,
)

TRIANGLE = [
    [1],
    [-1, 2],
    [3, -5, 3],
    [-17, 28, -14, 4],
    [155, -255, 126, -30, 5],
    [-2073, 3410, -1683, 396, -55, 6],
]


def test_euler_small():
    assert euler_polynomial(0) == Polynomial.constant(1)
    assert euler_polynomial(1) == Polynomial((Fraction(-1, 2), 1))
    assert euler_polynomial(2) == Polynomial((0, -1, 1))


@given(st.integers(0, 25), rationals)
def test_euler_difference_equation(n, x):
    # E_n(x) + E_n(x + 1) = 2 x**n characterises E_n
    E = euler_polynomial(n)
    assert E(x) + E(x + 1) == 2 * x ** n


def test_bernoulli_known():
    B = bernoulli(12)
    assert B[1] == Fraction(-1, 2)
    assert [B[k] for k in (2, 4, 6, 8, 10, 12)] == [
        Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42),
        Fraction(-1, 30), Fraction(5, 66), Fraction(-691, 2730),
    ]
    assert all(B[k] == 0 for k in (3, 5, 7, 9, 11))


def test_genocchi_values():
    G = genocchi(12)
    assert G[1:] == (1, -1, 0, 1, 0, -3, 0, 17, 0, -155, 0, 2073)
    assert genocchi(40) == genocchi_from_bernoulli(40)


def test_triangle():
    table = bracket_table(6)
    assert [list(r) for r in table.rows] == TRIANGLE


@pytest.mark.parametrize("n", range(1, 16))
def test_bracket_routes_agree(n):
    for i in range(1, n + 1):
        assert bracket(n, i) == bracket_genocchi(n, i) == bracket_bernoulli(n, i)


def test_bracket_outside_range():
    table = bracket_table(3)
    assert table(0, 0) == table(3, 4) == table(-2, 1) == table(2, 0) == 0
    assert bracket(1, 0) == bracket(-1, -1) == 0
    with pytest.raises(IndexError):
        table(4, 1)
    assert isinstance(table, BracketTable)


def test_diagonal_is_n():
    # [n, n] = n follows from the second-highest Euler coefficient
    assert all(bracket(n, n) == n for n in range(1, 20))


def test_cubic_identity_box():
    table = bracket_table(24)
    for n in range(-10, 11):
        for k in range(0, 11):
            for l in range(0, 11):
                assert verify_cubic_identity(n, k, l, table) == 0, (n, k, l)
    assert verify_cubic_identity(1, 0, 0) == 0
    assert verify_cubic_identity(8, 2, 3) == 0


def test_cubic_identity_needs_nonnegative_indices():
    # the identity is a statement about products of symplectic series,
    # so it does not extend to negative k or l
    assert verify_cubic_identity(1, -1, 1) != 0


def test_lambda_series():
    assert lambda_series(0, 10) == lambda_series(0, 10).zero(10)
    assert check_symplectic(lambda_series(1, 20)).ok


@pytest.mark.parametrize("k", range(1, 6))
def test_psi_routes_agree(k):
    assert psi_series(k, 25) == psi_series_from_brackets(k, 25)


def test_psi_one():
    coeffs = psi_series(1, 9).coeffs
    assert list(coeffs) == [0, 0, -1, -1, 0, 1, 0, -3, 0, 17]
    with pytest.raises(ValueError):
        psi_series(0, 5)
