"""Euler polynomials, Bernoulli and Genocchi numbers, and the bracket triangle.

The bracket coefficient ``[n, i]`` is defined by

    x * (x**(2n) - E_{2n}(x)) = sum_i [n, i] * x**(2i)

and ties the odd coefficients of a symplectic series to its even ones.
Rows and columns are indexed from 1.  Brackets outside ``1 <= i <= n``
(including every ``n <= 0``) are zero.

All tables are built once and cached as tuples, so concurrent readers
never observe a partially built table.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import Polynomial, TruncatedSeries, as_fraction

_lock = threading.Lock()
_euler_table: tuple[Polynomial, ...] = (Polynomial.constant(1),)
_bernoulli_table: tuple[Fraction, ...] = (Fraction(1),)


def euler_polynomial(n: int) -> Polynomial:
    """E_n(x), from ``E_n(x) + sum_{i<=n} C(n,i) E_i(x) = 2 x**n``."""
    if n < 0:
        raise ValueError("Euler polynomials are indexed from 0")
    return euler_polynomials(n)[n]


def euler_polynomials(n: int) -> tuple[Polynomial, ...]:
    global _euler_table
    table = _euler_table
    if len(table) > n:
        return table[: n + 1]
    with _lock:
        rows = list(_euler_table)
        for m in range(len(rows), n + 1):
            acc = Polynomial.monomial(m, 2)
            for i in range(m):
                acc = acc - rows[i] * comb(m, i)
            rows.append(acc * Fraction(1, 2))
        _euler_table = tuple(rows)
    return _euler_table[: n + 1]


def bernoulli(N: int) -> tuple[Fraction, ...]:
    """B_0..B_N with ``B_1 = -1/2``.

    Uses ``sum_{k=0}^{m} C(m+1, k) B_k = 0`` for ``m >= 1``.
    """
    global _bernoulli_table
    if N < 0:
        raise ValueError("N must be nonnegative")
    table = _bernoulli_table
    if len(table) > N:
        return table[: N + 1]
    with _lock:
        B = list(_bernoulli_table)
        for m in range(len(B), N + 1):
            s = sum((comb(m + 1, k) * B[k] for k in range(m)), Fraction(0))
            B.append(-s / (m + 1))
        _bernoulli_table = tuple(B)
    return _bernoulli_table[: N + 1]


def genocchi(N: int) -> tuple[int, ...]:
    """G_0..G_N from ``2z/(e^z + 1) = sum G_n z^n / n!``.

    Computed by exact series division of ``z`` by ``(e^z + 1)/2``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    half_exp_plus_one = TruncatedSeries(
        [Fraction(1)] + [Fraction(1, 2 * factorial(k)) for k in range(1, N + 1)], N
    )
    z = TruncatedSeries((0, 1), N)
    egf = z / half_exp_plus_one
    values = []
    for n, c in enumerate(egf.coeffs):
        g = c * factorial(n)
        assert g.denominator == 1
        values.append(int(g))
    return tuple(values)


def genocchi_from_bernoulli(N: int) -> tuple[int, ...]:
    """G_n = 2 (1 - 2**n) B_n."""
    values = []
    for n, b in enumerate(bernoulli(N)):
        g = 2 * (1 - 2 ** n) * b
        assert g.denominator == 1
        values.append(int(g))
    return tuple(values)


def bracket(n: int, i: int) -> int:
    """[n, i] read off from the even Euler polynomial E_{2n}."""
    if n <= 0 or i <= 0 or i > n:
        return 0
    c = -euler_polynomial(2 * n)[2 * i - 1]
    assert c.denominator == 1
    return int(c)


def bracket_genocchi(n: int, i: int) -> int:
    if n <= 0 or i <= 0 or i > n:
        return 0
    j = n - i + 1
    value = Fraction(-genocchi(2 * j)[2 * j], 2 * j) * comb(2 * n, 2 * i - 1)
    assert value.denominator == 1
    return int(value)


def bracket_bernoulli(n: int, i: int) -> int:
    if n <= 0 or i <= 0 or i > n:
        return 0
    j = n - i + 1
    value = Fraction(4 ** j - 1, j) * bernoulli(2 * j)[2 * j] * comb(2 * n, 2 * i - 1)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class BracketTable:
    """Rows 1..n of the bracket triangle; ``rows[k]`` is row ``k + 1``."""

    rows: tuple[tuple[int, ...], ...]

    def __call__(self, n: int, i: int) -> int:
        if n <= 0 or i <= 0 or i > n:
            return 0
        if n > len(self.rows):
            raise IndexError(f"row {n} not in table of {len(self.rows)} rows")
        return self.rows[n - 1][i - 1]


def bracket_table(n: int) -> BracketTable:
    euler_polynomials(2 * n)
    return BracketTable(tuple(tuple(bracket(r, i) for i in range(1, r + 1)) for r in range(1, n + 1)))


def verify_cubic_identity(n: int, k: int, l: int, table: BracketTable | None = None) -> Fraction:
    """LHS minus RHS of the product identity for brackets.

        [n-k, l] + [n-l, k] = [n, k+l] + sum_i sum_r [n, i] [r-1, k] [i-r, l]

    Zero certifies the identity at ``(n, k, l)``.  The identity comes from
    multiplying two symplectic series, so it is only meaningful for
    ``k, l >= 0``.
    """
    br = table if table is not None else bracket
    lhs = br(n - k, l) + br(n - l, k)
    rhs = br(n, k + l)
    for i in range(1, n + 1):
        b_ni = br(n, i)
        if not b_ni:
            continue
        for r in range(1, i + 1):
            rhs += b_ni * br(r - 1, k) * br(i - r, l)
    return Fraction(lhs - rhs)


def lambda_series(lam, N: int) -> TruncatedSeries:
    """sum_i (-1)**(i-1) (E_{i-1}(lam) - E_{i-1}(-lam)) x**i, with E_{-1} := 0."""
    lam = as_fraction(lam)
    polys = euler_polynomials(max(N - 1, 0))
    coeffs = [Fraction(0)]
    for i in range(1, N + 1):
        e = polys[i - 1]
        coeffs.append((-1) ** (i - 1) * (e(lam) - e(-lam)))
    return TruncatedSeries(coeffs, N)


def psi_series(k: int, N: int) -> TruncatedSeries:
    """psi_k(x) through x**N via Euler-polynomial derivatives at 0.

    The coefficient of x**i is (-1)**(i-1) E_{i-1}^{(2k-1)}(0) / (2k-1)!,
    which is (-1)**(i-1) times the x**(2k-1) coefficient of E_{i-1}.
    The i = 0 term uses E_{-1} := 0.
    """
    if k < 1:
        raise ValueError("psi_k is defined for k >= 1")
    polys = euler_polynomials(max(N - 1, 0))
    coeffs = [Fraction(0)]
    for i in range(1, N + 1):
        coeffs.append((-1) ** (i - 1) * polys[i - 1][2 * k - 1])
    return TruncatedSeries(coeffs, N)


def psi_series_from_brackets(k: int, N: int) -> TruncatedSeries:
    """psi_k(x) = -x**(2k) - sum_{i>=k} [i, k] x**(2i+1)."""
    if k < 1:
        raise ValueError("psi_k is defined for k >= 1")
    coeffs = [Fraction(0)] * (N + 1)
    if 2 * k <= N:
        coeffs[2 * k] = Fraction(-1)
    i = k
    while 2 * i + 1 <= N:
        coeffs[2 * i + 1] = Fraction(-bracket(i, k))
        i += 1
    return TruncatedSeries(coeffs, N)
