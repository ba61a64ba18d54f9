from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from sympseries import (
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    WeightMatrix,
    certify_conjecture,
    gorenstein_checks,
    hilbert_data,
    invariant_dimension,
    molien_finite,
    parse_weights,
    reconstruct_rational,
    validate_weights,
)
from sympseries.errors import (
    GroupTooLarge,
    InputError,
    NoFunctionalEquation,
    NoRationalFit,
    OriginNotInHull,
    RankDeficient,
    ZeroRow,
)
from sympseries.hilbert import (
    _rank,
    invariant_counts,
    molien_average,
    quotient_functional_equation,
)

t = Polynomial.monomial(1)
one = Polynomial.constant(1)


def brute_force_count(A: WeightMatrix, degree: int) -> int:
    """Enumerate every monomial of the given degree in z_j, conj(z_j)."""
    weights = []
    for j in range(A.n):
        col = [row[j] for row in A.entries]
        weights += [col, [-a for a in col]]
    count = 0
    for mono in combinations_with_replacement(range(len(weights)), degree):
        total = [sum(weights[v][i] for v in mono) for i in range(A.rows)]
        if all((x % m == 0) if m else x == 0 for x, m in zip(total, A.moduli)):
            count += 1
    return count


@st.composite
def finite_groups(draw):
    n = draw(st.integers(1, 3))
    nrows = draw(st.integers(1, 2))
    moduli = draw(st.lists(st.integers(1, 7), min_size=nrows, max_size=nrows))
    assume(np.prod(moduli) <= 60)
    rows = [draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n)) for _ in range(nrows)]
    return WeightMatrix(tuple(map(tuple, rows)), tuple(moduli))


# --- validation ----------------------------------------------------------

def test_validate_examples():
    assert validate_weights(parse_weights("1,-1")).rank == 1
    assert validate_weights(parse_weights("1,-2,3")).torus_rank == 1
    with pytest.raises(OriginNotInHull):
        validate_weights(parse_weights("1,2,3"))
    with pytest.raises(RankDeficient):
        validate_weights(parse_weights("1,-1;2,-2"))
    with pytest.raises(ZeroRow):
        validate_weights(parse_weights("0,0"))
    with pytest.raises(ZeroRow):
        validate_weights(parse_weights("2,4", "2"))
    with pytest.raises(InputError):
        parse_weights("1,a")


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_matches_numpy(rows):
    assert _rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(st.integers(-5, 5).filter(bool), min_size=1, max_size=5))
def test_single_row_hull(row):
    A = WeightMatrix((tuple(row),))
    mixed = min(row) < 0 < max(row)
    if mixed:
        witness = validate_weights(A).hull_witness
        assert sum(witness.values()) == 1
        assert sum(w * row[j] for j, w in witness.items()) == 0
    else:
        with pytest.raises(OriginNotInHull):
            validate_weights(A)


# --- counting ------------------------------------------------------------

def test_dimension_examples():
    A = parse_weights("1,-1")
    assert invariant_dimension(A, 0) == 1
    assert invariant_dimension(A, 1) == 0
    assert invariant_dimension(A, 2) == 4


@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
def test_counting_matches_enumeration(row):
    A = WeightMatrix((tuple(row),))
    counts = invariant_counts(A, 6)
    for d in range(7):
        assert counts[d] == invariant_dimension(A, d) == brute_force_count(A, d)


def test_rank_two_counting():
    A = parse_weights("1,0,-1;0,1,-1")
    counts = invariant_counts(A, 6)
    assert counts == [brute_force_count(A, d) for d in range(7)]


def test_hilbert_data_examples():
    data = hilbert_data(WeightMatrix.trivial(1), 3)
    assert list(data.invariant.coeffs) == [1, 2, 3, 4]
    assert data.invariant == data.quotient
    data = hilbert_data(parse_weights("1,-1"), 8)
    assert list(data.quotient.coeffs) == [1, 0, 3, 0, 5, 0, 7, 0, 9]
    assert data.quotient_dim == 2


@given(finite_groups())
def test_counting_matches_group_average(A):
    assert molien_finite(A, 8) == molien_average(A, 8) == TruncatedSeries(
        [brute_force_count(A, d) for d in range(9)], 8
    )


def test_molien_examples():
    trivial = WeightMatrix(((0,),), (1,))
    assert list(molien_finite(trivial, 4).coeffs) == [1, 2, 3, 4, 5]
    z2 = parse_weights("1", "2")
    assert list(molien_finite(z2, 6).coeffs) == [1, 0, 3, 0, 5, 0, 7]
    with pytest.raises(GroupTooLarge):
        molien_finite(parse_weights("1", "100"), 4, max_order=50)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3), st.data())
def test_symmetries(row, data):
    A = WeightMatrix((tuple(row),))
    base = invariant_counts(A, 6)
    j = data.draw(st.integers(0, len(row) - 1))
    perm = data.draw(st.permutations(range(len(row))))
    assert invariant_counts(A.negate_column(j), 6) == base
    assert invariant_counts(A.permute_columns(perm), 6) == base


# --- reconstruction ------------------------------------------------------

def test_reconstruct_examples():
    odd = TruncatedSeries([(k + 1 if k % 2 == 0 else 0) for k in range(22)], 21)
    result = reconstruct_rational(odd)
    assert result.function == RationalFunction(one + t ** 2, (one - t ** 2) ** 2)
    geometric = TruncatedSeries([1] * 20, 19)
    assert reconstruct_rational(geometric).function == RationalFunction(1, one - t)
    with pytest.raises(NoRationalFit):
        reconstruct_rational(geometric, 0, 0)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.lists(st.integers(-4, 4), min_size=1, max_size=3),
       st.integers(30, 39), st.integers(-3, 3).filter(bool))
def test_reconstruct_roundtrip_and_perturbation(num, den_tail, where, delta):
    den = Polynomial([1] + den_tail)
    f = RationalFunction(Polynomial(num), den)
    s = f.taylor(40)
    assert reconstruct_rational(s).function == f
    coeffs = list(s.coeffs)
    coeffs[where] += delta
    bumped = TruncatedSeries(coeffs, 40)
    try:
        g = reconstruct_rational(bumped).function
    except NoRationalFit:
        return
    # anything returned must reproduce every given coefficient
    assert g.taylor(40) == bumped


def test_budget_limits_degree(monkeypatch):
    s = hilbert_data(parse_weights("1,-2,3"), 40).quotient
    monkeypatch.setenv("SYMP_BUDGET", "8")
    with pytest.raises(NoRationalFit):
        reconstruct_rational(s)
    monkeypatch.setenv("SYMP_BUDGET", "64")
    assert reconstruct_rational(s).function.num.degree == 10


# --- functional equations ------------------------------------------------

def test_gorenstein_examples():
    psi = RationalFunction(one + t ** 2, (one - t ** 2) ** 2)
    report = gorenstein_checks(psi, 2)
    assert report.a_invariant == -2 and report.gamma1 == 0
    for d in range(1, 5):
        assert gorenstein_checks(RationalFunction(1, (one - t) ** d), d).a_invariant == -d
    boundary = RationalFunction(1, (one - t) * (one - t ** 2))
    report = gorenstein_checks(boundary, 2)
    assert report.a_invariant == -3 and not report.symplectic_predicted
    with pytest.raises(NoFunctionalEquation):
        gorenstein_checks(RationalFunction(one + 2 * t, (one - t) ** 2), 2)


@pytest.mark.parametrize("weights", ["1,-1", "1,-2,3", "2,-1,-1", "1,1,-2", "1,0,-1;0,1,-1"])
def test_quotient_functional_equation(weights):
    report = certify_conjecture(parse_weights(weights), 40)
    assert quotient_functional_equation(report.function, report.order)
    assert report.certified, report.verdicts


def test_all_sign_patterns_share_the_series():
    functions = {
        certify_conjecture(parse_weights(w), 40).function
        for w in ("1,-2,3", "-1,2,3", "1,2,-3", "-1,-2,3", "1,-2,-3", "-1,2,-3")
    }
    assert len(functions) == 1


def test_pm_one_weights_closed_form():
    for n in range(2, 5):
        A = WeightMatrix((tuple([1] * (n - 1) + [-1]),))
        f = certify_conjecture(A, 40).function
        num = Polynomial.constant(0)
        for k in range(n):
            num = num + t ** (2 * k) * comb(n - 1, k) ** 2
        assert f == RationalFunction(num, (one - t ** 2) ** (2 * n - 2))


def test_report_verdicts():
    report = certify_conjecture(parse_weights("1,-1"), 20)
    assert report.verdicts == {
        "functional_equation": True,
        "a_invariant_is_minus_d": True,
        "symplectic": True,
    }
    assert report.gorenstein.a_invariant == -2
    assert report.gorenstein.gamma0 == Fraction(1, 2)
