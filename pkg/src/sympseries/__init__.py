"""Exact arithmetic for symplectic power series and Hilbert series of
symplectic quotients."""

from .algebra import (
    LaurentExpansion,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    ratfun_expand_at,
    ratfun_substitute,
    series_add,
    series_compose,
    series_mul,
    series_valuation,
)
from .euler import (
    bernoulli,
    bracket,
    bracket_table,
    euler_polynomial,
    genocchi,
    lambda_series,
    verify_cubic_identity,
)
from .hilbert import (
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
from .symplectic import (
    BasisKind,
    basis_element,
    certify_at,
    check_symplectic,
    complete_even,
    decompose,
    moebius_invariant,
    product_closure_check,
    sm_value,
)

__version__ = "0.1.0"
