"""Symplectic power series: constraint checks, decomposition and certification.

A series ``sum g_i x**i`` is symplectic when, for every ``m >= 1``,

    S_m = sum_{k=0}^{m-1} (-1)**k C(m-1, k) g_{m+k} = 0.

Equivalently it is ``rho(x**2/(1-x))`` for some series ``rho``, and
equivalently it is fixed by ``x -> x/(x-1)``.  A rational ``psi(t)`` is
symplectic at ``a`` of order ``d`` when ``x**d psi(a - x)`` is.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import euler
from .algebra import (
    LaurentExpansion,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    as_fraction,
    ratfun_expand_at,
    ratfun_substitute,
)
from .errors import InsufficientTruncation, InputError, NotSymplectic, VerdictMismatch


def core_series(truncation: int) -> TruncatedSeries:
    """x**2/(1-x)."""
    return TruncatedSeries([0, 0] + [1] * (truncation - 1), truncation)


def moebius_series(truncation: int) -> TruncatedSeries:
    """x/(x-1) = -x - x**2 - ..."""
    return TruncatedSeries([0] + [-1] * truncation, truncation)


def max_constraint(truncation: int) -> int:
    """Largest m whose S_m only needs coefficients through ``truncation``."""
    return (truncation + 1) // 2


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------

def sm_value(f: TruncatedSeries, m: int) -> Fraction:
    if m < 1:
        raise InputError("constraints are indexed from m = 1")
    if f.truncation < 2 * m - 1:
        raise InsufficientTruncation(2 * m - 1, f.truncation)
    g = f.coeffs
    return sum(
        ((-1) ** k * comb(m - 1, k) * g[m + k] for k in range(m)), Fraction(0)
    )


@dataclass(frozen=True)
class ConstraintReport:
    checked_up_to: int
    violations: tuple[tuple[int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def first_violation(self) -> int | None:
        return self.violations[0][0] if self.violations else None


def check_symplectic(f: TruncatedSeries, max_m: int | None = None) -> ConstraintReport:
    """Evaluate every S_m the truncation supports (or up to ``max_m``)."""
    top = max_constraint(f.truncation)
    if max_m is not None:
        if max_m > top:
            raise InsufficientTruncation(2 * max_m - 1, f.truncation)
        top = max_m
    bad = []
    for m in range(1, top + 1):
        v = sm_value(f, m)
        if v:
            bad.append((m, v))
    return ConstraintReport(top, tuple(bad))


def complete_even(evens, K: int | None = None) -> TruncatedSeries:
    """The symplectic series with prescribed g_0, g_2, ..., g_{2K}.

    Odd coefficients come from ``g_{2n+1} = sum_i [n, i] g_{2i}``; the
    result is exact through ``x**(2K+1)``.
    """
    evens = [as_fraction(e) for e in evens]
    if K is None:
        K = len(evens) - 1
    if len(evens) < K + 1:
        raise InputError(f"need {K + 1} even coefficients, got {len(evens)}")
    table = euler.bracket_table(K)
    coeffs = []
    for n in range(K + 1):
        coeffs.append(evens[n])
        coeffs.append(sum((table(n, i) * evens[i] for i in range(1, n + 1)), Fraction(0)))
    return TruncatedSeries(coeffs, 2 * K + 1)


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------

class BasisKind(enum.Enum):
    CORE_POWERS = "core-powers"
    GENOCCHI_POWERS = "genocchi-powers"
    EULER_PSI = "euler-psi"


def genocchi_generator(truncation: int) -> TruncatedSeries:
    """x**2 Gen(-x), where Gen(x) = sum_n G_{n+1} x**n."""
    G = euler.genocchi(truncation)
    coeffs = [0, 0] + [(-1) ** n * G[n + 1] for n in range(truncation - 1)]
    return TruncatedSeries(coeffs, truncation)


def basis_element(kind: BasisKind | str, n: int, truncation: int) -> TruncatedSeries:
    """n-th element of a symplectic basis; it has valuation exactly 2n."""
    kind = BasisKind(kind)
    if n < 0:
        raise InputError("basis index must be nonnegative")
    if kind is BasisKind.CORE_POWERS:
        return core_series(truncation) ** n
    if kind is BasisKind.GENOCCHI_POWERS:
        return genocchi_generator(truncation) ** n
    if n == 0:
        # psi_0 is not covered by the Euler-derivative formula
        raise InputError("euler-psi basis is defined for n >= 1")
    via_derivatives = euler.psi_series(n, truncation)
    via_brackets = euler.psi_series_from_brackets(n, truncation)
    if via_derivatives != via_brackets:
        raise VerdictMismatch(f"psi_{n}: derivative and bracket formulas disagree")
    return via_brackets


# ---------------------------------------------------------------------------
# decomposition and Moebius invariance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticCertificate:
    """Proof data: ``f = rho(x**2/(1-x))`` through the verified range.

    For a rational function at ``(point, order)``, ``f`` is the expansion
    ``x**order psi(point - x)``.  ``point`` is ``None`` for a bare series.
    """

    rho: TruncatedSeries
    point: Fraction | None
    order: int
    verified_constraints: int
    minimal_order: int | None = None
    verdicts: dict = field(default_factory=dict, compare=False)

    def recompose(self) -> TruncatedSeries:
        N = 2 * self.rho.truncation + 1
        return self.rho.compose(core_series(N))


def decompose(f: TruncatedSeries) -> SymplecticCertificate:
    """Greedy m-adic extraction of ``rho`` against powers of x**2/(1-x).

    At step k the residual lies in m**(2k); its x**(2k) coefficient is
    a_k, and after subtracting a_k (x**2/(1-x))**k the x**(2k+1)
    coefficient must vanish.  A nonzero value there is exactly S_{k+1}(f).
    """
    N = f.truncation
    if N < 1:
        raise InsufficientTruncation(1, N)
    K = (N - 1) // 2
    core = core_series(N)
    residual = list(f.coeffs)
    power = TruncatedSeries.one(N)
    rho = []
    for k in range(K + 1):
        a = residual[2 * k]
        rho.append(a)
        if a:
            pc = power.coeffs
            for i in range(2 * k, N + 1):
                residual[i] -= a * pc[i]
        if residual[2 * k + 1]:
            raise NotSymplectic(k + 1, residual[2 * k + 1])
        power = power * core
    return SymplecticCertificate(
        rho=TruncatedSeries(rho, K),
        point=None,
        order=0,
        verified_constraints=K + 1,
    )


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    checked_through: int
    witness: int | None

    def __bool__(self):
        return self.invariant


def moebius_invariant(f: TruncatedSeries) -> InvarianceReport:
    """Compare ``f(x)`` and ``f(x/(x-1))`` coefficientwise."""
    image = f.compose(moebius_series(f.truncation))
    n = image.truncation
    for i in range(n + 1):
        if image.coeffs[i] != f.coeffs[i]:
            return InvarianceReport(False, n, i)
    return InvarianceReport(True, n, None)


# ---------------------------------------------------------------------------
# rational functions at a point
# ---------------------------------------------------------------------------

def functional_equation_holds(psi: RationalFunction, a, d: int) -> bool:
    """psi((a**2 - 2a + (1-a)t)/(a-1-t)) == (a-1-t)**d psi(t), exactly."""
    a = as_fraction(a)
    num_sub = Polynomial((a * a - 2 * a, 1 - a))
    den_sub = Polynomial((a - 1, -1))
    lhs = ratfun_substitute(psi, num_sub, den_sub)
    rhs = RationalFunction(den_sub) ** d * psi
    return lhs == rhs


def _safe_constraint_count(expansion_fn: RationalFunction) -> int:
    """Constraints after which a rational expansion must be symplectic.

    phi(x) - phi(x/(x-1)) has numerator degree <= 2*D for phi of degrees
    (p, q) with D = max(p, q); vanishing through x**(2D) forces it to 0.
    """
    D = max(len(expansion_fn.num.coeffs), len(expansion_fn.den.coeffs)) - 1
    return D + 1


def _expansion_function(psi: RationalFunction, a: Fraction, d: int) -> RationalFunction:
    """x**d psi(a - x) as a rational function of x."""
    shifted = ratfun_substitute(psi, Polynomial((a, -1)), Polynomial.constant(1))
    return shifted * RationalFunction(Polynomial.monomial(1)) ** d


def certify_at(psi: RationalFunction, a, d: int, M: int = 20) -> SymplecticCertificate:
    """Certify that ``psi`` is symplectic at ``t = a`` of order ``d``.

    Three routes must agree: the constraint check on the expansion, the
    exact functional equation, and a successful decomposition whose
    ``rho`` recomposes to the expansion.  ``M`` is raised if needed so the
    finite check is conclusive for this rational function.
    """
    a = as_fraction(a)
    M = max(M, _safe_constraint_count(_expansion_function(psi, a, d)))
    expansion: LaurentExpansion = ratfun_expand_at(psi, a, d, 2 * M)
    series = expansion.series

    report = check_symplectic(series)
    fe = functional_equation_holds(psi, a, d)
    try:
        cert = decompose(series)
        rebuilt = cert.recompose()
        decomposed = rebuilt.agrees_with(series)
        first_bad = None
    except NotSymplectic as exc:
        cert, decomposed, first_bad = None, False, exc

    verdicts = {"constraints": report.ok, "functional_equation": fe, "decomposition": decomposed}
    if len(set(verdicts.values())) != 1:
        raise VerdictMismatch(f"certification routes disagree: {verdicts}")
    if not report.ok:
        m, value = report.violations[0]
        if first_bad is not None and first_bad.m != m:
            raise VerdictMismatch(f"first violation S_{m} vs decomposition S_{first_bad.m}")
        raise NotSymplectic(m, value)
    return SymplecticCertificate(
        rho=cert.rho,
        point=a,
        order=d,
        verified_constraints=report.checked_up_to,
        minimal_order=expansion.minimal_order,
        verdicts=verdicts,
    )


def product_closure_check(
    psi1: RationalFunction,
    psi2: RationalFunction,
    a,
    d1: int,
    d2: int,
    M: int = 20,
) -> bool:
    """Certify both factors, then their product at order ``d1 + d2``."""
    certify_at(psi1, a, d1, M)
    certify_at(psi2, a, d2, M)
    certify_at(psi1 * psi2, a, d1 + d2, M)
    return True


def f_lambda(lam) -> RationalFunction:
    """1/((1 - lam t)(1 - t/lam)), one factor of a Molien term."""
    lam = as_fraction(lam)
    if lam == 0:
        raise InputError("lambda must be nonzero")
    return RationalFunction(
        Polynomial.constant(1),
        Polynomial((1, -lam)) * Polynomial((1, -1 / lam)),
    )
