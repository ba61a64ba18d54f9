"""Hilbert series of invariant rings and symplectic quotients.

A weight matrix ``A`` (``l x n`` integers) describes a diagonal action of
a torus, or of a finite abelian group when a row carries a modulus, on
``C**n``.  Real regular functions are polynomials in ``z`` and ``conj(z)``;
the invariant monomials ``z**alpha * conj(z)**beta`` are those with
``A (alpha - beta) = 0`` (mod the row moduli).  Counting them degree by
degree is the exact oracle.  The quotient series is the invariant series
times ``(1 - t**2)**l_torus``.

Rational Hilbert series are recovered from the oracle by Pade-type
reconstruction with a block of guard coefficients that must also match.
"""

from __future__ import annotations

import itertools
import os
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

import numpy as np

from .algebra import (
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    ratfun_expand_at,
    ratfun_substitute,
)
from .errors import (
    GroupTooLarge,
    InputError,
    InsufficientTruncation,
    NegativeCoefficient,
    NoFunctionalEquation,
    NoRationalFit,
    NotSymplectic,
    OriginNotInHull,
    RankDeficient,
    VerdictMismatch,
    ZeroRow,
)
from .symplectic import SymplecticCertificate, certify_at

DEFAULT_GUARD = 10
DEFAULT_BUDGET = 64
DEFAULT_MAX_GROUP_ORDER = 10_000


def default_budget() -> int:
    """Reconstruction budget, overridable through ``SYMP_BUDGET``."""
    raw = os.environ.get("SYMP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"SYMP_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("SYMP_BUDGET must be positive")
    return value


# ---------------------------------------------------------------------------
# weight matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightMatrix:
    """Integer weights; ``moduli[i]`` is ``None`` for a circle factor."""

    entries: tuple[tuple[int, ...], ...]
    moduli: tuple[int | None, ...] = ()
    n: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.entries)
        n = self.n if self.n >= 0 else (len(rows[0]) if rows else -1)
        if n < 0:
            raise InputError("an empty weight matrix needs an explicit n")
        if any(len(r) != n for r in rows):
            raise InputError("weight matrix rows have different lengths")
        moduli = tuple(self.moduli) if self.moduli else (None,) * len(rows)
        if len(moduli) != len(rows):
            raise InputError("one modulus per row is required")
        clean = []
        for m in moduli:
            if m in (None, 0):
                clean.append(None)
            elif int(m) < 1:
                raise InputError(f"modulus must be positive, got {m}")
            else:
                clean.append(int(m))
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "moduli", tuple(clean))
        object.__setattr__(self, "n", n)

    @classmethod
    def trivial(cls, n: int) -> WeightMatrix:
        return cls((), (), n)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def torus_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r, m in zip(self.entries, self.moduli) if m is None)

    @property
    def torus_rank(self) -> int:
        return len(self.torus_rows)

    @property
    def is_finite(self) -> bool:
        return all(m is not None for m in self.moduli)

    @property
    def group_order(self) -> int:
        if not self.is_finite:
            raise InputError("a torus factor has no finite order")
        return prod(self.moduli)

    @property
    def quotient_dim(self) -> int:
        return 2 * (self.n - self.torus_rank)

    def negate_column(self, j: int) -> WeightMatrix:
        rows = tuple(tuple(-a if k == j else a for k, a in enumerate(r)) for r in self.entries)
        return WeightMatrix(rows, self.moduli, self.n)

    def permute_columns(self, perm) -> WeightMatrix:
        rows = tuple(tuple(r[p] for p in perm) for r in self.entries)
        return WeightMatrix(rows, self.moduli, self.n)

    def to_json(self) -> dict:
        return {
            "weights": [list(r) for r in self.entries],
            "moduli": [m if m is not None else 0 for m in self.moduli],
            "n": self.n,
        }


def parse_weights(text: str, moduli: str | None = None) -> WeightMatrix:
    """Parse ``"1,-2,3"`` or ``"1,0,-1;0,1,-1"``; moduli as ``"2,3"`` (0 = circle)."""
    try:
        rows = [tuple(int(a) for a in row.split(",")) for row in text.split(";") if row.strip()]
        mods = [int(m) for m in moduli.split(",")] if moduli else []
    except ValueError:
        raise InputError(f"malformed weights {text!r} / moduli {moduli!r}") from None
    if not rows:
        raise InputError("no weights given")
    return WeightMatrix(tuple(rows), tuple(mods))


def _rank(rows) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if M[r][col]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                M[r][c] = (p * M[r][c] - M[r][col] * M[rank][c]) // prev
            M[r][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _solve_exact(matrix, rhs):
    """Unique solution of a full-column-rank system, else ``None``."""
    rows = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(ncols)]


def origin_hull_witness(columns, dim: int):
    """Convex weights on at most ``dim + 1`` columns summing to the origin.

    Returns ``{column index: weight}`` or ``None``.  By Caratheodory it is
    enough to try affinely independent subsets.
    """
    if dim == 0:
        return {0: Fraction(1)} if columns else None
    for size in range(1, dim + 2):
        for subset in itertools.combinations(range(len(columns)), size):
            matrix = [[columns[j][i] for j in subset] for i in range(dim)]
            matrix.append([1] * size)
            sol = _solve_exact(matrix, [0] * dim + [1])
            if sol is not None and all(x >= 0 for x in sol):
                return dict(zip(subset, sol))
    return None


@dataclass(frozen=True)
class ValidationReport:
    rank: int
    torus_rank: int
    hull_witness: dict | None


def validate_weights(A: WeightMatrix) -> ValidationReport:
    for i, (row, m) in enumerate(zip(A.entries, A.moduli)):
        if all((a % m if m else a) == 0 for a in row):
            raise ZeroRow(f"row {i + 1} acts trivially")
    torus = A.torus_rows
    rank = _rank(torus)
    if rank < len(torus):
        raise RankDeficient(f"torus weights have rank {rank} < {len(torus)}")
    columns = [tuple(r[j] for r in torus) for j in range(A.n)]
    witness = origin_hull_witness(columns, len(torus)) if torus else {}
    if witness is None:
        raise OriginNotInHull("0 is not in the convex hull of the weight columns")
    return ValidationReport(rank, len(torus), witness)


# ---------------------------------------------------------------------------
# counting oracle
# ---------------------------------------------------------------------------

def _variables(A: WeightMatrix):
    """Weight vectors of z_1..z_n followed by their conjugates, interleaved."""
    cols = [tuple(r[j] for r in A.entries) for j in range(A.n)]
    out = []
    for c in cols:
        out.append(c)
        out.append(tuple(-a for a in c))
    return out


def _reduce(vec, moduli):
    return tuple(a % m if m else a for a, m in zip(vec, moduli))


def _tail_bounds(variables, moduli):
    """bounds[v][i]: max |weight_i| among variables v, v+1, ... (torus rows)."""
    ell = len(moduli)
    bounds = [tuple(0 for _ in range(ell))] * (len(variables) + 1)
    for v in range(len(variables) - 1, -1, -1):
        bounds[v] = tuple(
            0 if moduli[i] else max(bounds[v + 1][i], abs(variables[v][i])) for i in range(ell)
        )
    return bounds


def _feasible(x, rem, bound, moduli) -> bool:
    for xi, b, m in zip(x, bound, moduli):
        if not m and abs(xi) > b * rem:
            return False
    return True


def invariant_counts(A: WeightMatrix, N: int) -> list[int]:
    """Invariant monomial counts for degrees 0..N in one sweep.

    Each variable multiplies the generating function by
    ``1/(1 - t z**w)``; the table maps (degree, residual weight) to a
    count and is pruned to residuals the remaining variables can cancel.
    """
    moduli = A.moduli
    variables = [_reduce(w, moduli) for w in _variables(A)]
    bounds = _tail_bounds(variables, moduli)
    zero = tuple(0 for _ in moduli)
    layers = [defaultdict(int) for _ in range(N + 1)]
    layers[0][zero] = 1
    for v, w in enumerate(variables):
        for deg in range(1, N + 1):
            dst = layers[deg]
            for x, c in list(layers[deg - 1].items()):
                y = _reduce(tuple(a + b for a, b in zip(x, w)), moduli)
                dst[y] += c
        nxt = bounds[v + 1]
        for deg in range(N + 1):
            layer = layers[deg]
            for x in [x for x in layer if not _feasible(x, N - deg, nxt, moduli)]:
                del layer[x]
    return [layers[d].get(zero, 0) for d in range(N + 1)]


def invariant_dimension(A: WeightMatrix, degree: int) -> int:
    """Number of invariant monomials of one degree (depth-first with memo).

    Independent of :func:`invariant_counts`: the recursion either skips the
    current variable or spends one unit of degree on it, memoised on
    (variable, remaining degree, residual weight).
    """
    if degree < 0:
        raise InputError("degree must be nonnegative")
    moduli = A.moduli
    variables = [_reduce(w, moduli) for w in _variables(A)]
    bounds = _tail_bounds(variables, moduli)
    nvars = len(variables)
    zero = tuple(0 for _ in moduli)

    @lru_cache(maxsize=None)
    def count(v: int, rem: int, x: tuple) -> int:
        if v == nvars:
            return 1 if rem == 0 and x == zero else 0
        if not _feasible(x, rem, bounds[v], moduli):
            return 0
        total = count(v + 1, rem, x)
        if rem:
            total += count(v, rem - 1, _reduce(tuple(a + b for a, b in zip(x, variables[v])), moduli))
        return total

    limit = sys.getrecursionlimit()
    need = 4 * (nvars + degree) + 100
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return count(0, degree, zero)
    finally:
        count.cache_clear()


@dataclass(frozen=True)
class HilbertData:
    invariant: TruncatedSeries
    quotient: TruncatedSeries
    dims: tuple[int, int]
    quotient_dim: int


def hilbert_data(A: WeightMatrix, N: int) -> HilbertData:
    counts = invariant_counts(A, N)
    invariant = TruncatedSeries(counts, N)
    factor = Polynomial((1, 0, -1)) ** A.torus_rank
    quotient = invariant * factor.to_series(N)
    for i, c in enumerate(quotient.coeffs):
        if c < 0 or c.denominator != 1:
            raise NegativeCoefficient(f"quotient coefficient of t^{i} is {c}")
    return HilbertData(invariant, quotient, (A.rows, A.n), A.quotient_dim)


def molien_finite(A: WeightMatrix, N: int, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> TruncatedSeries:
    """Invariant Hilbert series of a finite abelian group, by counting."""
    if not A.is_finite:
        raise InputError("every row needs a modulus for a finite group")
    if A.group_order > max_order:
        raise GroupTooLarge(f"|G| = {A.group_order} exceeds {max_order}")
    return TruncatedSeries(invariant_counts(A, N), N)


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Polynomial:
    p = Polynomial.monomial(m) - 1
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def molien_average(A: WeightMatrix, N: int, max_order: int = 60) -> TruncatedSeries:
    """Group average of ``prod_j 1/((1 - l_j t)(1 - t/l_j))``, exactly.

    Eigenvalues are powers of a primitive M-th root of unity
    (M = lcm of the moduli).  Series coefficients live in the group ring
    ``Z[z]/(z**M - 1)``; the averaged coefficients are reduced modulo the
    M-th cyclotomic polynomial, where they must become rational constants.
    """
    if not A.is_finite:
        raise InputError("the Molien average needs a finite group")
    order = A.group_order
    if order > max_order:
        raise GroupTooLarge(f"|G| = {order} exceeds {max_order}")
    M = 1
    for m in A.moduli:
        M = M * m // gcd(M, m)
    total = np.zeros((N + 1, M), dtype=np.int64)
    for ks in itertools.product(*(range(m) for m in A.moduli)):
        exps = [
            sum(k * row[j] * (M // m) for k, row, m in zip(ks, A.entries, A.moduli)) % M
            for j in range(A.n)
        ]
        series = np.zeros((N + 1, M), dtype=np.int64)
        series[0, 0] = 1
        for e in exps:
            # 1/((1 - z^e t)(1 - z^-e t)) = 1/(1 - (z^e + z^-e) t + t^2)
            factor = np.zeros((N + 1, M), dtype=np.int64)
            factor[0, 0] = 1
            if N >= 1:
                factor[1] = np.roll(factor[0], e) + np.roll(factor[0], -e)
            for s in range(2, N + 1):
                factor[s] = np.roll(factor[s - 1], e) + np.roll(factor[s - 1], -e) - factor[s - 2]
            series = _cyclic_series_mul(series, factor, M)
        total += series
    phi = cyclotomic(M)
    coeffs = []
    for s in range(N + 1):
        reduced = Polynomial(int(c) for c in total[s]) % phi
        if reduced.degree > 0:
            raise VerdictMismatch(f"Molien coefficient of t^{s} is not rational")
        coeffs.append(reduced[0] / order)
    return TruncatedSeries(coeffs, N)


def _cyclic_series_mul(a, b, M):
    N = a.shape[0] - 1
    out = np.zeros_like(a)
    for i in range(N + 1):
        if not a[i].any():
            continue
        for j in range(N + 1 - i):
            conv = np.convolve(a[i], b[j])
            folded = conv[:M].copy()
            folded[: len(conv) - M] += conv[M:]
            out[i + j] += folded
    return out


# ---------------------------------------------------------------------------
# rational reconstruction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReconstructionResult:
    function: RationalFunction
    degree_bounds: tuple[int, int]
    validated_through: int
    guard: int


def _pade_candidates(coeffs, K):
    """Successive (numerator, denominator) pairs of the extended Euclidean
    remainder sequence for (x**K, S mod x**K).  Each satisfies
    ``num = den * S (mod x**K)`` with ``deg num + deg den < K``."""
    r0, r1 = Polynomial.monomial(K), Polynomial(coeffs[:K])
    v0, v1 = Polynomial(), Polynomial.constant(1)
    while True:
        yield r1, v1
        if r1.is_zero():
            return
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        v0, v1 = v1, v0 - q * v1


def _validate(candidate_num, candidate_den, series: TruncatedSeries):
    if candidate_den.is_zero():
        return None
    f = RationalFunction(candidate_num, candidate_den)
    if f.den[0] == 0:
        return None
    if f.taylor(series.truncation) != series:
        return None
    return f


def _degree(p: Polynomial) -> int:
    return max(len(p.coeffs) - 1, 0)


def reconstruct_rational(
    series: TruncatedSeries,
    max_num_deg: int | None = None,
    max_den_deg: int | None = None,
    *,
    guard: int = DEFAULT_GUARD,
    budget: int | None = None,
) -> ReconstructionResult:
    """Recover ``P/Q`` from Taylor coefficients, validated on a guard block.

    With explicit degree bounds only that window is tried.  Otherwise the
    total degree starts at 8 and doubles up to ``budget``, capped by what
    the truncation can support with ``guard`` spare coefficients.  Every
    candidate must reproduce *all* given coefficients.
    """
    available = series.truncation + 1
    if max_num_deg is not None or max_den_deg is not None:
        if max_num_deg is None or max_den_deg is None:
            raise InputError("give both degree bounds or neither")
        K = max_num_deg + max_den_deg + 1
        if available < K + guard:
            raise InsufficientTruncation(K + guard - 1, series.truncation)
        for num, den in _pade_candidates(series.coeffs, K):
            if _degree(num) <= max_num_deg and _degree(den) <= max_den_deg:
                f = _validate(num, den, series)
                if f is not None:
                    return ReconstructionResult(f, (max_num_deg, max_den_deg), available, guard)
        raise NoRationalFit(max_num_deg + max_den_deg, "fixed degree window")

    if budget is None:
        budget = default_budget()
    cap = min(budget, available - 1 - guard)
    if cap < 0:
        raise InsufficientTruncation(guard, series.truncation)
    tried = -1
    total = 8
    while True:
        T = min(total, cap)
        if T > tried:
            for num, den in _pade_candidates(series.coeffs, T + 1):
                f = _validate(num, den, series)
                if f is not None:
                    q = _degree(den)
                    return ReconstructionResult(f, (T - q, q), available, guard)
            tried = T
        if T >= cap:
            break
        total *= 2
    raise NoRationalFit(cap)


# ---------------------------------------------------------------------------
# functional equations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GorensteinReport:
    a_invariant: int
    order: int
    gamma0: Fraction
    gamma1: Fraction
    a_from_laurent: int | None

    @property
    def symplectic_predicted(self) -> bool:
        return self.a_invariant == -self.order


def reciprocal_substitution(psi: RationalFunction) -> RationalFunction:
    """psi(1/t)."""
    return ratfun_substitute(psi, Polynomial.constant(1), Polynomial.monomial(1))


def gorenstein_checks(psi: RationalFunction, d: int) -> GorensteinReport:
    """a-invariant from ``psi(1/t) = (-1)**d t**(-a) psi(t)``, cross-checked
    against ``-2 gamma_1/gamma_0 - d`` from the Laurent expansion at 1."""
    if psi.is_zero():
        raise InputError("the zero series has no functional equation")
    ratio = reciprocal_substitution(psi) / psi
    num, den = ratio.num, ratio.den
    if len(num.coeffs) - 1 == num.valuation() and den == Polynomial.monomial(len(den.coeffs) - 1):
        c = num.leading
        power = num.valuation() - (len(den.coeffs) - 1)
    else:
        raise NoFunctionalEquation(f"psi(1/t)/psi(t) = {ratio} is not a monomial")
    if c != (-1) ** d:
        raise NoFunctionalEquation(f"psi(1/t) = {c} t^{power} psi(t); sign does not match (-1)^{d}")
    a = -power
    expansion = ratfun_expand_at(psi, 1, d, 1)
    g0, g1 = expansion.gammas[0], expansion.gammas[1]
    a_laurent = None
    if g0:
        value = -2 * g1 / g0 - d
        if value.denominator != 1 or int(value) != a:
            raise VerdictMismatch(f"a-invariant {a} vs Laurent value {value}")
        a_laurent = int(value)
    return GorensteinReport(a, d, g0, g1, a_laurent)


def quotient_functional_equation(psi: RationalFunction, d: int) -> bool:
    """psi(1/t) == t**d psi(t)."""
    return reciprocal_substitution(psi) == psi * RationalFunction(Polynomial.monomial(d))


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

@dataclass
class ConjectureReport:
    weights: WeightMatrix
    validation: ValidationReport
    data: HilbertData
    reconstruction: ReconstructionResult
    gorenstein: GorensteinReport | None
    functional_equation: bool
    certificate: SymplecticCertificate | None
    rho_function: RationalFunction | None
    verdicts: dict = field(default_factory=dict)
    failure: str | None = None

    @property
    def function(self) -> RationalFunction:
        return self.reconstruction.function

    @property
    def order(self) -> int:
        return self.data.quotient_dim

    @property
    def certified(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())


def certify_conjecture(
    A: WeightMatrix,
    N: int = 40,
    budget: int | None = None,
    *,
    M: int = 30,
    guard: int = DEFAULT_GUARD,
) -> ConjectureReport:
    """Counting -> reconstruction -> Gorenstein check -> certification at t = 1.

    Invalid weights raise; mathematical failures downstream are recorded
    in the report (``certified`` is then false).
    """
    validation = validate_weights(A)
    data = hilbert_data(A, N)
    rec = reconstruct_rational(data.quotient, guard=guard, budget=budget)
    psi = rec.function
    d = data.quotient_dim
    verdicts = {}
    failure = None

    fe = quotient_functional_equation(psi, d)
    verdicts["functional_equation"] = fe

    gor = None
    try:
        gor = gorenstein_checks(psi, d)
        verdicts["a_invariant_is_minus_d"] = gor.symplectic_predicted
    except NoFunctionalEquation as exc:
        verdicts["a_invariant_is_minus_d"] = False
        failure = str(exc)

    cert = None
    try:
        cert = certify_at(psi, 1, d, M)
        verdicts["symplectic"] = True
    except NotSymplectic as exc:
        verdicts["symplectic"] = False
        failure = failure or str(exc)

    rho_fn = None
    if cert is not None:
        try:
            rho_fn = reconstruct_rational(cert.rho, guard=guard, budget=budget).function
        except (NoRationalFit, InsufficientTruncation):
            rho_fn = None
    return ConjectureReport(A, validation, data, rec, gor, fe, cert, rho_fn, verdicts, failure)
