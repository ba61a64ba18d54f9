"""Exact univariate algebra over the rationals.

Polynomials, truncated power series and rational functions with
:class:`fractions.Fraction` coefficients.  Every object is immutable and
every operation is exact; nothing here ever touches a float.

Expansions of a rational function around a point ``a`` are taken in
powers of ``(a - t)``, i.e. through the substitution ``t = a - x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateSubstitution,
    InputError,
    NonpositiveValuation,
    PoleOrderExceeded,
)

Scalar = Union[int, Fraction]

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def as_fraction(value) -> Fraction:
    """Coerce ``int``/``Fraction``/``"p/q"`` to an exact ``Fraction``.

    Floats are rejected: every coefficient in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputError(f"malformed rational {text!r}") from None
    if q == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense polynomial, coefficients in ascending degree.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree :data:`NEG_INF`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def valuation(self) -> int | None:
        """Lowest exponent with nonzero coefficient; ``None`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return format_polynomial(self)

    @staticmethod
    def _lift(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(as_fraction(other))

    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        b = self._lift(other).coeffs
        a = self.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: Polynomial):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lead
            quot[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] -= c * bj
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or a polynomial."""
        if isinstance(x, Polynomial):
            return self.compose(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift_down(self, k: int) -> Polynomial:
        """Divide by ``x**k``; the low coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"polynomial not divisible by x^{k}")
        return Polynomial(self.coeffs[k:])

    def shift_up(self, k: int) -> Polynomial:
        return Polynomial((0,) * k + self.coeffs) if self.coeffs else self

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def reversed(self, degree: int | None = None) -> Polynomial:
        """Reciprocal polynomial ``x**degree * p(1/x)``."""
        if degree is None:
            degree = len(self.coeffs) - 1
        if self.coeffs and degree < len(self.coeffs) - 1:
            raise ValueError("degree smaller than polynomial degree")
        padded = list(self.coeffs) + [0] * (degree + 1 - len(self.coeffs))
        return Polynomial(reversed(padded))

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def to_series(self, truncation: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[: truncation + 1], truncation)


X = Polynomial((0, 1))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def format_polynomial(p: Polynomial, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Power series known exactly through ``x**truncation``.

    Results of arithmetic carry the smallest truncation of their operands;
    precision is never inflated.
    """

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Iterable = (), truncation: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if truncation is None:
            truncation = len(cs) - 1
            if truncation < 0:
                raise InputError("a series needs a truncation order")
        if truncation < 0:
            raise InputError("truncation must be nonnegative")
        if len(cs) > truncation + 1:
            cs = cs[: truncation + 1]
        else:
            cs.extend([Fraction(0)] * (truncation + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, truncation: int) -> TruncatedSeries:
        return cls((), truncation)

    @classmethod
    def one(cls, truncation: int) -> TruncatedSeries:
        return cls((1,), truncation)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        if i < 0:
            raise IndexError("negative series index")
        if i > self.truncation:
            raise IndexError(f"coefficient x^{i} is beyond truncation {self.truncation}")
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("TruncatedSeries", self.coeffs, self.truncation))

    def __repr__(self):
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}], truncation={self.truncation})"

    def __str__(self):
        poly = format_polynomial(Polynomial(self.coeffs), "x")
        return f"{poly} + O(x^{self.truncation + 1})"

    def agrees_with(self, other: TruncatedSeries) -> bool:
        """Equality through the common truncation."""
        n = min(self.truncation, other.truncation)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def truncate(self, n: int) -> TruncatedSeries:
        if n > self.truncation:
            raise InputError(f"cannot raise truncation from {self.truncation} to {n}")
        return TruncatedSeries(self.coeffs[: n + 1], n)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient.

        ``None`` means every stored coefficient vanishes, i.e. the valuation
        is unknown beyond the truncation.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((other,), self.truncation)
        if isinstance(other, Polynomial):
            return other.to_series(self.truncation)
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        n = min(self.truncation, g.truncation)
        return TruncatedSeries((self.coeffs[i] + g.coeffs[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-c for c in self.coeffs), self.truncation)

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((c * other for c in self.coeffs), self.truncation)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        n = min(self.truncation, g.truncation)
        a, b = self.coeffs, g.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.one(self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.truncation) / self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if g.coeffs[0] == 0:
            raise ZeroDivisionError("series division by a series with zero constant term")
        n = min(self.truncation, g.truncation)
        inv0 = 1 / g.coeffs[0]
        b = g.coeffs
        out = []
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                if b[j]:
                    acc -= b[j] * out[k - j]
            out.append(acc * inv0)
        return TruncatedSeries(out, n)

    def shift_up(self, k: int) -> TruncatedSeries:
        """Multiply by ``x**k``; exactness extends by ``k`` orders."""
        return TruncatedSeries((0,) * k + self.coeffs, self.truncation + k)

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """Formal substitution ``self(inner(x))``.

        With ``v`` the valuation of ``inner``, the result is exact through
        ``min(inner.truncation, v*self.truncation + v - 1)``.
        """
        if inner.coeffs[0] != 0:
            raise NonpositiveValuation("inner series must have zero constant term")
        v = inner.valuation()
        if v is None:
            v = inner.truncation + 1
        n = min(inner.truncation, v * self.truncation + v - 1)
        inner_n = inner.truncate(n)
        # Horner from the highest outer coefficient that can reach x^n.
        top = min(self.truncation, n // v)
        acc = TruncatedSeries((self.coeffs[top],), n)
        for k in range(top - 1, -1, -1):
            acc = acc * inner_n + self.coeffs[k]
        return acc


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    return outer.compose(inner)


def series_valuation(f: TruncatedSeries) -> int | None:
    return f.valuation()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """``num/den`` in lowest terms with a monic denominator.

    Canonical form makes ``==`` a decision procedure.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Polynomial._lift(num) if not isinstance(num, Polynomial) else num
        den = Polynomial.constant(1) if den is None else Polynomial._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial.constant(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.leading
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> RationalFunction:
        return cls(Polynomial(num), Polynomial(den))

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RationalFunction", self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == 1:
            return format_polynomial(self.num)
        return f"({format_polynomial(self.num)}) / ({format_polynomial(self.den)})"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        return RationalFunction(self.num * g.den + g.num * self.den, self.den * g.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        return RationalFunction(self.num * g.num, self.den * g.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        if g.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * g.den, self.den * g.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RationalFunction(self.den ** (-k), self.num ** (-k))

    def __call__(self, t):
        t = as_fraction(t)
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t}")
        return self.num(t) / d

    def taylor(self, truncation: int) -> TruncatedSeries:
        """Maclaurin coefficients; requires ``den(0) != 0``."""
        return self.num.to_series(truncation) / self.den.to_series(truncation)

    def substitute(self, num_sub: Polynomial, den_sub: Polynomial) -> RationalFunction:
        return ratfun_substitute(self, num_sub, den_sub)

    def expand_at(self, a, d: int, truncation: int) -> LaurentExpansion:
        return ratfun_expand_at(self, a, d, truncation)

    def pole_order_at(self, a) -> int:
        """Order of the pole at ``t = a`` (negative for a zero)."""
        if self.is_zero():
            raise ValueError("the zero function has no pole order")
        a = as_fraction(a)
        sub = Polynomial((a, -1))
        return self.den.compose(sub).valuation() - self.num.compose(sub).valuation()


def ratfun_substitute(psi: RationalFunction, num_sub, den_sub) -> RationalFunction:
    """``psi(num_sub/den_sub)`` in canonical form.

    Both numerator and denominator of ``psi`` are homogenised to the common
    degree ``max(deg num, deg den)`` so no nested fractions appear.
    """
    num_sub = Polynomial._lift(num_sub)
    den_sub = Polynomial._lift(den_sub)
    if den_sub.is_zero():
        raise DegenerateSubstitution("substitution has a zero denominator")
    image = RationalFunction(num_sub, den_sub)
    if image.num.degree <= 0 and image.den.degree <= 0:
        raise DegenerateSubstitution("substitution image is constant")
    P, Q = psi.num, psi.den
    D = max(len(P.coeffs), len(Q.coeffs)) - 1
    ns_pows = [Polynomial.constant(1)]
    ds_pows = [Polynomial.constant(1)]
    for _ in range(D):
        ns_pows.append(ns_pows[-1] * num_sub)
        ds_pows.append(ds_pows[-1] * den_sub)

    def homog(p: Polynomial) -> Polynomial:
        acc = Polynomial()
        for i, c in enumerate(p.coeffs):
            if c:
                acc = acc + ns_pows[i] * ds_pows[D - i] * c
        return acc

    new_den = homog(Q)
    if new_den.is_zero():
        raise DegenerateSubstitution("substitution annihilates the denominator")
    return RationalFunction(homog(P), new_den)


@dataclass(frozen=True)
class LaurentExpansion:
    """Coefficients of ``x**order * psi(point - x)``.

    ``gammas[i]`` multiplies ``(point - t)**(i - order)`` in the expansion
    of ``psi`` about ``t = point``; at ``point == 1`` these are the
    coefficients of ``sum gamma_i / (1 - t)**(order - i)``.
    ``minimal_order`` is the actual pole order (``None`` for ``psi == 0``).
    """

    point: Fraction
    order: int
    series: TruncatedSeries
    minimal_order: int | None

    @property
    def gammas(self) -> tuple[Fraction, ...]:
        return self.series.coeffs


def ratfun_expand_at(psi: RationalFunction, a, d: int, truncation: int) -> LaurentExpansion:
    a = as_fraction(a)
    sub = Polynomial((a, -1))  # t = a - x
    num_x = psi.num.compose(sub)
    den_x = psi.den.compose(sub)
    if num_x.is_zero():
        return LaurentExpansion(a, d, TruncatedSeries.zero(truncation), None)
    v_den = den_x.valuation()
    v_num = num_x.valuation()
    pole = v_den - v_num
    if pole > d:
        raise PoleOrderExceeded(pole, d)
    shift = d - v_den
    num_x = num_x.shift_up(shift) if shift >= 0 else num_x.shift_down(-shift)
    den_x = den_x.shift_down(v_den)
    series = num_x.to_series(truncation) / den_x.to_series(truncation)
    return LaurentExpansion(a, d, series, pole)
