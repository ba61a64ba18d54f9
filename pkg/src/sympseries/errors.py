"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`SymplecticSeriesError`, so callers (and the CLI) can separate
mathematical refutations from malformed input.
"""

from __future__ import annotations

from fractions import Fraction


class SymplecticSeriesError(Exception):
    """Base class for all library errors."""


class InputError(SymplecticSeriesError, ValueError):
    """Malformed or out-of-contract input."""


class RefutationError(SymplecticSeriesError, ArithmeticError):
    """A well-formed input was mathematically refuted."""


# algebra ----------------------------------------------------------------

class NonpositiveValuation(InputError):
    """Formal substitution into a series whose constant term is nonzero."""


class DegenerateSubstitution(InputError):
    pass


class PoleOrderExceeded(InputError):
    def __init__(self, pole_order: int, allowed: int):
        super().__init__(f"pole order {pole_order} exceeds requested order {allowed}")
        self.pole_order = pole_order
        self.allowed = allowed


class InsufficientTruncation(InputError):
    def __init__(self, needed: int, available: int):
        super().__init__(f"needs coefficients through x^{needed}, series is exact only through x^{available}")
        self.needed = needed
        self.available = available


# symplectic -------------------------------------------------------------

class NotSymplectic(RefutationError):
    """Carries the first violated constraint index ``m`` and the nonzero sum."""

    def __init__(self, m: int, value: Fraction):
        super().__init__(f"constraint S_{m} violated (value {value})")
        self.m = m
        self.value = value


class VerdictMismatch(SymplecticSeriesError, AssertionError):
    """Independent certification routes disagreed. Always a bug."""


# invariant theory -------------------------------------------------------

class RankDeficient(InputError):
    pass


class OriginNotInHull(InputError):
    pass


class ZeroRow(InputError):
    pass


class GroupTooLarge(InputError):
    pass


class NegativeCoefficient(SymplecticSeriesError, AssertionError):
    pass


class NoRationalFit(RefutationError):
    def __init__(self, budget: int, detail: str = ""):
        msg = f"no rational function with total degree <= {budget} fits the data"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.budget = budget


class NoFunctionalEquation(RefutationError):
    pass
