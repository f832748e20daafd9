"""Euler characteristic tables P(m) = chi(m-th multiple) from numerical data.

The value is the normal-surface Riemann-Roch expression

    P(m) = (m^2 * k1 - m * k2) / 2 + chi + sum of local terms at m,

a quadratic in m plus a periodic correction read off a basket. This module
evaluates it exactly, decides whether every value is an integer (a necessary
condition for the data to come from an actual model, since chi of a sheaf is
an integer), and compresses the whole table into a :class:`HilbertFunction`:
the quadratic coefficients plus one period of correction values. That
compressed form carries the equality notion used for deduplication, where
distinct baskets realizing the same table compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .baskets import Basket, basket_term, basket_uses_extrapolation, q_index
from .errors import InvalidInput, NotIntegral
from .exact_core import as_rational

_WARN_GENERAL_TYPE = "general_type flag set but k1 <= 0"


@dataclass(frozen=True)
class ModelNumerics:
    """Input tuple (k1, k2, chi, basket) with optional ambient square kx2.

    k1 and k2 are the self- and cross-intersection numbers driving the
    quadratic part; chi is the structure-sheaf Euler characteristic, an
    integer by definition. ``general_type`` asserts k1 > 0 and is enforced;
    ``kx2`` is carried for bound reports and never used in evaluation.
    """

    k1: Fraction
    k2: Fraction
    chi: int
    basket: Basket = field(default_factory=Basket)
    kx2: Optional[Fraction] = None
    general_type: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k1", as_rational(self.k1))
        object.__setattr__(self, "k2", as_rational(self.k2))
        if self.kx2 is not None:
            object.__setattr__(self, "kx2", as_rational(self.kx2))
        if not isinstance(self.chi, int) or isinstance(self.chi, bool):
            raise InvalidInput(f"chi must be an integer, got {self.chi!r}")
        if not isinstance(self.basket, Basket):
            raise InvalidInput("basket must be a Basket instance")
        if self.general_type and self.k1 <= 0:
            raise InvalidInput(_WARN_GENERAL_TYPE, k1=str(self.k1))

    def denominators_consistent(self) -> bool:
        """Advisory: denominators compatible with the basket index.

        On a model whose s-th multiple is Cartier, s^2*k1 and s*k2 are
        integers; data violating this cannot come from such a model. Not a
        hard precondition, evaluation works regardless.
        """
        s = q_index(self.basket)
        return (self.k1 * s * s).denominator == 1 and (self.k2 * s).denominator == 1


def hilbert_value(num: ModelNumerics, m: int) -> Fraction:
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InvalidInput(f"multiple must be a nonnegative integer, got {m!r}")
    quadratic = (num.k1 * m * m - num.k2 * m) / 2
    return quadratic + num.chi + basket_term(num.basket, m)


def integrality_window(num: ModelNumerics) -> int:
    """Length L of the window [0, L) whose integrality decides all of it.

    With T the basket period, L = lcm(T, 2*den(k1), 2*den(k2)) makes
    P(m+L) - P(m) = ((2mL + L^2)k1 - L*k2)/2 an integer for every m: L*k1
    and L*k2 are integers and L is even, so each summand is. Corrections
    cancel because T | L. Integrality on one window therefore telescopes to
    all of them.
    """
    period = q_index(num.basket)
    return math.lcm(period, 2 * num.k1.denominator, 2 * num.k2.denominator)


def integrality_check(num: ModelNumerics) -> bool:
    return all(hilbert_value(num, m).denominator == 1 for m in range(integrality_window(num)))


@dataclass(frozen=True, eq=False)
class HilbertFunction:
    """Quadratic-plus-periodic table: value(m) = (k1 m^2 - k2 m)/2 + chi + c[m mod T].

    The correction tuple applies at m >= 1 only; value(0) = chi always.
    Equality and hashing go through :meth:`canonical_form`, so functions
    with different stored periods but identical tables compare equal, and
    the ``extrapolated`` provenance marker stays out of identity.
    """

    k1: Fraction
    k2: Fraction
    chi: int
    period: int
    correction: tuple[Fraction, ...]
    extrapolated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k1", as_rational(self.k1))
        object.__setattr__(self, "k2", as_rational(self.k2))
        object.__setattr__(self, "correction", tuple(as_rational(c) for c in self.correction))
        if not isinstance(self.period, int) or self.period < 1:
            raise InvalidInput(f"period must be a positive integer, got {self.period!r}")
        if len(self.correction) != self.period:
            raise InvalidInput(
                f"correction table has length {len(self.correction)}, period is {self.period}"
            )

    def value(self, m: int) -> Fraction:
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise InvalidInput(f"multiple must be a nonnegative integer, got {m!r}")
        quadratic = (self.k1 * m * m - self.k2 * m) / 2
        correction = self.correction[m % self.period] if m >= 1 else Fraction(0)
        return quadratic + self.chi + correction

    def canonical_form(self) -> tuple:
        # contract the correction tuple to its minimal period
        c = self.correction
        minimal = next(
            d
            for d in range(1, len(c) + 1)
            if len(c) % d == 0 and all(c[i] == c[i % d] for i in range(len(c)))
        )
        return (self.k1, self.k2, self.chi, minimal, c[:minimal])

    def __eq__(self, other):
        if not isinstance(other, HilbertFunction):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash(self.canonical_form())

    def canonicalized(self) -> "HilbertFunction":
        k1, k2, chi, period, correction = self.canonical_form()
        return HilbertFunction(k1, k2, chi, period, correction, extrapolated=self.extrapolated)

    def sort_key(self) -> tuple:
        k1, k2, chi, period, correction = self.canonical_form()
        return (k1, k2, chi, period, correction)


def to_hilbert_function(num: ModelNumerics) -> HilbertFunction:
    """Compress the table of ``num`` into one period of corrections.

    Requires every value to be an integer; raises :class:`NotIntegral`
    otherwise. The stored period is the basket index; cusp contributions
    are constant on m >= 1 and fold into every correction entry (residue 0
    reads the term at m = T, not m = 0).
    """
    if not integrality_check(num):
        raise NotIntegral(
            "table has non-integer values",
            window=integrality_window(num),
        )
    period = q_index(num.basket)
    correction = tuple(
        basket_term(num.basket, r if r >= 1 else period) for r in range(period)
    )
    flagged = any(
        basket_uses_extrapolation(num.basket, m) for m in range(1, period + 1)
    )
    return HilbertFunction(
        k1=num.k1,
        k2=num.k2,
        chi=num.chi,
        period=period,
        correction=correction,
        extrapolated=flagged,
    )


def table_second_difference(h: HilbertFunction, m: int, step: int) -> Fraction:
    """P(m + 2*step) - 2 P(m + step) + P(m)."""
    return h.value(m + 2 * step) - 2 * h.value(m + step) + h.value(m)


def second_difference_check(h: HilbertFunction) -> bool:
    """Leading-coefficient sanity: stepping by the period isolates k1.

    At step T the periodic corrections cancel residue-by-residue and the
    second difference of the quadratic part is T^2 * k1, so every
    well-formed table passes; a structurally damaged one (truncated or
    inconsistent correction storage) fails by unequal values or by failing
    to evaluate at all.
    """
    t = h.period
    try:
        return all(
            table_second_difference(h, m, t) == t * t * h.k1 for m in range(1, 2 * t + 1)
        )
    except (IndexError, TypeError, ZeroDivisionError):
        return False
