"""Bound chain for the ambient canonical square and Hilbert function search.

Fixing the two leading intersection numbers k1 > 0 and k2 plus the global
index s pins the ambient square kx2 into a finite window:

* upper bound k2^2 / k1 from the index-theorem inequality, and
* strict lower bound -(16 s^2 k1 + 8 s k2), expressing positivity of the
  square of the auxiliary combination (4s * K_leading + K_ambient).

On top of that window, this module enumerates every basket compatible with
the index s up to a caller-supplied size cap, filters by exact index match
and integrality of the Euler characteristic table, and returns the finite
deduplicated family of Hilbert functions with witnessing baskets. The
search fans out over worker threads; partitioning never affects the result
because deduplication keys on the canonical form of the function.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .baskets import (
    Basket,
    cusp,
    dihedral_half,
    dihedral_zero,
    q_index,
    terminal_cyclic,
)
from .errors import InvalidInput, NonPositiveVolume
from .exact_core import as_rational
from .riemann_roch import (
    HilbertFunction,
    ModelNumerics,
    integrality_check,
    to_hilbert_function,
)


@dataclass(frozen=True)
class BoundReport:
    """Window for the ambient canonical square at fixed (k1, k2, s).

    ``kx2_lower_exclusive`` carries the quadratic-in-s coefficient 16s^2
    from expanding the auxiliary square. ``kx2_lower_exclusive_variant`` is
    the same bound with the coefficient linear in s (16s); the two readings
    circulate and they agree at s = 1, so the variant is populated only
    when it differs. ``interval_empty`` marks the degenerate configuration
    k2 = -4*s*k1 where the strict window closes completely.
    """

    kx2_upper: Fraction
    kx2_lower_exclusive: Fraction
    kx2_lower_exclusive_variant: Optional[Fraction] = None
    interval_empty: bool = False
    D_squared: Optional[Fraction] = None
    D_dot_KX: Optional[Fraction] = None


def _check_positive_int(value, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InvalidInput(f"{name} must be a positive integer, got {value!r}")
    return value


def kx2_bounds(k1, k2, s: int) -> BoundReport:
    k1, k2 = as_rational(k1), as_rational(k2)
    s = _check_positive_int(s, "s")
    if k1 <= 0:
        raise NonPositiveVolume(f"leading self-intersection must be positive, got {k1}")
    upper = k2 * k2 / k1
    lower = -(16 * s * s * k1 + 8 * s * k2)
    variant = -(16 * s * k1 + 8 * s * k2)
    return BoundReport(
        kx2_upper=upper,
        kx2_lower_exclusive=lower,
        kx2_lower_exclusive_variant=variant if variant != lower else None,
        interval_empty=lower >= upper,
    )


def ample_divisor_numerics(k1, k2, kx2, s: int) -> tuple[Fraction, Fraction]:
    """Square and ambient product of the combination 4s*K_leading + K_ambient."""
    k1, k2, kx2 = as_rational(k1), as_rational(k2), as_rational(kx2)
    s = _check_positive_int(s, "s")
    d_squared = 16 * s * s * k1 + 8 * s * k2 + kx2
    d_dot_kx = 4 * s * k2 + kx2
    return (d_squared, d_dot_kx)


def km_envelope(d_squared, m: int, q0, q1, h0) -> bool:
    """|h0 - m^2 * D^2 / 2| <= q1*m + q0 for a caller-supplied envelope Q."""
    m = _check_positive_int(m, "m")
    d_squared, q0, q1, h0 = (as_rational(x) for x in (d_squared, q0, q1, h0))
    return abs(h0 - m * m * d_squared / 2) <= q1 * m + q0


def basket_alphabet(s: int) -> tuple:
    """Profiles whose local index divides s, in canonical order."""
    s = _check_positive_int(s, "s")
    letters = [dihedral_zero(1)]
    if s % 2 == 0:
        letters.append(dihedral_zero(2))
        letters.append(dihedral_half())
    letters.extend(terminal_cyclic(n) for n in range(2, s + 1) if s % n == 0)
    return tuple(sorted(letters, key=lambda p: p.sort_key))


def enumerate_baskets(s: int, cap: int, max_cusps: int) -> Iterator[Basket]:
    """Every basket with <= cap finite-index profiles compatible with s.

    Deterministic order, no duplicates; cusps appended separately up to
    max_cusps since they do not constrain the index.
    """
    s = _check_positive_int(s, "s")
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
        raise InvalidInput(f"cap must be a nonnegative integer, got {cap!r}")
    if not isinstance(max_cusps, int) or isinstance(max_cusps, bool) or max_cusps < 0:
        raise InvalidInput(f"max_cusps must be a nonnegative integer, got {max_cusps!r}")
    letters = basket_alphabet(s)
    for size in range(cap + 1):
        for combo in itertools.combinations_with_replacement(letters, size):
            for cusps in range(max_cusps + 1):
                yield Basket(combo + (cusp(),) * cusps)


@dataclass(frozen=True)
class EnumerationQuery:
    k1: Fraction
    k2: Fraction
    s: int
    chi_set: frozenset[int]
    basket_cap: int
    include_cusps: bool = True
    max_cusps: int = 0
    q_index_divides: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k1", as_rational(self.k1))
        object.__setattr__(self, "k2", as_rational(self.k2))
        object.__setattr__(self, "chi_set", frozenset(self.chi_set))
        _check_positive_int(self.s, "s")
        if any(not isinstance(chi, int) or isinstance(chi, bool) for chi in self.chi_set):
            raise InvalidInput("chi_set must contain integers")
        if self.basket_cap < 0:
            raise InvalidInput(f"basket_cap must be nonnegative, got {self.basket_cap!r}")
        if self.max_cusps < 0:
            raise InvalidInput(f"max_cusps must be nonnegative, got {self.max_cusps!r}")

    @property
    def effective_max_cusps(self) -> int:
        return self.max_cusps if self.include_cusps else 0


@dataclass(frozen=True)
class EnumeratedFunction:
    """One Hilbert function together with every basket that realized it."""

    function: HilbertFunction
    witnesses: tuple[Basket, ...]


def _basket_sort_key(basket: Basket):
    return tuple(p.sort_key for p in basket)


def _scan_chunk(query: EnumerationQuery, chunk: list[Basket]) -> dict:
    found: dict[tuple, tuple[HilbertFunction, set[Basket]]] = {}
    for basket in chunk:
        idx = q_index(basket)
        if idx != query.s and not (query.q_index_divides and query.s % idx == 0):
            continue
        for chi in sorted(query.chi_set):
            numerics = ModelNumerics(k1=query.k1, k2=query.k2, chi=chi, basket=basket)
            if not integrality_check(numerics):
                continue
            func = to_hilbert_function(numerics).canonicalized()
            key = func.sort_key()
            if key in found:
                old, witnesses = found[key]
                merged = old if old.extrapolated or not func.extrapolated else func
                witnesses.add(basket)
                found[key] = (merged, witnesses)
            else:
                found[key] = (func, {basket})
    return found


def enumerate_hilbert(query: EnumerationQuery, worker_count: int = 1) -> tuple[EnumeratedFunction, ...]:
    """Deduplicated Hilbert functions for the query, canonical order.

    Baskets are scanned by ``worker_count`` threads over round-robin
    chunks; the merge is keyed on canonical forms and witness sets are
    unioned, so the output is identical for every worker count.
    """
    _check_positive_int(worker_count, "worker_count")
    if query.k1 <= 0:
        raise NonPositiveVolume(f"leading self-intersection must be positive, got {query.k1}")
    baskets = list(enumerate_baskets(query.s, query.basket_cap, query.effective_max_cusps))
    chunks = [baskets[i::worker_count] for i in range(worker_count)]
    if worker_count == 1:
        partials = [_scan_chunk(query, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=worker_count) as pool:
            partials = list(pool.map(lambda chunk: _scan_chunk(query, chunk), chunks))
    merged: dict[tuple, tuple[HilbertFunction, set[Basket]]] = {}
    for partial in partials:
        for key, (func, witnesses) in partial.items():
            if key in merged:
                old, seen = merged[key]
                keep = old if old.extrapolated or not func.extrapolated else func
                merged[key] = (keep, seen | witnesses)
            else:
                merged[key] = (func, set(witnesses))
    return tuple(
        EnumeratedFunction(
            function=func,
            witnesses=tuple(sorted(witnesses, key=_basket_sort_key)),
        )
        for _, (func, witnesses) in sorted(merged.items(), key=lambda item: item[0])
    )
