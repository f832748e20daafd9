"""Local correction profiles at surface singular points and their baskets.

A singular point enters the Euler characteristic formula only through the
sequence m -> a(x, m*K) of local correction terms, so a point is recorded
here as a :class:`LocalProfile`: one of four numerical kinds together with a
local Cartier index. A :class:`Basket` is a finite multiset of profiles with
a canonical ordering, which is what enumeration and deduplication key on.

The four kinds:

``TerminalCyclic``
    cyclic quotient point of index n >= 2; term 0 when n | m and
    -(n-1)/(2n) when m is congruent to +-1 mod n. At the remaining
    residues the exact value depends on local data this package does not
    model, so the default table extrapolates -r(n-r)/(2n) at residue r and
    every evaluation that lands there is reported as extrapolated (see
    :func:`uses_extrapolation`). Callers who know the true table can attach
    an ``override`` of length n.

``DihedralZero``
    term identically 0; carries a configurable index in {1, 2} (default 2)
    because the vanishing alone does not pin the Cartier index.

``DihedralHalf``
    term -1/2 at odd m, 0 at even m; index 2.

``NonQGorCusp``
    term -1 for every m > 0; no finite local index, so it is excluded from
    :func:`q_index`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import InvalidInput, InvalidOverride
from .exact_core import vector


class SingularityKind(str, enum.Enum):
    TERMINAL_CYCLIC = "TerminalCyclic"
    DIHEDRAL_ZERO = "DihedralZero"
    DIHEDRAL_HALF = "DihedralHalf"
    NON_QGOR_CUSP = "NonQGorCusp"


@dataclass(frozen=True)
class LocalProfile:
    kind: SingularityKind
    local_index: Optional[int]
    override: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        kind = SingularityKind(self.kind)
        object.__setattr__(self, "kind", kind)
        idx = self.local_index
        if kind is SingularityKind.TERMINAL_CYCLIC:
            if not isinstance(idx, int) or isinstance(idx, bool) or idx < 2:
                raise InvalidInput(f"terminal cyclic profile needs index >= 2, got {idx!r}")
            if self.override is not None:
                table = vector(self.override)
                if len(table) != idx:
                    raise InvalidOverride(
                        f"override table has length {len(table)}, index is {idx}",
                        expected=idx,
                    )
                if table[0] != 0:
                    raise InvalidOverride("override table must vanish at residue 0")
                if any(value > 0 for value in table):
                    raise InvalidOverride("override table must be nonpositive")
                object.__setattr__(self, "override", table)
        else:
            if self.override is not None:
                raise InvalidOverride(f"override tables only apply to terminal cyclic profiles")
            if kind is SingularityKind.DIHEDRAL_ZERO:
                if idx not in (1, 2):
                    raise InvalidInput(f"dihedral-zero index must be 1 or 2, got {idx!r}")
            elif kind is SingularityKind.DIHEDRAL_HALF:
                if idx != 2:
                    raise InvalidInput(f"dihedral-half index is fixed at 2, got {idx!r}")
            elif idx is not None:
                raise InvalidInput(f"cusp profiles carry no local index, got {idx!r}")

    @property
    def sort_key(self):
        return (
            self.kind.value,
            self.local_index or 0,
            self.override if self.override is not None else (),
        )


def terminal_cyclic(n: int, override: Optional[Iterable] = None) -> LocalProfile:
    return LocalProfile(
        SingularityKind.TERMINAL_CYCLIC,
        n,
        tuple(override) if override is not None else None,
    )


def dihedral_zero(index: int = 2) -> LocalProfile:
    return LocalProfile(SingularityKind.DIHEDRAL_ZERO, index)


def dihedral_half() -> LocalProfile:
    return LocalProfile(SingularityKind.DIHEDRAL_HALF, 2)


def cusp() -> LocalProfile:
    return LocalProfile(SingularityKind.NON_QGOR_CUSP, None)


def _check_multiple(m) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InvalidInput(f"multiple must be a nonnegative integer, got {m!r}")
    return m


def local_term(profile: LocalProfile, m: int) -> Fraction:
    """Correction term of one point at the m-th multiple; 0 at m = 0."""
    m = _check_multiple(m)
    if m == 0:
        return Fraction(0)
    kind = profile.kind
    if kind is SingularityKind.NON_QGOR_CUSP:
        return Fraction(-1)
    if kind is SingularityKind.DIHEDRAL_ZERO:
        return Fraction(0)
    if kind is SingularityKind.DIHEDRAL_HALF:
        return Fraction(-1, 2) if m % 2 else Fraction(0)
    n = profile.local_index
    r = m % n
    if profile.override is not None:
        return profile.override[r]
    if r == 0:
        return Fraction(0)
    if r == 1 or r == n - 1:
        return Fraction(-(n - 1), 2 * n)
    return Fraction(-r * (n - r), 2 * n)


def uses_extrapolation(profile: LocalProfile, m: int) -> bool:
    """Whether evaluating at m touches a residue with no backed value.

    True only for terminal cyclic profiles at residues outside {0, 1, n-1};
    the value there is either the default extrapolation or a caller-supplied
    override, and in both cases downstream reports carry the flag.
    """
    m = _check_multiple(m)
    if m == 0 or profile.kind is not SingularityKind.TERMINAL_CYCLIC:
        return False
    r = m % profile.local_index
    return r not in (0, 1, profile.local_index - 1)


@dataclass(frozen=True)
class Basket:
    """Finite multiset of local profiles, stored in canonical order."""

    profiles: tuple[LocalProfile, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.profiles, key=lambda p: p.sort_key))
        object.__setattr__(self, "profiles", ordered)

    @classmethod
    def of(cls, *profiles: LocalProfile) -> "Basket":
        return cls(tuple(profiles))

    def __iter__(self) -> Iterator[LocalProfile]:
        return iter(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)


def basket_term(basket: Basket, m: int) -> Fraction:
    m = _check_multiple(m)
    return sum((local_term(p, m) for p in basket), Fraction(0))


def basket_uses_extrapolation(basket: Basket, m: int) -> bool:
    return any(uses_extrapolation(p, m) for p in basket)


def q_index(basket: Basket) -> int:
    """Least m >= 1 making the m-th multiple Cartier at every finite-index point.

    Cusps carry no finite index and are excluded; the empty product is 1.
    """
    return math.lcm(
        *(p.local_index for p in basket if p.kind is not SingularityKind.NON_QGOR_CUSP)
    )


@dataclass(frozen=True)
class SizeBoundVerdict:
    sum_neg_a: Fraction
    size: int
    bound_holds: bool


def basket_size_bound(basket: Basket) -> SizeBoundVerdict:
    """Diagnostics relating the first correction term to the basket size.

    ``sum_neg_a`` is the negated full-basket term at m = 1 and ``size``
    counts every profile except index-1 dihedral-zero points (which are
    smooth-like for all purposes here). ``bound_holds`` checks
    sum >= size/2 restricted to the terminal-cyclic and dihedral-half
    profiles; an index-2 terminal point contributes only 1/4, so the
    restricted inequality can genuinely fail and the caller gets both
    numbers to judge with.
    """
    sum_neg_a = -basket_term(basket, 1)
    size = sum(
        1
        for p in basket
        if not (p.kind is SingularityKind.DIHEDRAL_ZERO and p.local_index == 1)
    )
    weighted = [
        p
        for p in basket
        if p.kind in (SingularityKind.TERMINAL_CYCLIC, SingularityKind.DIHEDRAL_HALF)
    ]
    restricted_sum = -sum((local_term(p, 1) for p in weighted), Fraction(0))
    holds = restricted_sum >= Fraction(len(weighted), 2)
    return SizeBoundVerdict(sum_neg_a=sum_neg_a, size=size, bound_holds=holds)
