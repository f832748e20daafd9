"""Divisor lattices on surfaces and intersection numbers through a resolution.

A :class:`SurfaceModel` is a free lattice of curve classes with an exact
symmetric pairing, a labelled basis, and optionally a canonical class and
further named classes. Divisors on a singular surface never appear
directly: a :class:`ResolutionData` declares which basis positions of a
smooth model are the exceptional curves of a resolution, and downstairs
divisors enter as their strict transforms upstairs. The pullback of a Weil
divisor is then the unique correction of the strict transform by
exceptional classes that pairs to zero with every exceptional curve; this
is well posed exactly because the exceptional Gram matrix is negative
definite, which is validated when the resolution is constructed.

Intersection numbers of downstairs divisors are the ambient pairings of
their pullbacks. Positivity checks (big, nef, positive on curves) are
relative to caller-supplied finite curve lists; no claim is made about
classes not in the list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, InvalidInput, NotNegativeDefinite
from .exact_core import (
    SymmetricPairing,
    Vector,
    signature,
    solve_linear,
    vec_scale,
    vector,
)


@dataclass(frozen=True)
class SurfaceModel:
    basis_labels: tuple[str, ...]
    pairing: SymmetricPairing
    canonical_class: Optional[Vector] = None
    distinguished_classes: Mapping[str, Vector] = field(default_factory=dict)

    def __post_init__(self):
        labels = tuple(self.basis_labels)
        if len(set(labels)) != len(labels):
            raise InvalidInput("basis labels must be distinct", labels=labels)
        if not all(isinstance(l, str) and l for l in labels):
            raise InvalidInput("basis labels must be nonempty strings")
        if self.pairing.dimension != len(labels):
            raise DimensionMismatch(
                f"pairing dimension {self.pairing.dimension} != {len(labels)} basis labels"
            )
        object.__setattr__(self, "basis_labels", labels)
        if self.canonical_class is not None:
            object.__setattr__(self, "canonical_class", self._coerce(self.canonical_class))
        object.__setattr__(
            self,
            "distinguished_classes",
            {name: self._coerce(cls) for name, cls in dict(self.distinguished_classes).items()},
        )

    def _coerce(self, cls) -> Vector:
        v = vector(cls)
        if len(v) != len(self.basis_labels):
            raise DimensionMismatch(
                f"class of length {len(v)} on a lattice of rank {len(self.basis_labels)}"
            )
        return v

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return self.pairing.pair(self._coerce(u), self._coerce(v))

    def square(self, u: Sequence) -> Fraction:
        return self.pair(u, u)

    def resolve_class(self, label: str) -> Vector:
        """Look up a named class; canonical_class answers to "K"."""
        if label == "K" and self.canonical_class is not None:
            return self.canonical_class
        if label in self.distinguished_classes:
            return self.distinguished_classes[label]
        if label in self.basis_labels:
            i = self.basis_labels.index(label)
            return vector([1 if j == i else 0 for j in range(self.rank)])
        raise InvalidInput(f"unknown class label {label!r}", known=sorted(self.distinguished_classes))


@dataclass(frozen=True)
class ResolutionData:
    """Smooth ambient model plus the basis positions of its exceptional curves.

    ``strict_transforms`` optionally names downstairs divisors by their
    strict transforms upstairs, for file-driven workflows. The exceptional
    Gram matrix is checked negative definite here, at construction; every
    later solve relies on it.
    """

    ambient: SurfaceModel
    exceptional_indices: tuple[int, ...]
    strict_transforms: Mapping[str, Vector] = field(default_factory=dict)

    def __post_init__(self):
        indices = tuple(int(i) for i in self.exceptional_indices)
        if len(set(indices)) != len(indices):
            raise InvalidInput("exceptional positions must be distinct", indices=indices)
        for i in indices:
            if not 0 <= i < self.ambient.rank:
                raise InvalidInput(
                    f"exceptional position {i} outside lattice of rank {self.ambient.rank}"
                )
        object.__setattr__(self, "exceptional_indices", indices)
        object.__setattr__(
            self,
            "strict_transforms",
            {name: self.ambient._coerce(v) for name, v in dict(self.strict_transforms).items()},
        )
        validate_resolution(self)

    @property
    def exceptional_gram(self) -> SymmetricPairing:
        return self.ambient.pairing.restrict(self.exceptional_indices)


def validate_resolution(res: ResolutionData) -> None:
    """Exceptional Gram must be negative definite; raises otherwise."""
    gram = res.exceptional_gram
    sig = signature(gram)
    if sig != (0, gram.dimension, 0):
        raise NotNegativeDefinite(
            "exceptional pairing matrix is not negative definite",
            signature=sig,
            indices=res.exceptional_indices,
        )


def mumford_pullback(res: ResolutionData, strict: Sequence) -> Vector:
    """Correct a strict transform to pair to zero with every exceptional curve.

    Solves the square system on the exceptional Gram matrix and returns
    strict + sum of x_i * E_i. When the strict transform is already
    orthogonal to the exceptional locus the correction is zero and the
    input comes back unchanged.
    """
    strict = res.ambient._coerce(strict)
    indices = res.exceptional_indices
    if not indices:
        return strict
    image = res.ambient.pairing.apply(strict)
    rhs = vec_scale(-1, [image[j] for j in indices])
    coefficients = solve_linear(res.exceptional_gram, rhs)
    result = list(strict)
    for position, coefficient in zip(indices, coefficients):
        result[position] += coefficient
    return tuple(result)


def weil_intersect(res: ResolutionData, strict1: Sequence, strict2: Sequence) -> Fraction:
    return res.ambient.pairing.pair(
        mumford_pullback(res, strict1), mumford_pullback(res, strict2)
    )


@dataclass(frozen=True)
class AmplitudeVerdict:
    big: bool
    strictly_positive_on_curves: bool


def numerical_amplitude_check(
    model: SurfaceModel, divisor: Sequence, curves: Sequence[Sequence]
) -> AmplitudeVerdict:
    """D^2 > 0 and D.C > 0 for every supplied curve class.

    The verdict is relative to the supplied finite list; it says nothing
    about curves not in it.
    """
    d = model._coerce(divisor)
    return AmplitudeVerdict(
        big=model.square(d) > 0,
        strictly_positive_on_curves=all(model.pair(d, c) > 0 for c in curves),
    )


def nef_check(model: SurfaceModel, divisor: Sequence, curves: Sequence[Sequence]) -> bool:
    d = model._coerce(divisor)
    return all(model.pair(d, c) >= 0 for c in curves)
