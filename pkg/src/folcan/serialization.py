"""JSON document schemas with exact rationals as canonical "p/q" strings.

Every number that crosses a file boundary is a string in lowest terms, so
documents round-trip bit-exactly; nothing is ever widened to binary
floating point. Structural problems with a document (missing keys, wrong
shapes, unparseable rationals, unknown kind tags) raise
:class:`DocumentError`, which the CLI reports as an input error, while
well-formed documents describing invalid mathematics (say a resolution
whose exceptional matrix is not negative definite) raise the domain
errors of the constructing module and are reported as validation
failures.

``dumps`` is the single serializer: sorted keys, two-space indent,
trailing newline, so byte-identical output for equal payloads.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Optional

from .baskets import (
    Basket,
    LocalProfile,
    SingularityKind,
    cusp,
    dihedral_half,
    dihedral_zero,
    terminal_cyclic,
)
from .bounds import EnumeratedFunction
from .errors import DocumentError
from .exact_core import SymmetricPairing, Vector, format_rational, parse_rational
from .riemann_roch import HilbertFunction, ModelNumerics
from .surface_model import ResolutionData, SurfaceModel


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def rational_to_json(value) -> str:
    return format_rational(value)


def rational_from_json(raw) -> Fraction:
    if not isinstance(raw, str):
        raise DocumentError(f"rational values must be 'p/q' strings, got {raw!r}")
    try:
        return parse_rational(raw)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def vector_to_json(v) -> list[str]:
    return [format_rational(x) for x in v]


def vector_from_json(raw) -> Vector:
    if not isinstance(raw, list):
        raise DocumentError(f"expected a list of rationals, got {raw!r}")
    return tuple(rational_from_json(x) for x in raw)


def _require(data: Any, key: str):
    if not isinstance(data, dict):
        raise DocumentError(f"expected an object, got {type(data).__name__}")
    if key not in data:
        raise DocumentError(f"missing required field {key!r}")
    return data[key]


def _integer(raw, what: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise DocumentError(f"{what} must be an integer, got {raw!r}")
    return raw


# ---------------------------------------------------------------- baskets

def profile_to_json(profile: LocalProfile) -> dict:
    doc: dict[str, Any] = {"kind": profile.kind.value}
    if profile.local_index is not None:
        doc["n"] = profile.local_index
    if profile.override is not None:
        doc["override"] = vector_to_json(profile.override)
    return doc


def profile_from_json(data) -> LocalProfile:
    kind_tag = _require(data, "kind")
    try:
        kind = SingularityKind(kind_tag)
    except ValueError as exc:
        raise DocumentError(
            f"unknown singularity kind {kind_tag!r}",
            known=sorted(k.value for k in SingularityKind),
        ) from exc
    if kind is SingularityKind.TERMINAL_CYCLIC:
        n = _integer(_require(data, "n"), "terminal index")
        override = data.get("override")
        return terminal_cyclic(n, vector_from_json(override) if override is not None else None)
    if "override" in data:
        raise DocumentError("override tables only apply to TerminalCyclic entries")
    if kind is SingularityKind.DIHEDRAL_ZERO:
        return dihedral_zero(_integer(data.get("n", 2), "dihedral-zero index"))
    if kind is SingularityKind.DIHEDRAL_HALF:
        if "n" in data and data["n"] != 2:
            raise DocumentError(f"dihedral-half index is fixed at 2, got {data['n']!r}")
        return dihedral_half()
    if "n" in data:
        raise DocumentError("cusp entries carry no index")
    return cusp()


def basket_to_json(basket: Basket) -> list[dict]:
    return [profile_to_json(p) for p in basket]


def basket_from_json(raw) -> Basket:
    if not isinstance(raw, list):
        raise DocumentError(f"basket must be a list of profile objects, got {raw!r}")
    return Basket(tuple(profile_from_json(item) for item in raw))


# ---------------------------------------------------------------- numerics

def numerics_to_json(num: ModelNumerics) -> dict:
    doc: dict[str, Any] = {
        "k1": rational_to_json(num.k1),
        "k2": rational_to_json(num.k2),
        "chi": num.chi,
        "basket": basket_to_json(num.basket),
    }
    if num.kx2 is not None:
        doc["kx2"] = rational_to_json(num.kx2)
    if num.general_type:
        doc["general_type"] = True
    return doc


def numerics_from_json(data) -> ModelNumerics:
    kx2 = data.get("kx2") if isinstance(data, dict) else None
    general = data.get("general_type", False) if isinstance(data, dict) else False
    if not isinstance(general, bool):
        raise DocumentError(f"general_type must be a boolean, got {general!r}")
    return ModelNumerics(
        k1=rational_from_json(_require(data, "k1")),
        k2=rational_from_json(_require(data, "k2")),
        chi=_integer(_require(data, "chi"), "chi"),
        basket=basket_from_json(data.get("basket", [])),
        kx2=rational_from_json(kx2) if kx2 is not None else None,
        general_type=general,
    )


# ---------------------------------------------------------------- models

def model_to_json(model: SurfaceModel, resolution: Optional[ResolutionData] = None) -> dict:
    doc: dict[str, Any] = {
        "basis_labels": list(model.basis_labels),
        "pairing": [vector_to_json(row) for row in model.pairing.entries],
    }
    if model.canonical_class is not None:
        doc["canonical_class"] = vector_to_json(model.canonical_class)
    if model.distinguished_classes:
        doc["distinguished_classes"] = {
            name: vector_to_json(v) for name, v in sorted(model.distinguished_classes.items())
        }
    if resolution is not None:
        block: dict[str, Any] = {"exceptional_indices": list(resolution.exceptional_indices)}
        if resolution.strict_transforms:
            block["strict_transforms"] = {
                name: vector_to_json(v) for name, v in sorted(resolution.strict_transforms.items())
            }
        doc["resolution"] = block
    return doc


def model_from_json(data) -> tuple[SurfaceModel, Optional[ResolutionData]]:
    labels = _require(data, "basis_labels")
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise DocumentError("basis_labels must be a list of strings")
    rows_raw = _require(data, "pairing")
    if not isinstance(rows_raw, list):
        raise DocumentError("pairing must be a list of rows")
    rows = tuple(vector_from_json(row) for row in rows_raw)
    canonical = data.get("canonical_class")
    distinguished_raw = data.get("distinguished_classes", {})
    if not isinstance(distinguished_raw, dict):
        raise DocumentError("distinguished_classes must be an object")
    model = SurfaceModel(
        basis_labels=tuple(labels),
        pairing=SymmetricPairing(rows),
        canonical_class=vector_from_json(canonical) if canonical is not None else None,
        distinguished_classes={
            name: vector_from_json(v) for name, v in distinguished_raw.items()
        },
    )
    resolution = None
    if "resolution" in data:
        block = data["resolution"]
        indices = _require(block, "exceptional_indices")
        if not isinstance(indices, list):
            raise DocumentError("exceptional_indices must be a list of integers")
        strict_raw = block.get("strict_transforms", {})
        if not isinstance(strict_raw, dict):
            raise DocumentError("strict_transforms must be an object")
        resolution = ResolutionData(
            ambient=model,
            exceptional_indices=tuple(_integer(i, "exceptional index") for i in indices),
            strict_transforms={name: vector_from_json(v) for name, v in strict_raw.items()},
        )
    return model, resolution


# ---------------------------------------------------------------- tables

def value_window(h: HilbertFunction) -> int:
    """Window length controlling integrality, recomputed from the function."""
    return math.lcm(h.period, 2 * h.k1.denominator, 2 * h.k2.denominator)


def hilbert_function_to_json(h: HilbertFunction) -> dict:
    return {
        "k1": rational_to_json(h.k1),
        "k2": rational_to_json(h.k2),
        "chi": h.chi,
        "period": h.period,
        "correction": vector_to_json(h.correction),
        "extrapolated": h.extrapolated,
    }


def hilbert_function_from_json(data) -> HilbertFunction:
    extrapolated = data.get("extrapolated", False) if isinstance(data, dict) else False
    if not isinstance(extrapolated, bool):
        raise DocumentError(f"extrapolated must be a boolean, got {extrapolated!r}")
    return HilbertFunction(
        k1=rational_from_json(_require(data, "k1")),
        k2=rational_from_json(_require(data, "k2")),
        chi=_integer(_require(data, "chi"), "chi"),
        period=_integer(_require(data, "period"), "period"),
        correction=vector_from_json(_require(data, "correction")),
        extrapolated=extrapolated,
    )


def enumerated_function_to_json(entry: EnumeratedFunction) -> dict:
    h = entry.function
    table_end = 2 * value_window(h)
    return {
        "function": hilbert_function_to_json(h),
        "witnesses": [basket_to_json(b) for b in entry.witnesses],
        "values": {str(m): rational_to_json(h.value(m)) for m in range(table_end + 1)},
    }
