"""Convergence-region bookkeeping for spectral parameters.

A spectral parameter is a linear functional given by its values on the
l + 1 simple coroots of an affine ambient (plus an optional value on the
scaling direction, carried but never used by any formula here).  The
central value is its pairing with the canonical central element, the
comark-weighted sum of coroot values plus the value on the attached node.
Region thresholds are multiples of the dual Coxeter number g: strictly
below -2g the everywhere-minimal parameters live, between -2g and -g lies
the continuation range, -g is the boundary locus, beyond it is outside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import roots, serialize
from .cartan import CartanMatrix
from .errors import InvalidCartanMatrixError, InvalidSubsetError, RegionError

Number = int | float | complex | Fraction

BOUNDARY_TOLERANCE = 1e-12  # float comparisons against the -g locus

REGION_CONVERGENT = "convergent"
REGION_CONTINUED = "continued"
REGION_BOUNDARY = "boundary"
REGION_OUTSIDE = "outside"


@dataclass(frozen=True)
class LinearFunctional:
    """Values on the simple coroots, exact or floating as given."""

    values: tuple[Number, ...]
    d_value: Number | None = None

    def __post_init__(self):
        for x in self.values:
            if isinstance(x, bool) or not isinstance(x, (int, float, complex, Fraction)):
                raise TypeError(f"functional value {x!r} is not a number")

    @property
    def size(self) -> int:
        return len(self.values)


def functional(values, d_value: Number | None = None) -> LinearFunctional:
    return LinearFunctional(values=tuple(values), d_value=d_value)


def _check_dimension(cm: CartanMatrix, f: LinearFunctional) -> None:
    if not cm.is_affine:
        raise InvalidCartanMatrixError("spectral parameters live over an affine ambient")
    if f.size != cm.size:
        raise InvalidSubsetError(
            f"functional has {f.size} values, ambient has {cm.size} coroots"
        )


def _real(x: Number):
    # int, float, and Fraction all expose themselves through .real
    return x.real


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def weyl_vector(cm: CartanMatrix) -> LinearFunctional:
    """The functional taking the value 1 on every simple coroot."""
    if not cm.is_affine:
        raise InvalidCartanMatrixError("spectral parameters live over an affine ambient")
    return LinearFunctional(values=(1,) * cm.size)


def shift_by_weyl_vector(f: LinearFunctional) -> LinearFunctional:
    return LinearFunctional(values=tuple(x + 1 for x in f.values), d_value=f.d_value)


def central_value(cm: CartanMatrix, f: LinearFunctional) -> Number:
    """Pairing with the canonical central element: comark-weighted coroot
    values plus the attached-node value.  Exact when the inputs are."""
    _check_dimension(cm, f)
    weights = roots.central_coroot(cm)
    return sum(w * x for w, x in zip(weights, f.values))


def godement_minimal(f: LinearFunctional) -> bool:
    """Every coroot value has real part strictly below -2."""
    return all(_real(x) < -2 for x in f.values)


@dataclass(frozen=True)
class RegionReport:
    region: str
    central: Number
    real_part: Number
    g: int


def godement_cuspidal(cm: CartanMatrix, f: LinearFunctional) -> RegionReport:
    """Classify the central value against the -2g / -g thresholds.

    Exact inputs compare exactly.  Floating inputs use an absolute
    tolerance of 1e-12 against the -g boundary locus only; the -2g edge
    stays a sharp split between convergent and continued.
    """
    g = roots.dual_coxeter(cm)
    central = central_value(cm, f)
    re = _real(central)
    if _is_exact(re):
        if re == -g:
            region = REGION_BOUNDARY
        elif re < -2 * g:
            region = REGION_CONVERGENT
        elif re < -g:
            region = REGION_CONTINUED
        else:
            region = REGION_OUTSIDE
    else:
        rf = float(re)
        if abs(rf + g) <= BOUNDARY_TOLERANCE:
            region = REGION_BOUNDARY
        elif rf < -2 * g:
            region = REGION_CONVERGENT
        elif rf < -g:
            region = REGION_CONTINUED
        else:
            region = REGION_OUTSIDE
    return RegionReport(region=region, central=central, real_part=re, g=g)


def implication_check(cm: CartanMatrix, f: LinearFunctional) -> bool:
    """Everywhere-minimal parameters must have central value below -2g.

    Returns True when the implication holds for this parameter (either the
    hypothesis fails or the conclusion is verified)."""
    if not godement_minimal(f):
        return True
    g = roots.dual_coxeter(cm)
    return _real(central_value(cm, f)) < -2 * g


def extend_from_central(cm: CartanMatrix, target: Number) -> LinearFunctional:
    """Equal-value functional whose central value is the target.

    The target must sit strictly inside the convergent region; each coroot
    value is target / g, exact for exact targets."""
    g = roots.dual_coxeter(cm)
    re = _real(target)
    if _is_exact(re):
        inside = re < -2 * g
    else:
        inside = float(re) < -2 * g
    if not inside:
        raise RegionError(
            f"central target {target!r} is not strictly below -2g = {-2 * g}"
        )
    if isinstance(target, int):
        value: Number = Fraction(target, g)
    elif isinstance(target, Fraction):
        value = target / g
    else:
        value = target / g
    return LinearFunctional(values=(value,) * cm.size)


def dominant_integral(cm: CartanMatrix, values) -> bool:
    """All integer values nonnegative with at least one positive."""
    vals = tuple(values)
    if len(vals) != cm.size:
        raise InvalidSubsetError(
            f"vector has {len(vals)} values, ambient has {cm.size} coroots"
        )
    for x in vals:
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"dominance test needs integers, got {x!r}")
    return all(x >= 0 for x in vals) and any(x > 0 for x in vals)


# --- serialization ----------------------------------------------------------


def functional_to_json(f: LinearFunctional) -> dict:
    out = {"values": serialize.encode_values(f.values)}
    if f.d_value is not None:
        out["d_value"] = serialize.encode_number(f.d_value)
    return out


def functional_from_json(obj) -> LinearFunctional:
    if isinstance(obj, dict):
        values = serialize.decode_values(obj["values"])
        d_value = serialize.decode_number(obj["d_value"]) if "d_value" in obj else None
        return LinearFunctional(values=values, d_value=d_value)
    return LinearFunctional(values=serialize.decode_values(obj))


def region_to_json(report: RegionReport) -> dict:
    return {
        "region": report.region,
        "nu_c": serialize.encode_number(report.central),
        "g": report.g,
    }
