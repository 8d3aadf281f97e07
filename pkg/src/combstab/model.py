"""Exact numerical model for vector bundles on comb-like nodal curves.

A comb-like curve has N >= 2 smooth components: teeth C_1, ..., C_{N-1}
each meet the spine C_N in exactly one node p_j and meet nothing else.
Bundles are modelled by their numerical shadow only: rank, per-component
degrees, and the Euler characteristics derived from them.  All arithmetic
is exact; rationals are :class:`fractions.Fraction` and floating point is
banned throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def _check_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an integer, got {value!r}")
    return value


def _as_fraction(value: object, what: str) -> Fraction:
    """Coerce to an exact rational; floats are rejected, never rounded."""
    if isinstance(value, float):
        raise TypeError(f"{what} must be exact (int, Fraction or 'p/q' string), got float {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"{what} must be exact (int, Fraction or 'p/q' string), got {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction in lowest terms.

    Decimal notation is rejected: the wire format is exact by contract.
    """
    s = text.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Render in lowest terms: ``"p/q"``, or plain ``"p"`` for integers."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class CombCurve:
    """Numerical shape of a comb-like curve: one genus per component.

    Component indices are 1-based; the last index N is the spine.
    The arithmetic genus of the comb is the plain sum of the g_j.
    """

    genera: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "genera", tuple(self.genera))
        if len(self.genera) < 2:
            raise ValueError("a comb-like curve needs at least 2 components")
        for j, g in enumerate(self.genera, start=1):
            _check_int(g, f"genus of component {j}")
            if g < 0:
                raise ValueError(f"genus of component {j} is negative: {g}")

    @property
    def num_components(self) -> int:
        return len(self.genera)

    @property
    def arithmetic_genus(self) -> int:
        return sum(self.genera)


@dataclass(frozen=True)
class BundleData:
    """Rank and multidegree of a bundle on the comb (same rank on every component)."""

    rank: int
    multidegree: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "multidegree", tuple(self.multidegree))
        _check_int(self.rank, "rank")
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        for j, d in enumerate(self.multidegree, start=1):
            _check_int(d, f"degree on component {j}")


@dataclass(frozen=True)
class Polarization:
    """Tuple of rational weights, one per component.

    Validity (each weight strictly between 0 and 1, exact sum 1) is checked
    by :func:`validate_polarization`, not by the constructor, so that the
    checker can report violations on arbitrary input.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(_as_fraction(w, f"weight {j}") for j, w in enumerate(self.weights, start=1))
        object.__setattr__(self, "weights", coerced)

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "Polarization":
        return cls(tuple(parse_rational(s) for s in items))


@dataclass(frozen=True)
class SubsheafProfile:
    """Multirank and Euler characteristic of a candidate subsheaf.

    This is the unit of slope comparison: witnesses against semistability
    are reported as profiles, never as geometric objects.
    """

    multirank: tuple[int, ...]
    euler: int
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "multirank", tuple(self.multirank))
        _check_int(self.euler, "euler characteristic")
        for j, r in enumerate(self.multirank, start=1):
            _check_int(r, f"multirank entry {j}")
            if r < 0:
                raise ValueError(f"multirank entry {j} is negative: {r}")
        if not any(self.multirank):
            raise ValueError("multirank must not be identically zero")


def component_euler(genus: int, rank: int, degree: int) -> int:
    """Euler characteristic d + n(1 - g) of a rank-n, degree-d bundle on a genus-g curve."""
    _check_int(genus, "genus")
    _check_int(rank, "rank")
    _check_int(degree, "degree")
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    return degree + rank * (1 - genus)


def _check_lengths(curve: CombCurve, values: Sequence[object], what: str) -> None:
    if len(values) != curve.num_components:
        raise ValueError(
            f"{what} has {len(values)} entries for a curve with {curve.num_components} components"
        )


def component_eulers(curve: CombCurve, bundle: BundleData) -> tuple[int, ...]:
    """Per-component Euler characteristics chi_j of the bundle's restrictions."""
    _check_lengths(curve, bundle.multidegree, "multidegree")
    return tuple(
        component_euler(g, bundle.rank, d) for g, d in zip(curve.genera, bundle.multidegree)
    )


def total_euler(curve: CombCurve, bundle: BundleData) -> int:
    """Euler characteristic of the bundle on the whole comb.

    Gluing at the N-1 nodes costs rank * (N-1) against the sum of the
    component values.
    """
    chis = component_eulers(curve, bundle)
    return sum(chis) - bundle.rank * (curve.num_components - 1)


def full_profile(curve: CombCurve, bundle: BundleData, label: str = "") -> SubsheafProfile:
    """Profile of the bundle itself: full multirank, total Euler characteristic."""
    n = bundle.rank
    return SubsheafProfile(
        multirank=(n,) * curve.num_components,
        euler=total_euler(curve, bundle),
        label=label or "whole-bundle",
    )


def slope(profile: SubsheafProfile, polarization: Polarization) -> Fraction:
    """Polarized slope: euler characteristic over the weighted multirank sum."""
    if len(profile.multirank) != len(polarization.weights):
        raise ValueError(
            f"multirank has {len(profile.multirank)} entries, polarization has "
            f"{len(polarization.weights)}"
        )
    denom = sum(w * r for w, r in zip(polarization.weights, profile.multirank))
    if denom <= 0:
        raise ValueError(f"weighted multirank must be positive, got {denom}")
    return Fraction(profile.euler) / denom


def validate_polarization(polarization: Polarization) -> list[str]:
    """Check 0 < w_j < 1 for every j and exact sum 1; return violations (empty = ok)."""
    violations: list[str] = []
    for j, w in enumerate(polarization.weights, start=1):
        if not w > 0:
            violations.append(f"w_{j} = {format_rational(w)} is not > 0")
        if not w < 1:
            violations.append(f"w_{j} = {format_rational(w)} is not < 1")
    total = sum(polarization.weights, Fraction(0))
    if total != 1:
        violations.append(f"weights sum to {format_rational(total)}, not 1")
    return violations
