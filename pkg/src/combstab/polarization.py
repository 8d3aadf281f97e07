"""Necessary slope inequalities, feasibility regions and polarization synthesis.

For a bundle of rank n with component Euler characteristics chi_j and total
chi, a polarization w can only make the bundle semistable when

    w_j * chi <= chi_j <= w_j * chi + n        for j = 1, ..., N-1.

Each side of the inequality is witnessed by an explicit subsheaf profile, so
a failed check is a certificate, not just a boolean.  Solving the same
inequalities for w_j yields a rational interval per tooth; picking the
simplest rational in each strict interval and completing on the spine
constructs a polarization whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import kernels
from .model import (
    BundleData,
    CombCurve,
    Polarization,
    SubsheafProfile,
    component_eulers,
    format_rational,
    slope,
    total_euler,
    validate_polarization,
)


@dataclass(frozen=True)
class IntervalQ:
    """Rational interval with independently open/closed endpoints.

    ``None`` bounds mean minus/plus infinity.  Emptiness is a derived
    property; :meth:`empty` gives the canonical empty interval.
    """

    lo: Fraction | None
    hi: Fraction | None
    lo_open: bool = False
    hi_open: bool = False

    @classmethod
    def closed(cls, lo: Fraction, hi: Fraction) -> "IntervalQ":
        return cls(lo, hi, lo_open=False, hi_open=False)

    @classmethod
    def open(cls, lo: Fraction, hi: Fraction) -> "IntervalQ":
        return cls(lo, hi, lo_open=True, hi_open=True)

    @classmethod
    def empty(cls) -> "IntervalQ":
        return cls(Fraction(0), Fraction(0), lo_open=True, hi_open=True)

    @property
    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return self.lo_open or self.hi_open
        return False

    def contains(self, value: Fraction) -> bool:
        if self.lo is not None:
            if self.lo_open and not value > self.lo:
                return False
            if not self.lo_open and not value >= self.lo:
                return False
        if self.hi is not None:
            if self.hi_open and not value < self.hi:
                return False
            if not self.hi_open and not value <= self.hi:
                return False
        return True

    def intersect(self, other: "IntervalQ") -> "IntervalQ":
        if self.lo is None:
            lo, lo_open = other.lo, other.lo_open
        elif other.lo is None or self.lo > other.lo:
            lo, lo_open = self.lo, self.lo_open
        elif other.lo > self.lo:
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open or other.lo_open
        if self.hi is None:
            hi, hi_open = other.hi, other.hi_open
        elif other.hi is None or self.hi < other.hi:
            hi, hi_open = self.hi, self.hi_open
        elif other.hi < self.hi:
            hi, hi_open = other.hi, other.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open or other.hi_open
        return IntervalQ(lo, hi, lo_open=lo_open, hi_open=hi_open)

    def minkowski_add(self, other: "IntervalQ") -> "IntervalQ":
        """Interval of all sums x + y with x in self, y in other (both nonempty)."""
        if self.is_empty or other.is_empty:
            return IntervalQ.empty()
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return IntervalQ(
            lo,
            hi,
            lo_open=self.lo_open or other.lo_open,
            hi_open=self.hi_open or other.hi_open,
        )

    def render(self) -> str:
        if self.is_empty:
            return "(empty)"
        left = "(" if self.lo_open or self.lo is None else "["
        right = ")" if self.hi_open or self.hi is None else "]"
        lo = "-inf" if self.lo is None else format_rational(self.lo)
        hi = "+inf" if self.hi is None else format_rational(self.hi)
        return f"{left}{lo}, {hi}{right}"


@dataclass(frozen=True)
class ComponentCheck:
    """Outcome of the two-sided inequality at one tooth, with witness on failure."""

    j: int
    lower_ok: bool
    upper_ok: bool
    witness: SubsheafProfile | None = None
    witness_slope: Fraction | None = None


@dataclass(frozen=True)
class NecessaryVerdict:
    components: tuple[ComponentCheck, ...]
    overall_pass: bool


def canonical_witnesses(
    curve: CombCurve, bundle: BundleData, j: int
) -> tuple[SubsheafProfile, SubsheafProfile]:
    """The two subsheaf profiles that witness failures of the inequality at tooth j.

    First the restriction to C_j twisted down at its node (supported on the
    tooth alone, euler chi_j - n); second the complementary subsheaf
    supported off the tooth (euler chi - chi_j).  1 <= j <= N-1.
    """
    if not 1 <= j <= curve.num_components - 1:
        raise IndexError(f"tooth index must be in 1..{curve.num_components - 1}, got {j}")
    n = bundle.rank
    chis = component_eulers(curve, bundle)
    chi = total_euler(curve, bundle)
    restricted = SubsheafProfile(
        multirank=tuple(n if i == j else 0 for i in range(1, curve.num_components + 1)),
        euler=chis[j - 1] - n,
        label=f"E_{j}(-p_{j})",
    )
    complement = SubsheafProfile(
        multirank=tuple(0 if i == j else n for i in range(1, curve.num_components + 1)),
        euler=chi - chis[j - 1],
        label=f"tilde-E_{j}",
    )
    return restricted, complement


def necessary_check(curve: CombCurve, bundle: BundleData, w: Polarization) -> NecessaryVerdict:
    """Test w_j*chi <= chi_j <= w_j*chi + n at every tooth, attaching witnesses.

    A lower failure is witnessed by the complementary profile, an upper
    failure by the twisted restriction; the attached witness always has
    polarized slope strictly above chi/n.
    """
    n = bundle.rank
    chis = component_eulers(curve, bundle)
    chi = total_euler(curve, bundle)
    if len(w.weights) != curve.num_components:
        raise ValueError(
            f"polarization has {len(w.weights)} weights for {curve.num_components} components"
        )
    checks = []
    for j in range(1, curve.num_components):
        wchi = w.weights[j - 1] * chi
        lower_ok = wchi <= chis[j - 1]
        upper_ok = chis[j - 1] <= wchi + n
        witness = None
        witness_slope = None
        if not (lower_ok and upper_ok):
            restricted, complement = canonical_witnesses(curve, bundle, j)
            witness = complement if not lower_ok else restricted
            witness_slope = slope(witness, w)
        checks.append(
            ComponentCheck(
                j=j,
                lower_ok=lower_ok,
                upper_ok=upper_ok,
                witness=witness,
                witness_slope=witness_slope,
            )
        )
    return NecessaryVerdict(
        components=tuple(checks),
        overall_pass=all(c.lower_ok and c.upper_ok for c in checks),
    )


@dataclass(frozen=True)
class FeasibleRegion:
    """Per-tooth weight intervals plus the simplex-completion feasibility flag."""

    intervals: tuple[IntervalQ, ...]
    feasible: bool
    strict: bool


def _tooth_interval(chi_j: int, chi: int, n: int, strict: bool) -> IntervalQ:
    open_ends = strict
    if chi < 0:
        lo = Fraction(chi_j, chi)
        hi = Fraction(chi_j - n, chi)
        return IntervalQ(lo, hi, lo_open=open_ends, hi_open=open_ends)
    if chi > 0:
        lo = Fraction(chi_j - n, chi)
        hi = Fraction(chi_j, chi)
        return IntervalQ(lo, hi, lo_open=open_ends, hi_open=open_ends)
    # chi == 0: the inequality no longer involves w_j at all.
    ok = 0 < chi_j < n if strict else 0 <= chi_j <= n
    return IntervalQ.open(Fraction(0), Fraction(1)) if ok else IntervalQ.empty()


def feasible_region(curve: CombCurve, bundle: BundleData, strict: bool = False) -> FeasibleRegion:
    """Solve the per-tooth inequalities for w_j, clipped to (0, 1).

    ``strict=True`` solves the open variant used for synthesis.  The region
    is feasible when each interval is nonempty and some choice of teeth
    weights leaves the spine weight w_N = 1 - sum(w_j) strictly inside
    (0, 1); with all intervals inside (0, 1) this is an exact interval-sum
    membership test.
    """
    n = bundle.rank
    chis = component_eulers(curve, bundle)
    chi = total_euler(curve, bundle)
    unit = IntervalQ.open(Fraction(0), Fraction(1))
    intervals = tuple(
        _tooth_interval(chis[j - 1], chi, n, strict).intersect(unit)
        for j in range(1, curve.num_components)
    )
    feasible = all(not iv.is_empty for iv in intervals)
    if feasible:
        total = intervals[0]
        for iv in intervals[1:]:
            total = total.minkowski_add(iv)
        feasible = not total.intersect(unit).is_empty
    return FeasibleRegion(intervals=intervals, feasible=feasible, strict=strict)


def pick_simplest_rational(interval: IntervalQ) -> Fraction:
    """Rational with the smallest denominator in the interval (smallest numerator on ties).

    Open interiors are searched by Stern-Brocot descent (compiled kernel when
    available); closed endpoints simply compete as candidates.  Requires a
    nonempty interval with finite bounds.
    """
    if interval.is_empty:
        raise ValueError("empty interval has no simplest rational")
    if interval.lo is None or interval.hi is None:
        raise ValueError("interval must have finite bounds")
    candidates = []
    if not interval.lo_open:
        candidates.append(interval.lo)
    if not interval.hi_open:
        candidates.append(interval.hi)
    if interval.lo < interval.hi:
        p, q = kernels.simplest_between(
            interval.lo.numerator,
            interval.lo.denominator,
            interval.hi.numerator,
            interval.hi.denominator,
        )
        candidates.append(Fraction(p, q))
    return min(candidates, key=lambda f: (f.denominator, f.numerator))


def _strict_inequalities_hold(
    curve: CombCurve, bundle: BundleData, w: Polarization
) -> bool:
    n = bundle.rank
    chis = component_eulers(curve, bundle)
    chi = total_euler(curve, bundle)
    for j in range(1, curve.num_components):
        wchi = w.weights[j - 1] * chi
        if not (wchi < chis[j - 1] < wchi + n):
            return False
    return True


def synthesize_polarization(curve: CombCurve, bundle: BundleData) -> Polarization | None:
    """Construct a polarization satisfying the strict inequalities, or None.

    Picks the simplest rational in each strict tooth interval and completes
    with w_N = 1 - sum.  If the independently simplest picks push the spine
    weight out of (0, 1), the widest interval is repeatedly halved toward
    its lower end and re-picked; the strict region is open, so this
    terminates at a valid simplex point whenever the region is feasible.
    """
    region = feasible_region(curve, bundle, strict=True)
    if not region.feasible:
        return None
    intervals = list(region.intervals)
    picks = [pick_simplest_rational(iv) for iv in intervals]
    for _ in range(10_000):
        tail = 1 - sum(picks)
        if 0 < tail < 1:
            break
        widths = [iv.hi - iv.lo for iv in intervals]
        idx = max(range(len(intervals)), key=lambda i: (widths[i], -i))
        iv = intervals[idx]
        mid = (iv.lo + iv.hi) / 2
        intervals[idx] = IntervalQ(iv.lo, mid, lo_open=iv.lo_open, hi_open=True)
        picks[idx] = pick_simplest_rational(intervals[idx])
    else:
        raise RuntimeError("polarization fallback failed to converge on a feasible region")
    w = Polarization(tuple(picks) + (tail,))
    assert not validate_polarization(w)
    assert _strict_inequalities_hold(curve, bundle, w)
    return w


class SufficiencyVerdict(Enum):
    W_SEMISTABLE = "WSemistable"
    UNKNOWN = "Unknown"


def sufficiency_verdict(
    curve: CombCurve,
    bundle: BundleData,
    w: Polarization,
    components_semistable: tuple[bool, ...] | list[bool],
) -> SufficiencyVerdict:
    """Sufficiency only: semistable components plus the inequalities imply w-semistability.

    Anything short of that yields UNKNOWN; this function never claims
    instability.
    """
    flags = tuple(components_semistable)
    if len(flags) != curve.num_components:
        raise ValueError(
            f"expected {curve.num_components} component flags, got {len(flags)}"
        )
    if all(flags) and necessary_check(curve, bundle, w).overall_pass:
        return SufficiencyVerdict.W_SEMISTABLE
    return SufficiencyVerdict.UNKNOWN
