"""Numerics of kernel bundles attached to generated pairs on a comb.

A generated pair is a globally generated bundle E of rank n together with
an l-dimensional generating space of sections, l > n.  Its kernel bundle M
(the kernel of the evaluation map) has rank m = l - n and multidegree
-deg(E).  The per-tooth kernel dimensions k_j of the section-restriction
maps are user-supplied: they encode gluing geometry the numerical shadow
cannot see, and they drive every instability statement here.

All components are required to have genus >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import (
    BundleData,
    CombCurve,
    Polarization,
    SubsheafProfile,
    component_euler,
    total_euler,
)
from .polarization import synthesize_polarization
from .restrictions import euclidean_remainder


@dataclass(frozen=True)
class PairAssumptions:
    """Non-numeric hypotheses supplied as flags, never derived.

    general_linear_series: each restricted pair is a general linear series
    (rank-1 sufficiency input).  butler_conjecture: assume the kernel-bundle
    semistability conjecture for general pairs (rank >= 2 sufficiency
    input).  components_general_in_moduli: the component curves are general
    members of their moduli spaces.
    """

    general_linear_series: bool = False
    butler_conjecture: bool = False
    components_general_in_moduli: bool = False


@dataclass(frozen=True)
class GeneratedPairData:
    """Numerical shadow of a generated pair (E, V).

    ``kernel_dims[j]`` is the dimension of the kernel of restriction of V
    to component j+1 (0-based storage, 1-based component talk).
    """

    rank: int
    sections: int
    multidegree: tuple[int, ...]
    kernel_dims: tuple[int, ...]
    assumptions: PairAssumptions = field(default_factory=PairAssumptions)

    def __post_init__(self) -> None:
        object.__setattr__(self, "multidegree", tuple(self.multidegree))
        object.__setattr__(self, "kernel_dims", tuple(self.kernel_dims))
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if len(self.multidegree) != len(self.kernel_dims):
            raise ValueError(
                f"multidegree has {len(self.multidegree)} entries, kernel_dims "
                f"{len(self.kernel_dims)}"
            )
        for j, k in enumerate(self.kernel_dims, start=1):
            if k < 0:
                raise ValueError(f"kernel dimension at component {j} is negative: {k}")

    @property
    def kernel_rank(self) -> int:
        return self.sections - self.rank


def validate_pair(curve: CombCurve, pair: GeneratedPairData) -> list[str]:
    """Collect every numerical inconsistency of the pair (empty list = ok).

    Checks: l > n; genus >= 2 everywhere; nonnegative degrees; degree 1 is
    impossible for a globally generated bundle on a genus >= 2 component;
    the classical bound deg >= h0 - rank for globally generated bundles,
    applied with h0 >= l - k_j; kernel dimensions cannot exceed the kernel
    rank l - n.
    """
    violations: list[str] = []
    if len(pair.multidegree) != curve.num_components:
        violations.append(
            f"multidegree has {len(pair.multidegree)} entries for a curve with "
            f"{curve.num_components} components"
        )
        return violations
    n, l = pair.rank, pair.sections
    if l <= n:
        violations.append(f"sections l = {l} must exceed rank n = {n}")
    for j, g in enumerate(curve.genera, start=1):
        if g < 2:
            violations.append(f"component {j} has genus {g} < 2")
    for j, (d, k) in enumerate(zip(pair.multidegree, pair.kernel_dims), start=1):
        if d < 0:
            violations.append(f"degree d_{j} = {d} of a globally generated bundle is negative")
        elif d == 1:
            violations.append(
                f"degree d_{j} = 1 is impossible for a globally generated bundle on a "
                f"component of genus >= 2"
            )
        else:
            bound = (l - k) - n
            if bound > 0 and 0 < d < bound:
                violations.append(
                    f"degree d_{j} = {d} violates the globally generated bound "
                    f"d_{j} >= (l - k_{j}) - n = {bound}"
                )
        if l > n and k > l - n:
            violations.append(
                f"kernel dimension k_{j} = {k} exceeds the kernel rank l - n = {l - n}"
            )
    return violations


def _require_valid(curve: CombCurve, pair: GeneratedPairData) -> None:
    violations = validate_pair(curve, pair)
    if violations:
        raise ValueError("invalid generated pair: " + "; ".join(violations))


def kernel_data(curve: CombCurve, pair: GeneratedPairData) -> BundleData:
    """Rank and multidegree of the kernel bundle: (l - n, -multidegree of E)."""
    _require_valid(curve, pair)
    m = BundleData(rank=pair.kernel_rank, multidegree=tuple(-d for d in pair.multidegree))
    # Defining sequence gives a second route to chi(M); the two must agree.
    bundle_e = BundleData(rank=pair.rank, multidegree=pair.multidegree)
    chi_structure = 1 - curve.arithmetic_genus
    assert total_euler(curve, m) == pair.sections * chi_structure - total_euler(curve, bundle_e)
    return m


def restriction_unstable(curve: CombCurve, pair: GeneratedPairData, j: int) -> SubsheafProfile | None:
    """Witness that the tooth-j restriction of the kernel bundle is unstable.

    A nonzero section-restriction kernel sits inside the restricted kernel
    bundle as a trivial subbundle of rank k_j and slope 0; with d_j > 0 the
    restriction has negative slope -d_j/(l-n), so the witness destabilizes.
    With d_j = 0 the slopes tie and no witness exists.
    """
    _require_valid(curve, pair)
    if not 1 <= j <= curve.num_components:
        raise IndexError(f"component index must be in 1..{curve.num_components}, got {j}")
    k = pair.kernel_dims[j - 1]
    d = pair.multidegree[j - 1]
    if k > 0 and d > 0:
        return SubsheafProfile(
            multirank=tuple(k if i == j else 0 for i in range(1, curve.num_components + 1)),
            euler=k * (1 - curve.genera[j - 1]),
            label="trivial-kernel-part",
        )
    return None


class StrongUnstabilityKind(Enum):
    STRONGLY_UNSTABLE = "StronglyUnstable"
    NOT_DETERMINED = "NotDetermined"
    NO_KERNEL_OBSTRUCTION = "NoKernelObstruction"


@dataclass(frozen=True)
class StrongUnstabilityVerdict:
    verdict: StrongUnstabilityKind
    triggering_j: int | None = None
    reason: str = ""


def _check_kernel_consistency(curve: CombCurve, pair: GeneratedPairData) -> None:
    """A spine kernel forces a tooth kernel; reject data saying otherwise."""
    k = pair.kernel_dims
    if k[-1] > 0 and all(v == 0 for v in k[:-1]):
        raise ValueError(
            "inconsistent kernel dimensions: a nonzero kernel on the spine requires a "
            "nonzero kernel on some tooth"
        )


def strong_unstability(curve: CombCurve, pair: GeneratedPairData) -> StrongUnstabilityVerdict:
    """Decide strong unstability of the kernel bundle from the tooth kernels.

    m = l - n.  A nonzero tooth kernel with positive degree forces strong
    unstability when m = 2; for m > 2 it does so when d_j differs from
    m - r_j (r_j the euclidean remainder of the restricted kernel-bundle
    euler characteristic mod m), and also when m divides that euler
    characteristic outright.  Components with d_j = 0 give no obstruction:
    the slope comparison behind the witness degenerates there.
    """
    _require_valid(curve, pair)
    _check_kernel_consistency(curve, pair)
    m = pair.kernel_rank
    if all(k == 0 for k in pair.kernel_dims):
        return StrongUnstabilityVerdict(
            verdict=StrongUnstabilityKind.NO_KERNEL_OBSTRUCTION,
            reason="every section-restriction kernel is zero",
        )
    if m == 1:
        return StrongUnstabilityVerdict(
            verdict=StrongUnstabilityKind.NOT_DETERMINED,
            reason="kernel bundle has rank 1; the unstability tests need rank >= 2",
        )
    teeth = range(1, curve.num_components)
    if m == 2:
        for j in teeth:
            if pair.kernel_dims[j - 1] > 0 and pair.multidegree[j - 1] > 0:
                return StrongUnstabilityVerdict(
                    verdict=StrongUnstabilityKind.STRONGLY_UNSTABLE,
                    triggering_j=j,
                    reason=(
                        f"rank-2 kernel bundle with nonzero restriction kernel at tooth {j}: "
                        f"a destabilizing line subbundle would force degree 1 on a globally "
                        f"generated bundle, which is impossible"
                    ),
                )
        return StrongUnstabilityVerdict(
            verdict=StrongUnstabilityKind.NOT_DETERMINED,
            reason=(
                "every tooth with a nonzero kernel has degree 0, where the slope "
                "comparison degenerates"
            ),
        )
    for j in teeth:
        k = pair.kernel_dims[j - 1]
        d = pair.multidegree[j - 1]
        if k == 0:
            continue
        chi_j_m = component_euler(curve.genera[j - 1], m, -d)
        r = euclidean_remainder(chi_j_m, m)
        if r == 0 and d > 0:
            return StrongUnstabilityVerdict(
                verdict=StrongUnstabilityKind.STRONGLY_UNSTABLE,
                triggering_j=j,
                reason=(
                    f"divisibility contradiction at tooth {j}: m = {m} divides "
                    f"chi_{j}(M) = {chi_j_m}, which excludes the rank-{k} trivial kernel "
                    f"subbundle as a destabilizer under any polarization, yet it "
                    f"destabilizes the restriction"
                ),
            )
        if r > 0 and d != m - r:
            return StrongUnstabilityVerdict(
                verdict=StrongUnstabilityKind.STRONGLY_UNSTABLE,
                triggering_j=j,
                reason=(
                    f"degree-remainder test at tooth {j}: d_{j} = {d} differs from "
                    f"m - r_{j} = {m - r} (m = {m}, chi_{j}(M) = {chi_j_m}, r_{j} = {r})"
                ),
            )
    return StrongUnstabilityVerdict(
        verdict=StrongUnstabilityKind.NOT_DETERMINED,
        reason=(
            "every tooth with a nonzero kernel has either d_j = m - r_j (the open gap "
            "case) or the degenerate d_j = 0"
        ),
    )


def kernel_polarization(curve: CombCurve, pair: GeneratedPairData) -> Polarization | None:
    """Polarization making the kernel-bundle inequalities hold strictly.

    For a valid pair every restricted euler characteristic is negative, so
    the strict region is always feasible and a polarization is returned.
    """
    return synthesize_polarization(curve, kernel_data(curve, pair))


class CharacterizationKind(Enum):
    EXISTS_SEMISTABLE_POLARIZATION = "ExistsSemistablePolarization"
    STRONGLY_UNSTABLE = "StronglyUnstable"
    DIVISIBILITY_CONTRADICTION = "DivisibilityContradiction"
    CONDITIONAL = "Conditional"
    NOT_DETERMINED = "NotDetermined"


@dataclass(frozen=True)
class CharacterizationReport:
    """Combined verdict of the if-and-only-if characterization."""

    verdict: CharacterizationKind
    polarization: Polarization | None = None
    triggering_j: int | None = None
    missing_assumptions: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


def characterize(curve: CombCurve, pair: GeneratedPairData) -> CharacterizationReport:
    """Full conditional characterization of semistability of the kernel bundle.

    Zero kernels plus the appropriate genericity flag yield a constructive
    polarization; a nonzero kernel routes through the strong-unstability
    tests, with an outright contradiction certificate when the kernel rank
    divides every degree.
    """
    _require_valid(curve, pair)
    _check_kernel_consistency(curve, pair)
    n = pair.rank
    m = pair.kernel_rank
    flags = pair.assumptions
    notes: list[str] = []
    if not flags.components_general_in_moduli:
        notes.append(
            "conclusions additionally presume the components are general in their "
            "moduli spaces (flag components_general_in_moduli not set)"
        )
    if all(k == 0 for k in pair.kernel_dims):
        needed = "general_linear_series" if n == 1 else "butler_conjecture"
        if not getattr(flags, needed):
            reason = (
                "general_linear_series required for rank-1 sufficiency"
                if n == 1
                else "butler_conjecture required for rank >= 2 sufficiency"
            )
            return CharacterizationReport(
                verdict=CharacterizationKind.CONDITIONAL,
                missing_assumptions=(needed,),
                notes=tuple(notes + [reason]),
            )
        w = kernel_polarization(curve, pair)
        assert w is not None
        notes.append(
            "all restriction kernels vanish, so the restricted kernel bundles are the "
            "component kernel bundles and are semistable under the assumed flags"
        )
        return CharacterizationReport(
            verdict=CharacterizationKind.EXISTS_SEMISTABLE_POLARIZATION,
            polarization=w,
            notes=tuple(notes),
        )
    su = strong_unstability(curve, pair)
    divides_all = m > 2 and all(d % m == 0 for d in pair.multidegree)
    if divides_all:
        trigger = next(
            (
                j
                for j in range(1, curve.num_components)
                if pair.kernel_dims[j - 1] > 0 and pair.multidegree[j - 1] > 0
            ),
            None,
        )
        if trigger is not None:
            notes.append(
                f"contradiction certificate: m = {m} divides every degree and every "
                f"m*(1 - g_j), hence every restricted euler characteristic of the "
                f"kernel bundle; a nonzero restriction kernel is then impossible for "
                f"a polarization-semistable kernel bundle"
            )
            return CharacterizationReport(
                verdict=CharacterizationKind.DIVISIBILITY_CONTRADICTION,
                triggering_j=trigger,
                notes=tuple(notes),
            )
    if su.verdict is StrongUnstabilityKind.STRONGLY_UNSTABLE:
        return CharacterizationReport(
            verdict=CharacterizationKind.STRONGLY_UNSTABLE,
            triggering_j=su.triggering_j,
            notes=tuple(notes + [su.reason]),
        )
    return CharacterizationReport(
        verdict=CharacterizationKind.NOT_DETERMINED,
        notes=tuple(notes + [su.reason]),
    )
