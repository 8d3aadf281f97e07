"""Classification of restrictions of a polarization-semistable bundle.

Assuming the bundle on the comb is semistable for the given polarization,
each restriction to a tooth is either provably semistable or constrained to
a short list of numerically admissible destabilizers (rank, euler) pairs.
All verdicts are conditional on that assumption; the module never decides
semistability of the bundle itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import kernels
from .model import BundleData, CombCurve, Polarization, component_eulers, total_euler


class RestrictionCase(Enum):
    SEMISTABLE_BY_WINDOW = "SemistableByWindow"
    SEMISTABLE_BY_PARITY = "SemistableByParity"
    SEMISTABLE_BY_DIVISIBILITY = "SemistableByDivisibility"
    POSSIBLY_UNSTABLE = "PossiblyUnstable"
    INCONCLUSIVE_INTEGRAL_WCHI = "InconclusiveIntegralWChi"

    @property
    def is_semistable(self) -> bool:
        return self in (
            RestrictionCase.SEMISTABLE_BY_WINDOW,
            RestrictionCase.SEMISTABLE_BY_PARITY,
            RestrictionCase.SEMISTABLE_BY_DIVISIBILITY,
        )


@dataclass(frozen=True)
class RestrictionVerdict:
    """Conditional verdict for one tooth restriction.

    ``forced_destabilizers`` lists every numerically admissible (rank,
    euler characteristic) pair of a destabilizing subbundle; it is nonempty
    only for POSSIBLY_UNSTABLE.
    """

    j: int
    case: RestrictionCase
    forced_destabilizers: tuple[tuple[int, int], ...] = ()
    notes: str = ""


def euclidean_remainder(value: int, modulus: int) -> int:
    """Remainder in {0, ..., modulus-1}, also for negative values.

    -7 mod 3 is 2 here (so -7 = 3*(-3) + 2), never the truncated -1.
    """
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    return value % modulus


def _weight_times_chi(curve: CombCurve, bundle: BundleData, w: Polarization, j: int):
    if not 1 <= j <= curve.num_components - 1:
        raise IndexError(f"tooth index must be in 1..{curve.num_components - 1}, got {j}")
    if len(w.weights) != curve.num_components:
        raise ValueError(
            f"polarization has {len(w.weights)} weights for {curve.num_components} components"
        )
    chi = total_euler(curve, bundle)
    chi_j = component_eulers(curve, bundle)[j - 1]
    return chi, chi_j, w.weights[j - 1] * chi


def destabilizer_candidates(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int, k: int
) -> list[int]:
    """All integers chi_L admissible for a rank-k destabilizer of the tooth-j restriction.

    Admissible means chi_L/k > chi_j/n (strictly destabilizing) together
    with chi_L <= k*w_j*chi/n + k, the ceiling imposed on twisted-down
    subsheaves by semistability of the whole bundle.
    """
    n = bundle.rank
    if not 1 <= k <= n - 1:
        raise ValueError(f"destabilizer rank must be in 1..{n - 1}, got {k}")
    chi, chi_j, _ = _weight_times_chi(curve, bundle, w, j)
    wj = w.weights[j - 1]
    lo, hi = kernels.destabilizer_range(k, chi_j, n, wj.numerator, wj.denominator, chi)
    return list(range(lo, hi + 1))


def divisibility_exclusion(n: int, chi_j: int, k: int, chi_l: int) -> bool:
    """True when the pair is excluded outright: n | chi_j and k | chi_L.

    Under the subsheaf ceiling such a pair satisfies chi_L/k <= chi_j/n, so
    it cannot destabilize; in particular line subbundles never destabilize
    a restriction with n | chi_j.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"destabilizer rank must be in 1..{n - 1}, got {k}")
    return chi_j % n == 0 and chi_l % k == 0


def filtered_destabilizer_candidates(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> tuple[tuple[int, int], ...]:
    """Raw candidates for every rank, filtered by the divisibility constraints.

    When n | chi_j, pairs with k | chi_L are excluded outright and the rest
    must sit at chi_j*k/n + a with 0 < a < k; otherwise pairs with k | chi_L
    are pinned to the single quotient chi_j/n + (n - r_j)/n.
    """
    n = bundle.rank
    chi_j = component_eulers(curve, bundle)[j - 1]
    n_divides = chi_j % n == 0
    forced_quotient = chi_j // n + 1  # slope forced on candidates with k | chi_L
    kept = []
    for k in range(1, n):
        for chi_l in destabilizer_candidates(curve, bundle, w, j, k):
            if n_divides:
                if divisibility_exclusion(n, chi_j, k, chi_l):
                    continue
                a = chi_l - (k * chi_j) // n
                if not 1 <= a <= k - 1:
                    continue
            elif chi_l % k == 0 and chi_l // k != forced_quotient:
                continue
            kept.append((k, chi_l))
    return tuple(kept)


def classify_rank2(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> RestrictionVerdict:
    """Rank-2 classification of the tooth-j restriction.

    With w_j*chi non-integral: the upper window proves semistability, even
    chi_j proves semistability, and otherwise the only admissible
    destabilizer is a line subbundle with euler (chi_j + 1)/2.
    """
    if bundle.rank != 2:
        raise ValueError(f"rank-2 classifier called with rank {bundle.rank}")
    _, chi_j, wchi = _weight_times_chi(curve, bundle, w, j)
    if wchi.denominator == 1:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.INCONCLUSIVE_INTEGRAL_WCHI,
            notes=f"w_{j}*chi = {wchi} is an integer; the classification is silent here",
        )
    if wchi + 1 < chi_j < wchi + 2:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.SEMISTABLE_BY_WINDOW,
            notes=f"chi_{j} = {chi_j} lies in the upper unit window above w_{j}*chi + 1",
        )
    if chi_j % 2 == 0:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.SEMISTABLE_BY_PARITY,
            notes=f"chi_{j} = {chi_j} is even; no line subbundle can reach slope above chi_{j}/2",
        )
    # The only value a destabilizing line subbundle can take; intersecting
    # with the admissible range keeps the verdict honest on inputs that
    # already violate the necessary inequalities.
    forced_euler = (chi_j + 1) // 2
    forced = filtered_destabilizer_candidates(curve, bundle, w, j)
    assert all(pair == (1, forced_euler) for pair in forced)
    if forced:
        notes = (
            f"a destabilizer must be a line subbundle with euler characteristic "
            f"{forced_euler} (= (chi_{j} + 1)/2)"
        )
    else:
        notes = (
            f"the forced line-subbundle euler {forced_euler} (= (chi_{j} + 1)/2) is "
            f"itself outside the admissible range, so nothing can destabilize; the "
            f"semistability hypothesis on the whole bundle must already fail here"
        )
    return RestrictionVerdict(
        j=j,
        case=RestrictionCase.POSSIBLY_UNSTABLE,
        forced_destabilizers=forced,
        notes=notes,
    )


def classify_rankn(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> RestrictionVerdict:
    """General-rank classification of the tooth-j restriction (rank >= 2).

    With w_j*chi non-integral: when n | chi_j the top unit window proves
    semistability; otherwise every destabilizer candidate must survive the
    divisibility filters (no k | chi_L when n | chi_j; integral-slope
    candidates pinned to chi_j/n + (n - r_j)/n).  An exhausted candidate
    list with n | chi_j is itself a semistability proof.
    """
    n = bundle.rank
    if n < 2:
        raise ValueError(f"classification needs rank >= 2, got {n}")
    _, chi_j, wchi = _weight_times_chi(curve, bundle, w, j)
    if wchi.denominator == 1:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.INCONCLUSIVE_INTEGRAL_WCHI,
            notes=f"w_{j}*chi = {wchi} is an integer; the classification is silent here",
        )
    n_divides = chi_j % n == 0
    if n_divides and wchi + (n - 1) < chi_j < wchi + n:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.SEMISTABLE_BY_WINDOW,
            notes=f"{n} divides chi_{j} = {chi_j} and chi_{j} lies in the top unit window",
        )
    forced = filtered_destabilizer_candidates(curve, bundle, w, j)
    if n_divides and not forced:
        return RestrictionVerdict(
            j=j,
            case=RestrictionCase.SEMISTABLE_BY_DIVISIBILITY,
            notes=(
                f"{n} divides chi_{j} = {chi_j} and the divisibility filters exclude "
                f"every admissible destabilizer"
            ),
        )
    r_j = euclidean_remainder(chi_j, n)
    notes = (
        f"admissible destabilizers listed as (rank, euler); remainder of chi_{j} mod {n} is {r_j}"
        if forced
        else "no numerically admissible destabilizer survives, but no semistability "
        "criterion applies either"
    )
    return RestrictionVerdict(
        j=j,
        case=RestrictionCase.POSSIBLY_UNSTABLE,
        forced_destabilizers=forced,
        notes=notes,
    )


def classify_restriction(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> RestrictionVerdict:
    """Dispatch to the sharp rank-2 classifier or the general one."""
    if bundle.rank == 2:
        return classify_rank2(curve, bundle, w, j)
    return classify_rankn(curve, bundle, w, j)
