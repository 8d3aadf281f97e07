"""Brute-force oracles and seeded instance generation.

Every fast routine in the package has a desk-scale counterpart here that
recomputes the same answer from definitions: slope comparisons written out
longhand, destabilizer windows swept integer by integer with deliberate
padding, simplest rationals found by scanning denominators.  The oracles
never call the kernels they check.  Agreement is exact or it is a failure;
there are no tolerances anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel_bundles import GeneratedPairData, kernel_data, kernel_polarization, validate_pair
from .model import (
    BundleData,
    CombCurve,
    Polarization,
    format_rational,
    total_euler,
    validate_polarization,
)
from .polarization import (
    IntervalQ,
    feasible_region,
    necessary_check,
    pick_simplest_rational,
    synthesize_polarization,
)
from .restrictions import classify_restriction, destabilizer_candidates


@dataclass(frozen=True)
class InstanceBounds:
    """Bounds for the seeded generators; identical bounds + seed give identical streams."""

    max_components: int = 6
    max_genus: int = 5
    max_rank: int = 4
    degree_range: tuple[int, int] = (-20, 20)
    max_weight_denominator: int = 64
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_components < 2:
            raise ValueError("max_components must be at least 2")
        if self.max_genus < 0:
            raise ValueError("max_genus must be nonnegative")
        if self.max_rank < 1:
            raise ValueError("max_rank must be positive")
        if self.degree_range[0] > self.degree_range[1]:
            raise ValueError("degree_range is empty")
        if self.max_weight_denominator < self.max_components:
            raise ValueError(
                "max_weight_denominator must be at least max_components so that weights "
                "with a common denominator can sum to 1"
            )


def _draw_polarization(rng: random.Random, num_components: int, max_den: int) -> Polarization:
    # N positive integer parts of a common denominator D give exact weights
    # a_j/D in (0, 1) summing to 1, with reduced denominators dividing D.
    den = rng.randint(num_components, max_den)
    cuts = sorted(rng.sample(range(1, den), num_components - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return Polarization(tuple(Fraction(a, den) for a in parts))


def _draw_instance(
    rng: random.Random, bounds: InstanceBounds
) -> tuple[CombCurve, BundleData, Polarization]:
    num = rng.randint(2, bounds.max_components)
    curve = CombCurve(tuple(rng.randint(0, bounds.max_genus) for _ in range(num)))
    bundle = BundleData(
        rank=rng.randint(1, bounds.max_rank),
        multidegree=tuple(rng.randint(*bounds.degree_range) for _ in range(num)),
    )
    w = _draw_polarization(rng, num, bounds.max_weight_denominator)
    return curve, bundle, w


def random_instance(bounds: InstanceBounds) -> tuple[CombCurve, BundleData, Polarization]:
    """First instance of the stream for these bounds (deterministic in the seed)."""
    return _draw_instance(random.Random(bounds.seed), bounds)


def instance_stream(bounds: InstanceBounds, count: int):
    """Yield ``count`` reproducible (curve, bundle, polarization) triples."""
    rng = random.Random(bounds.seed)
    for _ in range(count):
        yield _draw_instance(rng, bounds)


def _draw_pair(rng: random.Random, bounds: InstanceBounds) -> tuple[CombCurve, GeneratedPairData]:
    num = rng.randint(2, bounds.max_components)
    curve = CombCurve(tuple(rng.randint(2, max(2, bounds.max_genus)) for _ in range(num)))
    n = rng.randint(1, bounds.max_rank)
    l = n + rng.randint(1, bounds.max_rank + 1)
    kernel_dims = [0] * num
    for j in range(num):
        if rng.randrange(3) == 0:
            kernel_dims[j] = rng.randint(1, l - n)
    if kernel_dims[-1] > 0 and all(k == 0 for k in kernel_dims[:-1]):
        kernel_dims[0] = 1
    degree_cap = max(6, bounds.degree_range[1])
    degrees = []
    for j in range(num):
        if rng.randrange(5) == 0:
            degrees.append(0)
        else:
            floor = max(2, (l - kernel_dims[j]) - n)
            degrees.append(rng.randint(floor, floor + degree_cap))
    pair = GeneratedPairData(
        rank=n,
        sections=l,
        multidegree=tuple(degrees),
        kernel_dims=tuple(kernel_dims),
    )
    return curve, pair


def random_pair(bounds: InstanceBounds) -> tuple[CombCurve, GeneratedPairData]:
    """First generated pair of the stream for these bounds; always passes validation."""
    return _draw_pair(random.Random(bounds.seed), bounds)


def pair_stream(bounds: InstanceBounds, count: int):
    """Yield ``count`` reproducible valid (curve, pair) instances."""
    rng = random.Random(bounds.seed)
    for _ in range(count):
        yield _draw_pair(rng, bounds)


def oracle_necessary_equivalence(curve: CombCurve, bundle: BundleData, w: Polarization) -> bool:
    """Recompute the necessary check from raw slope comparisons and compare.

    The two witness profiles are rebuilt here from scratch and their slopes
    written out as explicit quotients; the failure pattern must match the
    fast check side for side at every tooth.
    """
    n = bundle.rank
    num = curve.num_components
    chis = [d + n * (1 - g) for g, d in zip(curve.genera, bundle.multidegree)]
    chi = sum(chis) - n * (num - 1)
    mu_bundle = Fraction(chi, n)
    verdict = necessary_check(curve, bundle, w)
    for check in verdict.components:
        j = check.j
        w_j = w.weights[j - 1]
        # Twisted restriction: supported on the tooth, euler chi_j - n.
        upper_violated = Fraction(chis[j - 1] - n) / (w_j * n) > mu_bundle
        # Complement: full rank off the tooth, euler chi - chi_j.
        lower_violated = Fraction(chi - chis[j - 1]) / ((1 - w_j) * n) > mu_bundle
        if check.upper_ok != (not upper_violated):
            return False
        if check.lower_ok != (not lower_violated):
            return False
    return True


def oracle_destabilizer_enumeration(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> list[tuple[int, int]]:
    """Sweep a padded integer window with the raw subsheaf inequality.

    Keeps (k, chi_L) when chi_L/k > chi_j/n and the twisted subsheaf slope
    (chi_L - k)/(k*w_j) stays at most chi/n.  The scan window is padded by
    n*k + 1 beyond both true bounds (the slope threshold below, the
    weighted ceiling above) so an off-by-one in the fast range arithmetic
    surfaces as a disagreement instead of getting masked; kept candidates
    never touch the window edges, which is asserted.
    """
    n = bundle.rank
    chi = total_euler(curve, bundle)
    chi_j = (bundle.multidegree[j - 1]) + n * (1 - curve.genera[j - 1])
    w_j = w.weights[j - 1]
    mu_bundle = Fraction(chi, n)
    found = []
    for k in range(1, n):
        ceiling = Fraction(k * w_j.numerator * chi, w_j.denominator * n) + k
        lo = min((k * chi_j) // n, (ceiling.numerator // ceiling.denominator)) - n * k - 1
        hi = max(
            -((-k * chi_j) // n), -((-ceiling.numerator) // ceiling.denominator)
        ) + n * k + 1
        for chi_l in range(lo, hi + 1):
            if not Fraction(chi_l, k) > Fraction(chi_j, n):
                continue
            if not Fraction(chi_l - k) / (k * w_j) <= mu_bundle:
                continue
            assert lo < chi_l < hi  # padding means the window never clips
            found.append((k, chi_l))
    return found


def oracle_filtered_destabilizers(
    curve: CombCurve, bundle: BundleData, w: Polarization, j: int
) -> list[tuple[int, int]]:
    """Replay the divisibility filters over the brute-forced candidate list.

    Written independently of the classifier: the allowed euler values are
    built as explicit sets and membership-tested.
    """
    n = bundle.rank
    chi_j = (bundle.multidegree[j - 1]) + n * (1 - curve.genera[j - 1])
    raw = oracle_destabilizer_enumeration(curve, bundle, w, j)
    kept = []
    for k, chi_l in raw:
        if chi_j % n == 0:
            base = k * (chi_j // n)
            allowed = {base + a for a in range(1, k)}
            if chi_l not in allowed:
                continue
            if chi_l % k == 0:
                continue
        elif chi_l % k == 0:
            q, r = divmod(chi_j, n)
            if Fraction(chi_l, k) != Fraction(chi_j, n) + Fraction(n - r, n):
                continue
            assert q + 1 == chi_l // k
        kept.append((k, chi_l))
    return kept


def oracle_simplest_rational(interval: IntervalQ, max_denominator: int) -> Fraction | None:
    """Scan denominators 1..max_denominator for the first admissible fraction.

    For each denominator the smallest admissible numerator is tried; the
    first hit is automatically in lowest terms and matches the
    (denominator, numerator) ordering of the fast picker.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    if interval.is_empty:
        return None
    if interval.lo is None or interval.hi is None:
        raise ValueError("oracle needs finite interval bounds")
    for q in range(1, max_denominator + 1):
        # Smallest p with p/q above (or at, when closed) the lower endpoint.
        p = -((-interval.lo.numerator * q) // interval.lo.denominator)
        if interval.lo_open and Fraction(p, q) == interval.lo:
            p += 1
        if interval.contains(Fraction(p, q)):
            return Fraction(p, q)
    return None


@dataclass
class CheckStat:
    run: int = 0
    agreed: int = 0


@dataclass
class SelftestReport:
    """Outcome of one seeded selftest sweep."""

    seed: int
    count: int
    checks: dict[str, CheckStat] = field(default_factory=dict)
    first_failure: str | None = None

    def _stat(self, name: str) -> CheckStat:
        return self.checks.setdefault(name, CheckStat())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        stat = self._stat(name)
        stat.run += 1
        if ok:
            stat.agreed += 1
        elif self.first_failure is None:
            self.first_failure = f"{name}: {detail}" if detail else name

    @property
    def total_run(self) -> int:
        return sum(s.run for s in self.checks.values())

    @property
    def total_agreed(self) -> int:
        return sum(s.agreed for s in self.checks.values())

    @property
    def passed(self) -> bool:
        return self.total_agreed == self.total_run

    def render_lines(self) -> list[str]:
        lines = [f"selftest: seed {self.seed}, {self.count} instances"]
        for name in sorted(self.checks):
            stat = self.checks[name]
            lines.append(f"  {name}: {stat.agreed}/{stat.run}")
        lines.append(f"oracle agreements: {self.total_agreed}/{self.total_run}")
        if self.first_failure is not None:
            lines.append(f"first counterexample: {self.first_failure}")
            lines.append(f"replay with: combstab selftest --seed {self.seed} --count {self.count}")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return lines


def _describe_instance(curve: CombCurve, bundle: BundleData, w: Polarization) -> str:
    weights = ",".join(format_rational(x) for x in w.weights)
    return (
        f"genera={list(curve.genera)} rank={bundle.rank} "
        f"multidegree={list(bundle.multidegree)} weights=[{weights}]"
    )


def run_selftest(bounds: InstanceBounds, count: int) -> SelftestReport:
    """Cross-check every fast routine against its oracle on seeded instances."""
    report = SelftestReport(seed=bounds.seed, count=count)
    for curve, bundle, w in instance_stream(bounds, count):
        where = _describe_instance(curve, bundle, w)
        report.record(
            "necessary-equivalence",
            oracle_necessary_equivalence(curve, bundle, w),
            where,
        )
        chi = total_euler(curve, bundle)
        n = bundle.rank
        for j in range(1, curve.num_components):
            if (w.weights[j - 1] * chi).denominator == 1:
                continue
            if n >= 2:
                raw_fast = [
                    (k, c)
                    for k in range(1, n)
                    for c in destabilizer_candidates(curve, bundle, w, j, k)
                ]
                raw_oracle = oracle_destabilizer_enumeration(curve, bundle, w, j)
                report.record(
                    "destabilizer-range", raw_fast == raw_oracle, f"{where} j={j}"
                )
                verdict = classify_restriction(curve, bundle, w, j)
                filtered = oracle_filtered_destabilizers(curve, bundle, w, j)
                if verdict.case.is_semistable:
                    report.record(
                        "classifier-consistency", not filtered, f"{where} j={j}"
                    )
                else:
                    report.record(
                        "destabilizer-filter",
                        list(verdict.forced_destabilizers) == filtered,
                        f"{where} j={j}",
                    )
        strict = feasible_region(curve, bundle, strict=True)
        closed = feasible_region(curve, bundle, strict=False)
        contained = all(
            s.is_empty or s.intersect(c) == s
            for s, c in zip(strict.intervals, closed.intervals)
        )
        report.record("region-nesting", contained, where)
        w_built = synthesize_polarization(curve, bundle)
        if strict.feasible:
            ok = w_built is not None and not validate_polarization(w_built)
            report.record("region-synthesis", ok, where)
            for iv in strict.intervals:
                fast = pick_simplest_rational(iv)
                slow = oracle_simplest_rational(iv, fast.denominator)
                report.record(
                    "simplest-rational", slow == fast, f"{where} interval={iv.render()}"
                )
        else:
            report.record("region-synthesis", w_built is None, where)
    for curve, pair in pair_stream(bounds, count):
        where = (
            f"genera={list(curve.genera)} rank={pair.rank} sections={pair.sections} "
            f"multidegree={list(pair.multidegree)} kernel_dims={list(pair.kernel_dims)}"
        )
        ok = not validate_pair(curve, pair)
        m = kernel_data(curve, pair)
        bundle_e = BundleData(rank=pair.rank, multidegree=pair.multidegree)
        identity = total_euler(curve, m) == pair.sections * (
            1 - curve.arithmetic_genus
        ) - total_euler(curve, bundle_e)
        report.record("kernel-identity", ok and identity, where)
        w_pair = kernel_polarization(curve, pair)
        report.record(
            "kernel-polarization",
            w_pair is not None and not validate_polarization(w_pair),
            where,
        )
    return report
