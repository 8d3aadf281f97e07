"""Command-line front end.

Subcommands: analyze, region, polarize, kernel, validate, selftest.  Input
is a JSON instance document; output is a text report or, with --json, a
machine-readable object with the same content.  Exit codes are uniform
across commands: 0 for an affirmative verdict, 1 for a negative one
(failed check, infeasible region, strongly unstable kernel, selftest
disagreement), 2 for any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .documents import DocumentError, InstanceDocument, load_document, render_document
from .kernel_bundles import (
    CharacterizationKind,
    characterize,
    kernel_data,
    kernel_polarization,
    restriction_unstable,
    strong_unstability,
    validate_pair,
)
from .model import (
    BundleData,
    CombCurve,
    Polarization,
    component_eulers,
    format_rational,
    parse_rational,
    total_euler,
    validate_polarization,
)
from .oracles import InstanceBounds, run_selftest
from .polarization import feasible_region, necessary_check, synthesize_polarization
from .restrictions import classify_restriction
from . import kernels

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class CliInputError(Exception):
    """User input problem that is not a document parse error."""


def _emit(args: argparse.Namespace, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _bundle_payload(curve: CombCurve, bundle: BundleData) -> dict:
    return {
        "rank": bundle.rank,
        "multidegree": list(bundle.multidegree),
        "component_eulers": list(component_eulers(curve, bundle)),
        "euler": total_euler(curve, bundle),
    }


def _bundle_lines(curve: CombCurve, bundle: BundleData, title: str = "bundle") -> list[str]:
    chis = component_eulers(curve, bundle)
    return [
        f"{title}: rank {bundle.rank}, multidegree {tuple(bundle.multidegree)}, "
        f"component eulers {tuple(chis)}, total euler {total_euler(curve, bundle)}"
    ]


def _weights_text(w: Polarization) -> str:
    return "(" + ", ".join(format_rational(x) for x in w.weights) + ")"


def _resolve_polarization(args: argparse.Namespace, doc: InstanceDocument) -> Polarization:
    if getattr(args, "polarization", None):
        try:
            weights = tuple(parse_rational(p) for p in args.polarization.split(","))
        except ValueError as exc:
            raise CliInputError(f"bad --polarization: {exc}") from exc
        w = Polarization(weights)
    elif doc.polarization is not None:
        w = doc.polarization
    else:
        raise CliInputError("a polarization is required (document field or --polarization)")
    if len(w.weights) != doc.curve.num_components:
        raise CliInputError(
            f"polarization has {len(w.weights)} weights for "
            f"{doc.curve.num_components} components"
        )
    violations = validate_polarization(w)
    if violations:
        raise CliInputError("invalid polarization: " + "; ".join(violations))
    return w


def _require_bundle(doc: InstanceDocument) -> BundleData:
    if doc.bundle is None:
        raise CliInputError("this command needs a bundle section in the document")
    return doc.bundle


def _require_pair(doc: InstanceDocument):
    if doc.pair is None:
        raise CliInputError("this command needs a pair section in the document")
    return doc.pair


def cmd_analyze(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    curve = doc.curve
    bundle = _require_bundle(doc)
    w = _resolve_polarization(args, doc)
    verdict = necessary_check(curve, bundle, w)
    chis = component_eulers(curve, bundle)
    chi = total_euler(curve, bundle)
    n = bundle.rank

    lines = [
        f"curve: {curve.num_components} components, genera {tuple(curve.genera)}, "
        f"arithmetic genus {curve.arithmetic_genus}",
        *_bundle_lines(curve, bundle),
        f"polarization: {_weights_text(w)}",
        "necessary inequalities at the teeth (w_j*chi <= chi_j <= w_j*chi + n):",
    ]
    comp_payload = []
    for check in verdict.components:
        wchi = w.weights[check.j - 1] * chi
        status_bits = []
        if not check.lower_ok:
            status_bits.append("lower FAILED")
        if not check.upper_ok:
            status_bits.append("upper FAILED")
        status = ", ".join(status_bits) if status_bits else "ok"
        line = (
            f"  j={check.j}: {format_rational(wchi)} <= {chis[check.j - 1]} <= "
            f"{format_rational(wchi + n)} : {status}"
        )
        witness_payload = None
        if check.witness is not None:
            line += (
                f"; witness {check.witness.label} with slope "
                f"{format_rational(check.witness_slope)} > {format_rational(Fraction(chi, n))} "
                f"(= chi/n)"
            )
            witness_payload = {
                "label": check.witness.label,
                "multirank": list(check.witness.multirank),
                "euler": check.witness.euler,
                "slope": format_rational(check.witness_slope),
            }
        lines.append(line)
        comp_payload.append(
            {
                "j": check.j,
                "lower_ok": check.lower_ok,
                "upper_ok": check.upper_ok,
                "witness": witness_payload,
            }
        )
    lines.append("overall: " + ("PASS" if verdict.overall_pass else "FAIL"))

    classification_payload = None
    if n >= 2:
        lines.append(
            "restriction classification (conditional on semistability of the whole bundle):"
        )
        classification_payload = []
        for j in range(1, curve.num_components):
            rv = classify_restriction(curve, bundle, w, j)
            entry = {
                "j": j,
                "case": rv.case.value,
                "forced_destabilizers": [list(t) for t in rv.forced_destabilizers],
                "notes": rv.notes,
            }
            classification_payload.append(entry)
            line = f"  j={j}: {rv.case.value}"
            if rv.forced_destabilizers:
                forced = ", ".join(f"({k}, {c})" for k, c in rv.forced_destabilizers)
                line += f"; admissible destabilizers (rank, euler): {forced}"
            if rv.notes:
                line += f" [{rv.notes}]"
            lines.append(line)
    else:
        lines.append(
            "restriction classification: rank 1, restrictions are line bundles and "
            "semistable outright"
        )

    code = EXIT_OK if verdict.overall_pass else EXIT_NEGATIVE
    payload = {
        "command": "analyze",
        "curve": {"genera": list(curve.genera)},
        "bundle": _bundle_payload(curve, bundle),
        "polarization": {"weights": [format_rational(x) for x in w.weights]},
        "necessary": {"overall_pass": verdict.overall_pass, "components": comp_payload},
        "classification": classification_payload,
        "exit": code,
    }
    _emit(args, payload, lines)
    return code


def cmd_region(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    curve = doc.curve
    bundle = _require_bundle(doc)
    region = feasible_region(curve, bundle, strict=args.strict)
    lines = _bundle_lines(curve, bundle)
    interval_payload = []
    for j, iv in enumerate(region.intervals, start=1):
        if iv.is_empty:
            lines.append(f"  w_{j}: empty")
        else:
            lines.append(f"  w_{j} in {iv.render()}")
        interval_payload.append(
            {
                "j": j,
                "empty": iv.is_empty,
                "lo": None if iv.lo is None else format_rational(iv.lo),
                "hi": None if iv.hi is None else format_rational(iv.hi),
                "lo_open": iv.lo_open,
                "hi_open": iv.hi_open,
            }
        )
    lines.append("feasible" if region.feasible else "infeasible")
    code = EXIT_OK if region.feasible else EXIT_NEGATIVE
    payload = {
        "command": "region",
        "strict": region.strict,
        "intervals": interval_payload,
        "feasible": region.feasible,
        "exit": code,
    }
    _emit(args, payload, lines)
    return code


def cmd_polarize(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    curve = doc.curve
    if doc.bundle is not None:
        bundle = doc.bundle
        w = synthesize_polarization(curve, bundle)
    elif doc.pair is not None:
        violations = validate_pair(curve, doc.pair)
        if violations:
            raise CliInputError("invalid pair: " + "; ".join(violations))
        bundle = kernel_data(curve, doc.pair)
        w = kernel_polarization(curve, doc.pair)
    else:
        raise CliInputError("polarize needs a bundle or a pair section")
    lines = _bundle_lines(curve, bundle, title="target bundle")
    if w is None:
        lines.append("no polarization: the strict feasibility region is empty")
        payload = {"command": "polarize", "weights": None, "exit": EXIT_NEGATIVE}
        _emit(args, payload, lines)
        return EXIT_NEGATIVE
    lines.append(f"polarization: {_weights_text(w)}")
    payload = {
        "command": "polarize",
        "weights": [format_rational(x) for x in w.weights],
        "exit": EXIT_OK,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_kernel(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    curve = doc.curve
    pair = _require_pair(doc)
    violations = validate_pair(curve, pair)
    if violations:
        raise CliInputError("invalid pair: " + "; ".join(violations))
    m = kernel_data(curve, pair)
    lines = [
        f"pair: rank {pair.rank}, sections {pair.sections}, multidegree "
        f"{tuple(pair.multidegree)}, kernel dims {tuple(pair.kernel_dims)}",
        *_bundle_lines(curve, m, title="kernel bundle"),
        "restriction witnesses:",
    ]
    witness_payload = []
    for j in range(1, curve.num_components + 1):
        profile = restriction_unstable(curve, pair, j)
        k = pair.kernel_dims[j - 1]
        d = pair.multidegree[j - 1]
        if profile is not None:
            mu = format_rational(Fraction(-d, m.rank))
            lines.append(
                f"  j={j}: trivial kernel subbundle of rank {k}, slope 0 > {mu} "
                f"(restricted kernel-bundle slope); restriction unstable"
            )
            witness_payload.append(
                {
                    "j": j,
                    "witness": {
                        "label": profile.label,
                        "multirank": list(profile.multirank),
                        "euler": profile.euler,
                    },
                }
            )
        elif k > 0:
            lines.append(
                f"  j={j}: none; kernel dimension {k} but degree 0, the slope "
                f"comparison degenerates (both slopes 0)"
            )
            witness_payload.append({"j": j, "witness": None})
        else:
            lines.append(f"  j={j}: none (kernel dimension 0)")
            witness_payload.append({"j": j, "witness": None})
    try:
        su = strong_unstability(curve, pair)
        report = characterize(curve, pair)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    at = f" at j={su.triggering_j}" if su.triggering_j is not None else ""
    lines.append(f"strong unstability: {su.verdict.value}{at} [{su.reason}]")
    line = f"characterization: {report.verdict.value}"
    if report.polarization is not None:
        line += f" with w = {_weights_text(report.polarization)}"
    if report.triggering_j is not None:
        line += f" (j={report.triggering_j})"
    lines.append(line)
    for note in report.notes:
        lines.append(f"  note: {note}")
    negative = report.verdict in (
        CharacterizationKind.STRONGLY_UNSTABLE,
        CharacterizationKind.DIVISIBILITY_CONTRADICTION,
    )
    code = EXIT_NEGATIVE if negative else EXIT_OK
    payload = {
        "command": "kernel",
        "kernel_bundle": _bundle_payload(curve, m),
        "restriction_witnesses": witness_payload,
        "strong_unstability": {
            "verdict": su.verdict.value,
            "triggering_j": su.triggering_j,
            "reason": su.reason,
        },
        "characterization": {
            "verdict": report.verdict.value,
            "polarization": None
            if report.polarization is None
            else [format_rational(x) for x in report.polarization.weights],
            "triggering_j": report.triggering_j,
            "missing_assumptions": list(report.missing_assumptions),
            "notes": list(report.notes),
        },
        "exit": code,
    }
    _emit(args, payload, lines)
    return code


def cmd_validate(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    problems: list[str] = []
    if doc.polarization is not None:
        problems += [f"polarization: {v}" for v in validate_polarization(doc.polarization)]
        if len(doc.polarization.weights) != doc.curve.num_components:
            problems.append("polarization: weight count does not match the curve")
    if doc.pair is not None:
        problems += [f"pair: {v}" for v in validate_pair(doc.curve, doc.pair)]
    lines = []
    if problems:
        lines.append("violations:")
        lines.extend(f"  {p}" for p in problems)
    else:
        lines.append("ok")
    code = EXIT_NEGATIVE if problems else EXIT_OK
    payload = {
        "command": "validate",
        "document": render_document(doc),
        "violations": problems,
        "exit": code,
    }
    _emit(args, payload, lines)
    return code


def cmd_selftest(args: argparse.Namespace) -> int:
    try:
        bounds = InstanceBounds(
            max_components=args.max_components,
            max_genus=args.max_genus,
            max_rank=args.max_rank,
            degree_range=(args.degree_min, args.degree_max),
            max_weight_denominator=args.max_weight_denominator,
            seed=args.seed,
        )
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    if args.count < 0:
        raise CliInputError("--count must be nonnegative")
    report = run_selftest(bounds, args.count)
    lines = [f"kernel backend: {kernels.BACKEND}"]
    lines += report.render_lines()
    code = EXIT_OK if report.passed else EXIT_NEGATIVE
    payload = {
        "command": "selftest",
        "backend": kernels.BACKEND,
        "seed": report.seed,
        "count": report.count,
        "checks": {
            name: {"run": stat.run, "agreed": stat.agreed}
            for name, stat in sorted(report.checks.items())
        },
        "total_run": report.total_run,
        "total_agreed": report.total_agreed,
        "first_failure": report.first_failure,
        "passed": report.passed,
        "exit": code,
    }
    _emit(args, payload, lines)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combstab",
        description=(
            "Exact-rational semistability calculator for vector bundles on comb-like "
            "nodal curves"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_file: bool = True) -> None:
        if with_file:
            p.add_argument("file", help="JSON instance document")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="necessary inequalities plus restriction classification")
    add_common(p)
    p.add_argument("--polarization", help="comma-separated exact weights, e.g. 1/3,2/3")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("region", help="per-tooth weight intervals and feasibility")
    add_common(p)
    p.add_argument("--strict", action="store_true", help="open intervals (synthesis variant)")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("polarize", help="construct a polarization when one exists")
    add_common(p)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("kernel", help="kernel-bundle report for a generated pair")
    add_common(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("validate", help="check a document against the schema and invariants")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("selftest", help="run the oracle cross-checks on seeded instances")
    add_common(p, with_file=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--max-components", type=int, default=6)
    p.add_argument("--max-genus", type=int, default=5)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--degree-min", type=int, default=-20)
    p.add_argument("--degree-max", type=int, default=20)
    p.add_argument("--max-weight-denominator", type=int, default=64)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, CliInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
