"""Stable JSON instance format shared by the CLI and the test fixtures.

A document describes a curve plus any of: a bundle, a generated pair, a
polarization.  Rationals travel as exact lowest-terms "p/q" strings;
degrees and genera are plain integers.  Unknown fields are rejected so that
typos fail loudly instead of silently validating something else.  Degrees
are the canonical bundle input; euler characteristics may be supplied as
well (or instead) and are cross-validated against the degrees.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .kernel_bundles import GeneratedPairData, PairAssumptions
from .model import (
    BundleData,
    CombCurve,
    Polarization,
    component_eulers,
    format_rational,
    parse_rational,
    total_euler,
)


class DocumentError(ValueError):
    """Malformed instance document (CLI exit code 2)."""


@dataclass(frozen=True)
class InstanceDocument:
    curve: CombCurve
    bundle: BundleData | None = None
    pair: GeneratedPairData | None = None
    polarization: Polarization | None = None


def _require_mapping(obj: object, where: str) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be a JSON object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise DocumentError(f"unknown field(s) in {where}: {', '.join(unknown)}")


def _int_field(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where} must be an integer, got {value!r}")
    return value


def _int_list(value: object, where: str, expect_len: int | None = None) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise DocumentError(f"{where} must be an array of integers")
    items = tuple(_int_field(v, f"{where}[{i}]") for i, v in enumerate(value))
    if expect_len is not None and len(items) != expect_len:
        raise DocumentError(f"{where} has {len(items)} entries, expected {expect_len}")
    return items


def _parse_curve(obj: object) -> CombCurve:
    mapping = _require_mapping(obj, "curve")
    _reject_unknown(mapping, {"genera"}, "curve")
    if "genera" not in mapping:
        raise DocumentError("curve.genera is required")
    genera = _int_list(mapping["genera"], "curve.genera")
    try:
        return CombCurve(genera)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"invalid curve: {exc}") from exc


def _parse_bundle(obj: object, curve: CombCurve) -> BundleData:
    mapping = _require_mapping(obj, "bundle")
    _reject_unknown(mapping, {"rank", "multidegree", "component_eulers", "euler"}, "bundle")
    if "rank" not in mapping:
        raise DocumentError("bundle.rank is required")
    rank = _int_field(mapping["rank"], "bundle.rank")
    if rank < 1:
        raise DocumentError(f"bundle.rank must be positive, got {rank}")
    num = curve.num_components
    degrees = None
    if "multidegree" in mapping:
        degrees = _int_list(mapping["multidegree"], "bundle.multidegree", num)
    eulers = None
    if "component_eulers" in mapping:
        eulers = _int_list(mapping["component_eulers"], "bundle.component_eulers", num)
    if degrees is None and eulers is None:
        raise DocumentError("bundle needs multidegree or component_eulers")
    if degrees is None:
        # chi_j = d_j + rank*(1 - g_j) inverted; euler input is equivalent to degrees.
        degrees = tuple(
            chi - rank * (1 - g) for chi, g in zip(eulers, curve.genera)
        )
    bundle = BundleData(rank=rank, multidegree=degrees)
    derived = component_eulers(curve, bundle)
    if eulers is not None and tuple(eulers) != derived:
        raise DocumentError(
            f"bundle.component_eulers {list(eulers)} disagree with the multidegree "
            f"(derived {list(derived)})"
        )
    if "euler" in mapping:
        stated = _int_field(mapping["euler"], "bundle.euler")
        if stated != total_euler(curve, bundle):
            raise DocumentError(
                f"bundle.euler = {stated} disagrees with the derived total "
                f"{total_euler(curve, bundle)}"
            )
    return bundle


_ASSUMPTION_KEYS = {"general_linear_series", "butler_conjecture", "components_general_in_moduli"}


def _parse_assumptions(obj: object) -> PairAssumptions:
    mapping = _require_mapping(obj, "pair.assumptions")
    _reject_unknown(mapping, _ASSUMPTION_KEYS, "pair.assumptions")
    values = {}
    for key, value in mapping.items():
        if not isinstance(value, bool):
            raise DocumentError(f"pair.assumptions.{key} must be a boolean")
        values[key] = value
    return PairAssumptions(**values)


def _parse_pair(obj: object, curve: CombCurve) -> GeneratedPairData:
    mapping = _require_mapping(obj, "pair")
    _reject_unknown(
        mapping, {"rank", "sections", "multidegree", "kernel_dims", "assumptions"}, "pair"
    )
    for required in ("rank", "sections", "multidegree", "kernel_dims"):
        if required not in mapping:
            raise DocumentError(f"pair.{required} is required")
    num = curve.num_components
    assumptions = (
        _parse_assumptions(mapping["assumptions"])
        if "assumptions" in mapping
        else PairAssumptions()
    )
    try:
        return GeneratedPairData(
            rank=_int_field(mapping["rank"], "pair.rank"),
            sections=_int_field(mapping["sections"], "pair.sections"),
            multidegree=_int_list(mapping["multidegree"], "pair.multidegree", num),
            kernel_dims=_int_list(mapping["kernel_dims"], "pair.kernel_dims", num),
            assumptions=assumptions,
        )
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"invalid pair: {exc}") from exc


def _parse_polarization(obj: object, curve: CombCurve) -> Polarization:
    mapping = _require_mapping(obj, "polarization")
    _reject_unknown(mapping, {"weights"}, "polarization")
    if "weights" not in mapping:
        raise DocumentError("polarization.weights is required")
    raw = mapping["weights"]
    if not isinstance(raw, list):
        raise DocumentError("polarization.weights must be an array of 'p/q' strings")
    if len(raw) != curve.num_components:
        raise DocumentError(
            f"polarization.weights has {len(raw)} entries, expected {curve.num_components}"
        )
    weights = []
    for i, item in enumerate(raw):
        if not isinstance(item, str):
            raise DocumentError(
                f"polarization.weights[{i}] must be an exact 'p/q' string, got {item!r}"
            )
        try:
            weights.append(parse_rational(item))
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    return Polarization(tuple(weights))


def parse_document(obj: object) -> InstanceDocument:
    """Parse a decoded JSON object into an instance document (strict)."""
    mapping = _require_mapping(obj, "document")
    _reject_unknown(mapping, {"curve", "bundle", "pair", "polarization"}, "document")
    if "curve" not in mapping:
        raise DocumentError("document.curve is required")
    curve = _parse_curve(mapping["curve"])
    bundle = _parse_bundle(mapping["bundle"], curve) if "bundle" in mapping else None
    pair = _parse_pair(mapping["pair"], curve) if "pair" in mapping else None
    polarization = (
        _parse_polarization(mapping["polarization"], curve)
        if "polarization" in mapping
        else None
    )
    return InstanceDocument(curve=curve, bundle=bundle, pair=pair, polarization=polarization)


def render_document(doc: InstanceDocument) -> dict:
    """Canonical JSON form: degrees as integers, rationals as 'p/q' strings."""
    out: dict = {"curve": {"genera": list(doc.curve.genera)}}
    if doc.bundle is not None:
        out["bundle"] = {
            "rank": doc.bundle.rank,
            "multidegree": list(doc.bundle.multidegree),
        }
    if doc.pair is not None:
        flags = doc.pair.assumptions
        out["pair"] = {
            "rank": doc.pair.rank,
            "sections": doc.pair.sections,
            "multidegree": list(doc.pair.multidegree),
            "kernel_dims": list(doc.pair.kernel_dims),
            "assumptions": {
                "general_linear_series": flags.general_linear_series,
                "butler_conjecture": flags.butler_conjecture,
                "components_general_in_moduli": flags.components_general_in_moduli,
            },
        }
    if doc.polarization is not None:
        out["polarization"] = {
            "weights": [format_rational(w) for w in doc.polarization.weights]
        }
    return out


def load_document(path: str | Path) -> InstanceDocument:
    """Read and parse a UTF-8 JSON instance document from disk."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in {path}: {exc}") from exc
    return parse_document(obj)
