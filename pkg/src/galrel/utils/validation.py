"""
Validation of field and extension specs read from JSON.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Union

from galrel.config.settings import app_settings
from galrel.errors import InputError
from galrel.groups.finite_group import GroupSpec
from galrel.models.spec_model import FieldSpec

logger = logging.getLogger(__name__)

__all__ = [
    "ValidationResult",
    "parse_group_spec",
    "parse_rational",
    "spec_from_dict",
    "validate_field_spec",
]


@dataclass
class ValidationResult:
    """Outcome of validating a spec."""

    is_valid: bool
    errors: List[str]
    warnings: List[str]


def parse_rational(text: Union[int, str, Fraction]) -> Fraction:
    """'p/q', an integer or an integer string as an exact rational.

    Raises:
        InputError: not a rational number (floats are rejected)
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"Expected an exact rational, got {text!r}", "rational")
    try:
        return Fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"Bad rational {text!r}", "rational") from e


def parse_group_spec(text: str) -> GroupSpec:
    """A group name, permutation generators, or a JSON object with generators.

    Raises:
        InputError: empty text or malformed JSON
    """
    stripped = text.strip()
    if not stripped:
        raise InputError("Empty group spec", "group")
    if stripped.startswith("{"):
        try:
            parsed = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise InputError(f"Bad group JSON: {e}", "group") from e
        if not isinstance(parsed, dict):
            raise InputError("Group JSON must be an object", "group")
        return parsed
    return stripped


def _rational_rows(
    rows: Any, width: int, key: str, errors: List[str], exact_width: bool = True
) -> None:
    if not isinstance(rows, list) or not rows:
        errors.append(f"{key} must be a non-empty list of rows")
        return
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            errors.append(f"{key}[{i}] is not a list")
            continue
        if exact_width and len(row) != width:
            errors.append(f"{key}[{i}] has {len(row)} entries, expected {width}")
        if not exact_width and not 1 <= len(row) <= width:
            errors.append(f"{key}[{i}] must have between 1 and {width} entries")
        for entry in row:
            try:
                parse_rational(entry)
            except InputError:
                errors.append(f"{key}[{i}] holds a non-rational entry {entry!r}")


def validate_field_spec(raw: Mapping[str, Any]) -> ValidationResult:
    """Checks a parsed field or extension spec without building the field.

    Args:
        raw: The decoded JSON object

    Returns:
        ValidationResult: errors make the spec unusable, warnings do not
    """
    errors: List[str] = []
    warnings: List[str] = []
    if not isinstance(raw, Mapping):
        return ValidationResult(False, ["Spec must be a JSON object"], [])

    if not isinstance(raw.get("name"), str) or not raw.get("name"):
        errors.append("name is required")

    poly = raw.get("min_poly")
    degree = 0
    if not isinstance(poly, list) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in poly
    ):
        errors.append("min_poly must be a list of integers (ascending)")
    elif len(poly) < 2:
        errors.append("min_poly must have degree at least 1")
    else:
        degree = len(poly) - 1
        if poly[-1] != 1:
            errors.append("min_poly must be monic")
        if degree > app_settings.search.MAX_FIELD_DEGREE:
            errors.append(
                f"degree {degree} exceeds {app_settings.search.MAX_FIELD_DEGREE}"
            )

    if degree and "integral_basis" in raw:
        _rational_rows(raw["integral_basis"], degree, "integral_basis", errors)
    elif degree > 1 and "integral_basis" not in raw:
        warnings.append("no integral_basis: a supported family must provide it")

    if degree and "automorphism_hints" in raw:
        _rational_rows(
            raw["automorphism_hints"],
            degree,
            "automorphism_hints",
            errors,
            exact_width=False,
        )

    base = raw.get("base")
    if base is not None:
        gens = base.get("subgroup_generators") if isinstance(base, dict) else None
        if not isinstance(gens, list) or not all(
            isinstance(g, int) and g >= 0 for g in gens
        ):
            errors.append("base.subgroup_generators must be non-negative indices")

    supplied = raw.get("supplied_regulators", {})
    if not isinstance(supplied, dict) or not all(
        isinstance(v, str) for v in supplied.values()
    ):
        errors.append("supplied_regulators must map names to decimal strings")

    for message in errors:
        logger.debug("Spec %s: %s", raw.get("name"), message)
    return ValidationResult(not errors, errors, warnings)


def spec_from_dict(raw: Mapping[str, Any], source: str = "") -> FieldSpec:
    """FieldSpec from a decoded JSON object.

    Raises:
        InputError: the spec does not validate
    """
    result = validate_field_spec(raw)
    if not result.is_valid:
        raise InputError("; ".join(result.errors), source or "spec")
    for message in result.warnings:
        logger.warning("%s: %s", raw["name"], message)
    base: Dict[str, Any] = raw.get("base") or {}
    return FieldSpec(
        name=raw["name"],
        min_poly=list(raw["min_poly"]),
        integral_basis=raw.get("integral_basis"),
        automorphism_hints=raw.get("automorphism_hints"),
        supplied_regulators=dict(raw.get("supplied_regulators", {})),
        base_generators=base.get("subgroup_generators"),
        description=str(raw.get("description", "")),
        source=source,
    )
