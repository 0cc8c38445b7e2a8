"""
Reading field and extension specs from a path or the shipped fixtures.
"""

import json
import logging
from pathlib import Path
from typing import List

from galrel.config.constants import FIXTURES_DIR
from galrel.core.extension import GaloisExtension
from galrel.errors import InputError
from galrel.fields.number_field import NumberField, make_field
from galrel.models.spec_model import FieldSpec
from galrel.utils.validation import parse_rational, spec_from_dict

logger = logging.getLogger(__name__)


def _read(path: Path) -> FieldSpec:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path.name} is not valid JSON: {e}", "spec") from e
    return spec_from_dict(raw, source=str(path))


def load_spec(ref: str) -> FieldSpec:
    """Spec from a file path or a fixture name such as ``q_zeta8``.

    Raises:
        InputError: neither a readable file nor a known fixture
    """
    path = Path(ref)
    if path.is_file():
        return _read(path)
    fixture = FIXTURES_DIR / f"{ref}.json"
    if fixture.is_file():
        return _read(fixture)
    raise InputError(f"No spec file or fixture named '{ref}'", "spec")


def list_fixtures() -> List[FieldSpec]:
    """All shipped specs, ordered by file name."""
    return [_read(path) for path in sorted(FIXTURES_DIR.glob("*.json"))]


def fixture_name(spec: FieldSpec) -> str:
    return Path(spec.source).stem if spec.source else spec.name


def build_field(spec: FieldSpec) -> NumberField:
    basis = None
    if spec.integral_basis is not None:
        basis = [[parse_rational(x) for x in row] for row in spec.integral_basis]
    return make_field(spec.min_poly, basis, name=spec.name)


def build_extension(spec: FieldSpec) -> GaloisExtension:
    hints = None
    if spec.automorphism_hints:
        hints = [[parse_rational(x) for x in row] for row in spec.automorphism_hints]
    logger.debug("Building extension %s from %s", spec.name, spec.source)
    return GaloisExtension(
        build_field(spec),
        hints=hints,
        supplied_regulators=spec.supplied_regulators,
        base_generators=spec.base_generators,
    )
